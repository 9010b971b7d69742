#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mpdiv/metrics.hpp"
#include "mpdiv/path_search.hpp"

namespace mpdiv {

struct RunConfig {
  std::string links_path;
  std::string freq_path;        // empty = every link counts as stable
  std::string country_map_path;
  std::string as_paths_path;
  std::string region_map_path;  // empty = skip region-level aggregation

  int tau = 6;
  int min_days = 20;
  int window_length = 30;
  ScanEngine engine = ScanEngine::exhaustive;
  Grammar grammar = Grammar::single_peer;
  QueueDiscipline queue = QueueDiscipline::fifo;
  std::size_t max_paths = 10000;
  bool count_first_hop = false;

  int workers = 1;
  std::vector<std::string> countries;  // empty = every eligible country
  std::size_t sample_size = 0;         // destinations per country; 0 = all
  std::uint64_t sample_seed = 0;
  bool single_homed_only = false;

  double outlier_fraction = 0.001;         // country-level plots
  double region_outlier_fraction = 0.01;   // macro-region / position plots
  double max_failure_fraction = 0.01;

  std::string checkpoint_dir;  // empty = no checkpointing
  std::string out_dir = "out";
  std::ostream* log = nullptr;  // progress lines, optional
};

SearchParams search_params(const RunConfig& config);

// Hash over everything that determines record content: dataset bytes and the
// search/selection knobs. Worker count, output paths and plot fractions stay
// out so a resumed run may change them.
std::string config_hash(const RunConfig& config);

struct ClassHistogram {
  std::size_t stub = 0, edge_provider = 0, carrier = 0, unknown = 0;
};

struct CountryPreview {
  std::string country;
  std::size_t edge_providers = 0;
  std::uint64_t pairs = 0;  // |E_c|(|E_c|-1)/2 * foreign edge providers
};

struct ValidationReport {
  std::size_t raw_links = 0;
  std::size_t stable_links = 0;
  std::size_t nodes = 0;
  std::size_t directed_edges = 0;
  std::size_t undirected_links = 0;
  ClassHistogram classes;
  std::vector<CountryPreview> countries;
  std::uint64_t total_pairs = 0;
  std::vector<std::string> notices;
};

// Parses everything, builds the graph, and previews the workload without
// computing any record.
ValidationReport validate(const RunConfig& config);

struct RunStats {
  std::size_t countries_evaluated = 0;
  std::size_t countries_skipped = 0;
  std::size_t configs = 0;
  std::size_t pairs_total = 0;
  std::size_t pairs_computed = 0;
  std::size_t pairs_resumed = 0;
  std::size_t failures = 0;
  std::size_t truncated_searches = 0;
  double total_seconds = 0;
  double pair_ms_mean = 0;
  double pair_ms_median = 0;
  double pair_ms_p95 = 0;
  double pair_ms_min = 0;
  double pair_ms_max = 0;
};

struct RunResult {
  int exit_code = 0;  // 0 ok, 2 when failures exceed max_failure_fraction
  RunStats stats;
  std::vector<std::string> outputs;
  std::vector<std::string> notices;
};

// Full batch: ingest, graph, enumeration, per-pair records, reports.
// Dataset problems throw before any computation; per-pair errors are counted
// and the run keeps going.
RunResult run(const RunConfig& config);

}  // namespace mpdiv
