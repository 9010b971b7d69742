#include <CLI11.hpp>

#include <iostream>

#include "mpdiv/ingest.hpp"
#include "mpdiv/pipeline.hpp"
#include "mpdiv/tor_graph.hpp"

namespace {

struct EnumSpellings {
  std::string engine = "exhaustive";
  std::string grammar = "single-peer";
  std::string queue = "fifo";
};

void add_dataset_options(CLI::App* cmd, mpdiv::RunConfig& config) {
  cmd->add_option("--links", config.links_path,
                  "AS relationship file, `a|b|rel` with rel -1 (a provider of b) or 0 (peers)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--freq", config.freq_path,
                  "link frequency file `a|b|days`; absent links count as stable")
      ->check(CLI::ExistingFile);
  cmd->add_option("--country-map", config.country_map_path,
                  "CSV mapping `ASN,CC`")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--as-paths", config.as_paths_path,
                  "BGP AS path corpus, one space-separated path per line")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--min-days", config.min_days,
                  "keep links seen strictly more than this many days")
      ->capture_default_str();
  cmd->add_option("--window-length", config.window_length,
                  "observation window in days (default days_seen for links "
                  "missing from --freq)")
      ->capture_default_str();
}

void add_search_options(CLI::App* cmd, mpdiv::RunConfig& config,
                        EnumSpellings& spellings) {
  cmd->add_option("--tau", config.tau, "maximum hop depth")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--engine", spellings.engine,
                  "path search engine: exhaustive or pruned-bfs")
      ->capture_default_str();
  cmd->add_option("--grammar", spellings.grammar,
                  "label grammar: single-peer or multi-peer")
      ->capture_default_str();
  cmd->add_option("--queue", spellings.queue,
                  "pruned-bfs expansion order: fifo or lifo")
      ->capture_default_str();
  cmd->add_option("--max-paths", config.max_paths,
                  "stop a search after this many paths")
      ->capture_default_str();
  cmd->add_flag("--count-first-hop", config.count_first_hop,
                "charge the device-to-provider hop against tau");
}

void apply_spellings(const EnumSpellings& spellings, mpdiv::RunConfig& config) {
  config.engine = mpdiv::parse_engine(spellings.engine);
  config.grammar = mpdiv::parse_grammar(spellings.grammar);
  config.queue = mpdiv::parse_queue_discipline(spellings.queue);
}

void print_validation(const mpdiv::ValidationReport& report) {
  std::cout << "links: " << report.raw_links << " raw, " << report.stable_links
            << " stable\n";
  std::cout << "graph: " << report.nodes << " nodes, "
            << report.undirected_links << " links ("
            << report.directed_edges << " directed edges)\n";
  std::size_t classified = report.classes.stub + report.classes.edge_provider +
                           report.classes.carrier + report.classes.unknown;
  auto pct = [&](std::size_t n) {
    if (classified == 0) return 0.0;
    return 100.0 * static_cast<double>(n) / static_cast<double>(classified);
  };
  std::cout << "classes: stub " << report.classes.stub << " (" << pct(report.classes.stub)
            << "%), edge_provider " << report.classes.edge_provider << " ("
            << pct(report.classes.edge_provider) << "%), carrier "
            << report.classes.carrier << " (" << pct(report.classes.carrier)
            << "%), unknown " << report.classes.unknown << " ("
            << pct(report.classes.unknown) << "%)\n";
  for (const auto& c : report.countries) {
    std::cout << c.country << ": " << c.edge_providers << " edge providers, "
              << c.pairs << " source-destination pairs\n";
  }
  std::cout << "total pairs: " << report.total_pairs << "\n";
  for (const auto& n : report.notices) std::cout << "note: " << n << "\n";
}

void print_run_summary(const mpdiv::RunResult& result) {
  const mpdiv::RunStats& s = result.stats;
  std::cout << "countries: " << s.countries_evaluated << " evaluated, "
            << s.countries_skipped << " skipped\n";
  std::cout << "pairs: " << s.pairs_total << " total, " << s.pairs_computed
            << " computed, " << s.pairs_resumed << " resumed, " << s.failures
            << " failed\n";
  if (s.truncated_searches > 0) {
    std::cout << "truncated searches: " << s.truncated_searches << "\n";
  }
  std::cout << "pair time ms: mean " << s.pair_ms_mean << ", median "
            << s.pair_ms_median << ", p95 " << s.pair_ms_p95 << ", max "
            << s.pair_ms_max << "\n";
  std::cout << "total seconds: " << s.total_seconds << "\n";
  for (const auto& out : result.outputs) std::cout << "wrote " << out << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AS-level path diversity metrics for multipath communications"};
  app.set_version_flag("--version", "mpdiv 0.1.0");
  app.require_subcommand(1);

  mpdiv::RunConfig config;
  EnumSpellings spellings;
  bool quiet = false;
  std::string snapshot_out;

  CLI::App* run_cmd =
      app.add_subcommand("run", "compute robustness records and reports");
  add_dataset_options(run_cmd, config);
  add_search_options(run_cmd, config, spellings);
  run_cmd->add_option("--region-map", config.region_map_path,
                      "CSV `CC,macro_region,position` for region aggregation")
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--workers", config.workers, "worker threads")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--countries", config.countries,
                      "restrict to these country codes")
      ->delimiter(',');
  run_cmd->add_option("--sample-size", config.sample_size,
                      "destinations per country, 0 = all")
      ->capture_default_str();
  run_cmd->add_option("--sample-seed", config.sample_seed,
                      "seed for destination sampling")
      ->capture_default_str();
  run_cmd->add_flag("--single-homed", config.single_homed_only,
                    "keep only destinations with exactly one provider link");
  run_cmd->add_option("--outlier-fraction", config.outlier_fraction,
                      "outlier fraction for country-level boxplots")
      ->capture_default_str();
  run_cmd->add_option("--region-outlier-fraction",
                      config.region_outlier_fraction,
                      "outlier fraction for region-level boxplots")
      ->capture_default_str();
  run_cmd->add_option("--max-failure-fraction", config.max_failure_fraction,
                      "tolerated fraction of failed pairs before exit code 2")
      ->capture_default_str();
  run_cmd->add_option("--checkpoint-dir", config.checkpoint_dir,
                      "directory for resumable state");
  run_cmd->add_option("--out", config.out_dir, "output directory")
      ->capture_default_str();
  run_cmd->add_flag("--quiet", quiet, "suppress progress lines on stderr");

  CLI::App* validate_cmd = app.add_subcommand(
      "validate", "parse datasets and preview the workload without computing");
  add_dataset_options(validate_cmd, config);
  validate_cmd
      ->add_option("--region-map", config.region_map_path,
                   "CSV `CC,macro_region,position`")
      ->check(CLI::ExistingFile);
  validate_cmd
      ->add_option("--countries", config.countries,
                   "restrict the preview to these country codes")
      ->delimiter(',');

  CLI::App* snapshot_cmd = app.add_subcommand(
      "snapshot", "build the labeled graph and write it to a text snapshot");
  add_dataset_options(snapshot_cmd, config);
  snapshot_cmd->add_option("--out", snapshot_out, "snapshot file path")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run_cmd->parsed()) {
      apply_spellings(spellings, config);
      config.log = quiet ? nullptr : &std::cerr;
      mpdiv::RunResult result = mpdiv::run(config);
      print_run_summary(result);
      return result.exit_code;
    }
    if (validate_cmd->parsed()) {
      print_validation(mpdiv::validate(config));
      return 0;
    }
    if (snapshot_cmd->parsed()) {
      auto raw = mpdiv::load_links_file(config.links_path, config.freq_path,
                                        config.window_length);
      auto stable = mpdiv::filter_stable(raw, config.min_days);
      auto countries = mpdiv::load_country_map_file(config.country_map_path);
      auto corpus = mpdiv::load_as_paths_file(config.as_paths_path);
      auto classes = mpdiv::classify(corpus, stable);
      mpdiv::TorGraph graph = mpdiv::TorGraph::build(stable, countries, classes);
      graph.dump_file(snapshot_out);
      std::cout << "wrote " << snapshot_out << " (" << graph.node_count()
                << " nodes, " << graph.undirected_link_count() << " links)\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
