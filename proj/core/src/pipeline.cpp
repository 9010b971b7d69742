#include "mpdiv/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include <json.hpp>

#include "mpdiv/hash.hpp"
#include "mpdiv/ingest.hpp"
#include "mpdiv/report.hpp"

namespace mpdiv {

namespace fs = std::filesystem;
using nlohmann::json;

SearchParams search_params(const RunConfig& config) {
  SearchParams p;
  p.tau = config.tau;
  p.engine = config.engine;
  p.grammar = config.grammar;
  p.max_paths = config.max_paths;
  p.queue = config.queue;
  p.count_first_hop = config.count_first_hop;
  return p;
}

std::string config_hash(const RunConfig& config) {
  std::ostringstream ss;
  ss << "links=" << sha256_file_hex(config.links_path) << '\n';
  ss << "freq="
     << (config.freq_path.empty() ? "-" : sha256_file_hex(config.freq_path))
     << '\n';
  ss << "country_map=" << sha256_file_hex(config.country_map_path) << '\n';
  ss << "as_paths=" << sha256_file_hex(config.as_paths_path) << '\n';
  ss << "tau=" << config.tau << " min_days=" << config.min_days
     << " window=" << config.window_length
     << " engine=" << to_string(config.engine)
     << " grammar=" << to_string(config.grammar)
     << " queue=" << to_string(config.queue)
     << " max_paths=" << config.max_paths
     << " count_first_hop=" << (config.count_first_hop ? 1 : 0) << '\n';
  std::vector<std::string> filter = config.countries;
  std::sort(filter.begin(), filter.end());
  filter.erase(std::unique(filter.begin(), filter.end()), filter.end());
  ss << "countries=";
  for (const std::string& cc : filter) ss << cc << ',';
  ss << '\n';
  ss << "sample=" << config.sample_size << ':' << config.sample_seed
     << " single_homed=" << (config.single_homed_only ? 1 : 0) << '\n';
  return sha256_hex(ss.str());
}

namespace {

struct Dataset {
  std::size_t raw_links = 0;
  std::vector<RawLink> stable;
  CountryMap countries;
  Classification classes;
  RegionMap regions;
  TorGraph graph;
  EdgeProviderIndex index;
};

Dataset load_dataset(const RunConfig& config) {
  Dataset d;
  std::vector<RawLink> raw = load_links_file(
      config.links_path, config.freq_path, config.window_length);
  d.raw_links = raw.size();
  d.stable = filter_stable(raw, config.min_days);
  d.countries = load_country_map_file(config.country_map_path);
  std::vector<AsPathRecord> corpus = load_as_paths_file(config.as_paths_path);
  d.classes = classify(corpus, d.stable);
  if (!config.region_map_path.empty()) {
    d.regions = load_region_map_file(config.region_map_path);
  }
  d.graph = TorGraph::build(d.stable, d.countries, d.classes);
  d.index = EdgeProviderIndex::build(d.classes, d.countries, &d.graph);
  return d;
}

struct Plan {
  std::vector<SourceConfig> configs;  // (country, p1, p2) ascending
  std::map<std::string, std::vector<AsNumber>> destinations;
  std::vector<std::string> evaluated;
  std::vector<std::string> notices;
  std::size_t skipped = 0;
  std::uint64_t pairs_total = 0;
};

Plan make_plan(const RunConfig& config, const Dataset& d, bool strict_regions) {
  Plan plan;
  std::vector<std::string> wanted;
  if (config.countries.empty()) {
    wanted = d.index.countries();
  } else {
    wanted = config.countries;
    std::sort(wanted.begin(), wanted.end());
    wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());
  }

  for (const std::string& cc : wanted) {
    std::size_t eps = d.index.provider_count(cc);
    if (eps == 0) {
      plan.notices.push_back("country " + cc +
                             " skipped: no mapped edge providers in the graph");
      ++plan.skipped;
      continue;
    }
    if (eps < 2) {
      plan.notices.push_back("country " + cc +
                             " skipped: needs at least 2 edge providers, has 1");
      ++plan.skipped;
      continue;
    }
    DestinationSet dests = d.index.destinations(cc);
    if (config.single_homed_only) dests = filter_single_homed(dests, d.graph);
    if (config.sample_size > 0) {
      dests = sample_destinations(dests, config.sample_size, config.sample_seed);
    }
    if (dests.destinations.empty()) {
      plan.notices.push_back("country " + cc +
                             " skipped: no foreign destinations");
      ++plan.skipped;
      continue;
    }
    if (!config.region_map_path.empty() && d.regions.find(cc) == d.regions.end()) {
      if (strict_regions) {
        throw std::runtime_error("country " + cc + " missing from region map " +
                                 config.region_map_path);
      }
      plan.notices.push_back("country " + cc + " missing from the region map");
    }
    plan.evaluated.push_back(cc);
    std::vector<SourceConfig> sources = d.index.sources(cc);
    plan.pairs_total +=
        static_cast<std::uint64_t>(sources.size()) * dests.destinations.size();
    plan.destinations.emplace(cc, std::move(dests.destinations));
    plan.configs.insert(plan.configs.end(), sources.begin(), sources.end());
  }
  return plan;
}

std::string config_key(const SourceConfig& config) {
  return config.country + ":" + std::to_string(config.providers.first) + ":" +
         std::to_string(config.providers.second);
}

// Completed work lands in two files: rows appended to records.partial.csv
// first, then the config key added to state.json (written to a temp file and
// renamed). A crash between the two leaves unmarked rows, which the next
// resume simply recomputes.
class Checkpoint {
 public:
  void open(const std::string& dir, const std::string& hash,
            std::vector<std::string>& notices) {
    fs::create_directories(dir);
    state_path_ = fs::path(dir) / "state.json";
    rows_path_ = fs::path(dir) / "records.partial.csv";
    hash_ = hash;

    if (fs::exists(state_path_)) {
      std::ifstream in(state_path_);
      json state;
      try {
        in >> state;
      } catch (const json::exception& e) {
        throw std::runtime_error("unreadable checkpoint state " +
                                 state_path_.string() + ": " + e.what());
      }
      std::string stored = state.value("config_hash", "");
      if (stored != hash_) {
        throw std::runtime_error(
            "checkpoint at " + dir +
            " belongs to a different configuration (hash " + stored +
            ", current " + hash_ + "); refusing to resume");
      }
      for (const auto& key : state.value("completed", std::vector<std::string>{})) {
        completed_.insert(key);
      }
      if (fs::exists(rows_path_)) {
        std::vector<RobustnessRecord> rows =
            read_records_csv_file(rows_path_.string(), /*lenient=*/true);
        std::unordered_set<std::string> seen;
        for (RobustnessRecord& r : rows) {
          std::string key = config_key(r.config);
          if (!completed_.count(key)) continue;
          if (!seen.insert(key + "@" + std::to_string(r.destination)).second) {
            continue;
          }
          resumed_[key].push_back(std::move(r));
        }
      }
      notices.push_back("resuming from checkpoint: " +
                        std::to_string(completed_.size()) +
                        " configs already done");
      compact();
    } else {
      completed_.clear();
      write_state();
      std::ofstream out(rows_path_, std::ios::trunc);
      out << kRecordsHeader << '\n';
    }
    rows_out_.open(rows_path_, std::ios::app);
    if (!rows_out_) {
      throw std::runtime_error("cannot append to " + rows_path_.string());
    }
  }

  bool completed(const std::string& key) const { return completed_.count(key) > 0; }

  // Drops the completed marker when the stored rows do not cover the config.
  bool verify_rows(const std::string& key, std::size_t expected) {
    auto it = resumed_.find(key);
    if (it != resumed_.end() && it->second.size() == expected) return true;
    completed_.erase(key);
    resumed_.erase(key);
    return false;
  }

  const std::vector<RobustnessRecord>& rows(const std::string& key) const {
    return resumed_.at(key);
  }

  void mark_complete(const std::string& key,
                     std::span<const RobustnessRecord> batch) {
    append_record_rows(rows_out_, batch);
    rows_out_.flush();
    completed_.insert(key);
    write_state();
  }

 private:
  void write_state() {
    json state;
    state["config_hash"] = hash_;
    state["completed"] = std::vector<std::string>(completed_.begin(),
                                                  completed_.end());
    fs::path tmp = state_path_;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::trunc);
      out << state.dump(2) << '\n';
      if (!out) {
        throw std::runtime_error("cannot write " + tmp.string());
      }
    }
    fs::rename(tmp, state_path_);
  }

  // Rewrites the partial file to exactly the rows of completed configs,
  // shedding leftovers from interrupted configs.
  void compact() {
    std::ofstream out(rows_path_, std::ios::trunc);
    out << kRecordsHeader << '\n';
    for (const auto& [key, rows] : resumed_) {
      append_record_rows(out, rows);
    }
  }

  fs::path state_path_;
  fs::path rows_path_;
  std::string hash_;
  std::set<std::string> completed_;
  std::map<std::string, std::vector<RobustnessRecord>> resumed_;
  std::ofstream rows_out_;
};

bool record_less(const RobustnessRecord& a, const RobustnessRecord& b) {
  if (a.config.country != b.config.country)
    return a.config.country < b.config.country;
  if (a.config.providers != b.config.providers)
    return a.config.providers < b.config.providers;
  return a.destination < b.destination;
}

std::string utc_now() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void check_fractions(const RunConfig& config) {
  if (config.tau < 1) throw std::invalid_argument("tau must be >= 1");
  if (config.workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (config.max_paths < 1) {
    throw std::invalid_argument("max_paths must be >= 1");
  }
  auto check = [](double f, const char* what) {
    if (f < 0 || f >= 0.5) {
      throw std::invalid_argument(std::string(what) + " must be in [0, 0.5)");
    }
  };
  check(config.outlier_fraction, "outlier fraction");
  check(config.region_outlier_fraction, "region outlier fraction");
  if (config.max_failure_fraction < 0 || config.max_failure_fraction > 1) {
    throw std::invalid_argument("max failure fraction must be in [0, 1]");
  }
}

}  // namespace

ValidationReport validate(const RunConfig& config) {
  check_fractions(config);
  Dataset d = load_dataset(config);
  Plan plan = make_plan(config, d, /*strict_regions=*/false);

  ValidationReport r;
  r.raw_links = d.raw_links;
  r.stable_links = d.stable.size();
  r.nodes = d.graph.node_count();
  r.directed_edges = d.graph.directed_edge_count();
  r.undirected_links = d.graph.undirected_link_count();
  for (const auto& [asn, cls] : d.classes) {
    switch (cls) {
      case AsClass::stub: ++r.classes.stub; break;
      case AsClass::edge_provider: ++r.classes.edge_provider; break;
      case AsClass::carrier: ++r.classes.carrier; break;
      case AsClass::unknown: ++r.classes.unknown; break;
    }
  }
  for (const std::string& cc : plan.evaluated) {
    CountryPreview p;
    p.country = cc;
    p.edge_providers = d.index.provider_count(cc);
    p.pairs = d.index.expected_pair_count(cc);
    r.total_pairs += p.pairs;
    r.countries.push_back(std::move(p));
  }
  r.notices = plan.notices;
  return r;
}

RunResult run(const RunConfig& config) {
  auto run_start = std::chrono::steady_clock::now();
  check_fractions(config);

  Dataset d = load_dataset(config);
  Plan plan = make_plan(config, d, /*strict_regions=*/true);
  std::string hash = config_hash(config);

  RunResult result;
  result.notices = plan.notices;
  RunStats& stats = result.stats;
  stats.countries_evaluated = plan.evaluated.size();
  stats.countries_skipped = plan.skipped;
  stats.configs = plan.configs.size();
  stats.pairs_total = plan.pairs_total;

  Checkpoint checkpoint;
  bool checkpointing = !config.checkpoint_dir.empty();
  if (checkpointing) {
    checkpoint.open(config.checkpoint_dir, hash, result.notices);
  }

  SearchParams params = search_params(config);
  std::vector<RobustnessRecord> records;
  records.reserve(plan.pairs_total);
  std::vector<double> timings;
  constexpr std::size_t kMaxFailureNotices = 20;

  for (const SourceConfig& source : plan.configs) {
    const std::vector<AsNumber>& dests = plan.destinations.at(source.country);
    std::string key = config_key(source);

    if (checkpointing && checkpoint.completed(key) &&
        checkpoint.verify_rows(key, dests.size())) {
      const auto& rows = checkpoint.rows(key);
      records.insert(records.end(), rows.begin(), rows.end());
      stats.pairs_resumed += rows.size();
      continue;
    }

    std::vector<std::optional<RobustnessRecord>> slots(dests.size());
    std::vector<std::string> errors(dests.size());
    std::vector<int> truncations(dests.size(), 0);
    std::vector<double> slot_ms(dests.size(), 0.0);
    std::atomic<std::size_t> next{0};

    auto work = [&]() {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= dests.size()) break;
        auto t0 = std::chrono::steady_clock::now();
        try {
          RecordDiagnostics diag;
          slots[i] = compute_record(d.graph, source, dests[i], params, &diag);
          truncations[i] = diag.truncated_searches;
        } catch (const std::exception& e) {
          errors[i] = e.what();
        }
        slot_ms[i] = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
      }
    };

    std::size_t worker_count = std::min<std::size_t>(
        static_cast<std::size_t>(config.workers), dests.size());
    if (worker_count <= 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(worker_count);
      for (std::size_t w = 0; w < worker_count; ++w) pool.emplace_back(work);
      for (std::thread& t : pool) t.join();
    }

    std::vector<RobustnessRecord> batch;
    batch.reserve(dests.size());
    for (std::size_t i = 0; i < dests.size(); ++i) {
      stats.truncated_searches += static_cast<std::size_t>(truncations[i]);
      timings.push_back(slot_ms[i]);
      if (slots[i].has_value()) {
        batch.push_back(std::move(*slots[i]));
      } else {
        ++stats.failures;
        if (result.notices.size() < kMaxFailureNotices) {
          result.notices.push_back(
              "pair " + key + " -> " + std::to_string(dests[i]) +
              " failed: " + errors[i]);
        }
      }
    }
    stats.pairs_computed += dests.size();
    records.insert(records.end(), batch.begin(), batch.end());
    if (checkpointing) checkpoint.mark_complete(key, batch);
    if (config.log != nullptr) {
      *config.log << key << ": " << batch.size() << '/' << dests.size()
                  << " records\n";
    }
  }

  std::sort(records.begin(), records.end(), record_less);

  if (!timings.empty()) {
    std::vector<double> sorted = timings;
    std::sort(sorted.begin(), sorted.end());
    double total = 0;
    for (double t : sorted) total += t;
    stats.pair_ms_mean = total / static_cast<double>(sorted.size());
    stats.pair_ms_median = sorted[sorted.size() / 2];
    stats.pair_ms_p95 = sorted[std::min(sorted.size() - 1,
                                        sorted.size() * 95 / 100)];
    stats.pair_ms_min = sorted.front();
    stats.pair_ms_max = sorted.back();
  }

  if (stats.pairs_total > 0 &&
      static_cast<double>(stats.failures) >
          config.max_failure_fraction * static_cast<double>(stats.pairs_total)) {
    result.exit_code = 2;
  }

  fs::create_directories(config.out_dir);
  auto open_out = [&](const std::string& name) {
    fs::path p = fs::path(config.out_dir) / name;
    std::ofstream out(p, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    result.outputs.push_back(p.string());
    return out;
  };

  {
    auto out = open_out("records.csv");
    write_records_csv(out, records);
  }

  std::vector<CountrySeries> all_series;
  std::map<View, std::vector<CountrySeries>> by_view;
  for (View view : {View::device, View::ep, View::diff}) {
    by_view[view] = series_from_records(records, view);
    all_series.insert(all_series.end(), by_view[view].begin(),
                      by_view[view].end());
  }
  {
    auto out = open_out("series.csv");
    write_series_csv(out, all_series);
  }
  {
    auto out = open_out("series.json");
    write_series_json(out, all_series);
  }

  bool have_regions = !config.region_map_path.empty();
  for (View view : {View::device, View::ep, View::diff}) {
    std::vector<std::pair<Grouping, double>> groupings = {
        {Grouping::country, config.outlier_fraction}};
    if (have_regions) {
      groupings.push_back({Grouping::macro_region,
                           config.region_outlier_fraction});
      groupings.push_back({Grouping::position, config.region_outlier_fraction});
    }
    for (auto [grouping, fraction] : groupings) {
      GroupStats groups =
          aggregate(by_view[view], d.regions, grouping, fraction);
      std::string stem =
          "boxplot_" + to_string(view) + "_" + to_string(grouping);
      {
        auto out = open_out(stem + ".csv");
        write_boxplot_csv(out, groups, view, grouping);
      }
      {
        auto out = open_out(stem + ".json");
        write_boxplot_json(out, groups, view, grouping);
      }
    }
  }

  stats.total_seconds = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - run_start)
                            .count();

  json manifest;
  manifest["format_version"] = 1;
  manifest["created"] = utc_now();
  manifest["config_hash"] = hash;
  json datasets;
  datasets["links"] = {{"path", config.links_path},
                       {"sha256", sha256_file_hex(config.links_path)}};
  if (!config.freq_path.empty()) {
    datasets["freq"] = {{"path", config.freq_path},
                        {"sha256", sha256_file_hex(config.freq_path)}};
  }
  datasets["country_map"] = {{"path", config.country_map_path},
                             {"sha256", sha256_file_hex(config.country_map_path)}};
  datasets["as_paths"] = {{"path", config.as_paths_path},
                          {"sha256", sha256_file_hex(config.as_paths_path)}};
  if (!config.region_map_path.empty()) {
    datasets["region_map"] = {{"path", config.region_map_path},
                              {"sha256", sha256_file_hex(config.region_map_path)}};
  }
  manifest["datasets"] = datasets;
  manifest["settings"] = {
      {"tau", config.tau},
      {"min_days", config.min_days},
      {"window_length", config.window_length},
      {"engine", to_string(config.engine)},
      {"grammar", to_string(config.grammar)},
      {"queue", to_string(config.queue)},
      {"max_paths", config.max_paths},
      {"count_first_hop", config.count_first_hop},
      {"workers", config.workers},
      {"countries", config.countries},
      {"sample_size", config.sample_size},
      {"sample_seed", config.sample_seed},
      {"single_homed_only", config.single_homed_only},
      {"outlier_fraction", config.outlier_fraction},
      {"region_outlier_fraction", config.region_outlier_fraction},
      {"max_failure_fraction", config.max_failure_fraction},
  };
  manifest["graph"] = {
      {"nodes", d.graph.node_count()},
      {"directed_edges", d.graph.directed_edge_count()},
      {"undirected_links", d.graph.undirected_link_count()},
  };
  manifest["countries"] = {
      {"evaluated", plan.evaluated},
      {"skipped", stats.countries_skipped},
  };
  manifest["pairs"] = {
      {"total", stats.pairs_total},
      {"computed", stats.pairs_computed},
      {"resumed", stats.pairs_resumed},
      {"failures", stats.failures},
      {"truncated_searches", stats.truncated_searches},
  };
  manifest["timing"] = {
      {"total_seconds", stats.total_seconds},
      {"pair_ms",
       {
           {"mean", stats.pair_ms_mean},
           {"median", stats.pair_ms_median},
           {"p95", stats.pair_ms_p95},
           {"min", stats.pair_ms_min},
           {"max", stats.pair_ms_max},
       }},
  };
  manifest["notes"] = result.notices;
  manifest["region_aggregation"] = "concatenated raw per-config series";
  {
    auto out = open_out("manifest.json");
    out << manifest.dump(2) << '\n';
  }

  return result;
}

}  // namespace mpdiv
