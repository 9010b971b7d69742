#include "mpdiv/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "mpdiv/disjoint.hpp"

namespace mpdiv {

std::string to_string(View v) {
  switch (v) {
    case View::device: return "device";
    case View::ep: return "ep";
    case View::diff: return "diff";
  }
  return "?";
}

View parse_view(const std::string& s) {
  if (s == "device") return View::device;
  if (s == "ep") return View::ep;
  if (s == "diff") return View::diff;
  throw std::invalid_argument("unknown view '" + s + "'");
}

std::string to_string(Grouping g) {
  switch (g) {
    case Grouping::country: return "country";
    case Grouping::macro_region: return "macro_region";
    case Grouping::position: return "position";
  }
  return "?";
}

Grouping parse_grouping(const std::string& s) {
  if (s == "country") return Grouping::country;
  if (s == "macro_region" || s == "macro-region") return Grouping::macro_region;
  if (s == "position") return Grouping::position;
  throw std::invalid_argument("unknown grouping '" + s + "'");
}

namespace {

int device_count_of(const SearchResult& r) {
  return static_cast<int>(greedy_vertex_disjoint(r.paths).size());
}

// r1 belongs to the lower-numbered provider, r2 to the higher one.
int ep_count_of(const SearchResult& r1, const SearchResult& r2) {
  std::vector<AsPath> d1 = greedy_vertex_disjoint(r1.paths);
  std::vector<AsNumber> used = intermediate_set(d1);
  std::unordered_set<AsNumber> used_set(used.begin(), used.end());

  auto touches_used = [&](const AsPath& p) {
    for (std::size_t i = 1; i + 1 < p.nodes.size(); ++i) {
      if (used_set.count(p.nodes[i])) return true;
    }
    return false;
  };

  std::vector<AsPath> ordered;
  ordered.reserve(r2.paths.size());
  for (const AsPath& p : r2.paths) {
    if (!touches_used(p)) ordered.push_back(p);
  }
  for (const AsPath& p : r2.paths) {
    if (touches_used(p)) ordered.push_back(p);
  }
  std::vector<AsPath> d2 = greedy_vertex_disjoint_in_order(ordered);

  int overlap = 0;
  for (const AsPath& p : d2) {
    if (touches_used(p)) ++overlap;
  }
  return static_cast<int>(d1.size() + d2.size()) - overlap;
}

}  // namespace

int device_view(const TorGraph& g, const SourceConfig& config,
                AsNumber destination, const SearchParams& params) {
  return device_count_of(
      search_from_device(g, config.providers, destination, params));
}

int ep_view(const TorGraph& g, const SourceConfig& config, AsNumber destination,
            const SearchParams& params) {
  AsNumber p1 = std::min(config.providers.first, config.providers.second);
  AsNumber p2 = std::max(config.providers.first, config.providers.second);
  return ep_count_of(search(g, p1, destination, params),
                     search(g, p2, destination, params));
}

RobustnessRecord compute_record(const TorGraph& g, const SourceConfig& config,
                                AsNumber destination,
                                const SearchParams& params,
                                RecordDiagnostics* diag) {
  AsNumber p1 = std::min(config.providers.first, config.providers.second);
  AsNumber p2 = std::max(config.providers.first, config.providers.second);

  SearchResult dev = search_from_device(g, config.providers, destination, params);
  SearchResult r1 = search(g, p1, destination, params);
  SearchResult r2 = search(g, p2, destination, params);
  if (diag != nullptr) {
    diag->truncated_searches +=
        (dev.truncated ? 1 : 0) + (r1.truncated ? 1 : 0) + (r2.truncated ? 1 : 0);
  }

  RobustnessRecord rec;
  rec.config = config;
  rec.destination = destination;
  rec.device_count = device_count_of(dev);
  rec.ep_count = ep_count_of(r1, r2);
  rec.differential = rec.ep_count - rec.device_count;
  return rec;
}

double robustness(const TorGraph& g, const SourceConfig& config,
                  std::span<const AsNumber> destinations,
                  const SearchParams& params, View view) {
  if (destinations.empty()) {
    throw std::invalid_argument("no destinations to average over");
  }
  long long total = 0;
  for (AsNumber d : destinations) {
    RobustnessRecord rec = compute_record(g, config, d, params);
    switch (view) {
      case View::device: total += rec.device_count; break;
      case View::ep: total += rec.ep_count; break;
      case View::diff: total += rec.differential; break;
    }
  }
  return static_cast<double>(total) / static_cast<double>(destinations.size());
}

std::vector<CountrySeries> series_from_records(
    std::span<const RobustnessRecord> records, View view) {
  std::vector<CountrySeries> out;
  std::size_t i = 0;
  while (i < records.size()) {
    const SourceConfig& cfg = records[i].config;
    long long total = 0;
    std::size_t n = 0;
    while (i < records.size() && records[i].config.country == cfg.country &&
           records[i].config.providers == cfg.providers) {
      switch (view) {
        case View::device: total += records[i].device_count; break;
        case View::ep: total += records[i].ep_count; break;
        case View::diff: total += records[i].differential; break;
      }
      ++i;
      ++n;
    }
    if (out.empty() || out.back().country != cfg.country) {
      out.push_back({cfg.country, view, {}});
    }
    out.back().values.push_back(static_cast<double>(total) /
                                static_cast<double>(n));
  }
  return out;
}

BoxplotStats boxplot(std::span<const double> values, double outlier_fraction) {
  if (values.empty()) {
    throw std::invalid_argument("boxplot of an empty series");
  }
  if (outlier_fraction < 0 || outlier_fraction >= 0.5) {
    throw std::invalid_argument("outlier fraction must be in [0, 0.5)");
  }
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();

  auto quantile = [&](double p) {
    double pos = p * static_cast<double>(n - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= n) return v[n - 1];
    return v[lo] + frac * (v[lo + 1] - v[lo]);
  };

  BoxplotStats s;
  s.outlier_fraction = outlier_fraction;
  s.q1 = quantile(0.25);
  s.median = quantile(0.5);
  s.q3 = quantile(0.75);
  double total = 0;
  for (double x : v) total += x;
  s.mean = total / static_cast<double>(n);

  std::size_t per_tail = static_cast<std::size_t>(
      std::floor(static_cast<double>(n) * outlier_fraction / 2.0));
  s.outliers.reserve(2 * per_tail);
  for (std::size_t i = 0; i < per_tail; ++i) s.outliers.push_back(v[i]);
  for (std::size_t i = n - per_tail; i < n; ++i) s.outliers.push_back(v[i]);
  s.min = v[per_tail];
  s.max = v[n - 1 - per_tail];
  return s;
}

std::vector<std::pair<std::string, BoxplotStats>> aggregate(
    std::span<const CountrySeries> series, const RegionMap& regions,
    Grouping grouping, double outlier_fraction) {
  std::map<std::string, std::vector<double>> groups;
  for (const CountrySeries& cs : series) {
    std::string key;
    switch (grouping) {
      case Grouping::country:
        key = cs.country;
        break;
      case Grouping::macro_region:
      case Grouping::position: {
        auto it = regions.find(cs.country);
        if (it == regions.end()) {
          throw std::runtime_error("country " + cs.country +
                                   " missing from the region map");
        }
        key = grouping == Grouping::macro_region
                  ? it->second.macro_region
                  : (it->second.position == Position::coastal ? "coastal"
                                                              : "inland");
        break;
      }
    }
    auto& bucket = groups[key];
    bucket.insert(bucket.end(), cs.values.begin(), cs.values.end());
  }

  std::vector<std::pair<std::string, BoxplotStats>> out;
  out.reserve(groups.size());
  for (const auto& [key, vals] : groups) {
    out.emplace_back(key, boxplot(vals, outlier_fraction));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second.mean != b.second.mean) return a.second.mean < b.second.mean;
    return a.first < b.first;
  });
  return out;
}

RegionMap load_region_map(std::istream& in, const std::string& name) {
  RegionMap map;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string trimmed = line;
    if (auto pos = trimmed.find('#'); pos != std::string::npos) {
      trimmed.erase(pos);
    }
    while (!trimmed.empty() && (trimmed.back() == ' ' || trimmed.back() == '\t' ||
                                trimmed.back() == '\r')) {
      trimmed.pop_back();
    }
    if (trimmed.empty()) continue;

    std::stringstream ss(trimmed);
    std::string cc, region, position;
    if (!std::getline(ss, cc, ',') || !std::getline(ss, region, ',') ||
        !std::getline(ss, position)) {
      throw ParseError(name, lineno, "expected CC,macro_region,position");
    }
    if (!is_country_code(cc)) {
      throw ParseError(name, lineno, "bad country code '" + cc + "'");
    }
    if (region.empty()) {
      throw ParseError(name, lineno, "empty macro region");
    }
    RegionInfo info;
    info.macro_region = region;
    if (position == "coastal") {
      info.position = Position::coastal;
    } else if (position == "inland") {
      info.position = Position::inland;
    } else {
      throw ParseError(name, lineno,
                       "position must be coastal or inland, got '" + position +
                           "'");
    }
    auto [it, inserted] = map.emplace(cc, info);
    if (!inserted) {
      throw ParseError(name, lineno, "duplicate country " + cc);
    }
  }
  return map;
}

RegionMap load_region_map_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open region map " + path);
  }
  return load_region_map(in, path);
}

}  // namespace mpdiv
