#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mpdiv/pairs.hpp"
#include "mpdiv/path_search.hpp"

namespace mpdiv {

enum class View { device, ep, diff };
std::string to_string(View v);
View parse_view(const std::string& s);

// One evaluated (source config, destination) pair.
struct RobustnessRecord {
  SourceConfig config;
  AsNumber destination = 0;
  int device_count = 0;
  int ep_count = 0;
  int differential = 0;  // always ep_count - device_count
};

// Per-config robustness values of one country under one view.
struct CountrySeries {
  std::string country;
  View view = View::device;
  std::vector<double> values;
};

struct BoxplotStats {
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0, mean = 0;
  std::vector<double> outliers;
  double outlier_fraction = 0;
};

enum class Position { coastal, inland };
struct RegionInfo {
  std::string macro_region;
  Position position = Position::coastal;
};
using RegionMap = std::map<std::string, RegionInfo>;

enum class Grouping { country, macro_region, position };
std::string to_string(Grouping g);
Grouping parse_grouping(const std::string& s);

// Number of mutually vertex-disjoint device-to-destination paths (at most 2,
// one per access provider). Unreachable destinations count 0.
int device_view(const TorGraph& g, const SourceConfig& config,
                AsNumber destination, const SearchParams& params);

// Disjoint paths from the lower-numbered provider, plus disjoint paths from
// the higher-numbered one (preferring candidates that dodge the first set),
// minus the second-set paths that still share an intermediate AS with the
// first set.
int ep_view(const TorGraph& g, const SourceConfig& config, AsNumber destination,
            const SearchParams& params);

struct RecordDiagnostics {
  int truncated_searches = 0;  // searches that hit the max_paths cap
};

RobustnessRecord compute_record(const TorGraph& g, const SourceConfig& config,
                                AsNumber destination,
                                const SearchParams& params,
                                RecordDiagnostics* diag = nullptr);

// Mean per-destination count for the requested view. Throws on an empty
// destination list.
double robustness(const TorGraph& g, const SourceConfig& config,
                  std::span<const AsNumber> destinations,
                  const SearchParams& params, View view);

// Per-config means grouped into per-country series. Records must already be
// sorted by (country, provider1, provider2, destination).
std::vector<CountrySeries> series_from_records(
    std::span<const RobustnessRecord> records, View view);

// Five-number summary with linear-interpolation quartiles. The configured
// fraction is split across both tails: floor(n*f/2) values per tail become
// outliers and the whiskers cover the remaining range. Quartiles and mean
// always use the full series.
BoxplotStats boxplot(std::span<const double> values, double outlier_fraction);

// Concatenates member series per group and summarises each; groups come back
// ordered by ascending mean (ties by name).
std::vector<std::pair<std::string, BoxplotStats>> aggregate(
    std::span<const CountrySeries> series, const RegionMap& regions,
    Grouping grouping, double outlier_fraction);

RegionMap load_region_map(std::istream& in, const std::string& name = "<region map>");
RegionMap load_region_map_file(const std::string& path);

}  // namespace mpdiv
