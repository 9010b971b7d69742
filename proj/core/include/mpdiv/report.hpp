#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mpdiv/metrics.hpp"

namespace mpdiv {

// Shortest round-trip decimal form, locale-independent.
std::string format_double(double value);

inline constexpr char kRecordsHeader[] =
    "country,provider1,provider2,destination,device,ep,diff";

void write_records_csv(std::ostream& out,
                       std::span<const RobustnessRecord> records);
void append_record_rows(std::ostream& out,
                        std::span<const RobustnessRecord> records);

// Reads rows produced by the writers above. With lenient=true, malformed
// rows (e.g. a line cut short by a crash) are skipped instead of fatal.
std::vector<RobustnessRecord> read_records_csv(std::istream& in,
                                               const std::string& name,
                                               bool lenient = false);
std::vector<RobustnessRecord> read_records_csv_file(const std::string& path,
                                                    bool lenient = false);

void write_series_csv(std::ostream& out, std::span<const CountrySeries> series);
void write_series_json(std::ostream& out, std::span<const CountrySeries> series);

using GroupStats = std::vector<std::pair<std::string, BoxplotStats>>;

// The 1.5 mean is flagged as `above_threshold`; it annotates reports and
// feeds nothing downstream.
inline constexpr double kRoughThreshold = 1.5;

void write_boxplot_csv(std::ostream& out, const GroupStats& groups, View view,
                       Grouping grouping);
void write_boxplot_json(std::ostream& out, const GroupStats& groups, View view,
                        Grouping grouping);

}  // namespace mpdiv
