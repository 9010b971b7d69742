#include "mpdiv/report.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mpdiv {

using nlohmann::json;

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) {
    throw std::runtime_error("cannot format double");
  }
  return std::string(buf, end);
}

void append_record_rows(std::ostream& out,
                        std::span<const RobustnessRecord> records) {
  for (const RobustnessRecord& r : records) {
    out << r.config.country << ',' << r.config.providers.first << ','
        << r.config.providers.second << ',' << r.destination << ','
        << r.device_count << ',' << r.ep_count << ',' << r.differential
        << '\n';
  }
}

void write_records_csv(std::ostream& out,
                       std::span<const RobustnessRecord> records) {
  out << kRecordsHeader << '\n';
  append_record_rows(out, records);
}

namespace {

bool parse_record_line(const std::string& line, RobustnessRecord& rec) {
  std::stringstream ss(line);
  std::string field;
  std::vector<std::string> fields;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (fields.size() != 7) return false;
  if (!is_country_code(fields[0])) return false;
  try {
    rec.config.country = fields[0];
    rec.config.providers.first = parse_asn(fields[1]);
    rec.config.providers.second = parse_asn(fields[2]);
    rec.destination = parse_asn(fields[3]);
    rec.device_count = std::stoi(fields[4]);
    rec.ep_count = std::stoi(fields[5]);
    rec.differential = std::stoi(fields[6]);
  } catch (const std::exception&) {
    return false;
  }
  if (rec.config.providers.first >= rec.config.providers.second) return false;
  if (rec.differential != rec.ep_count - rec.device_count) return false;
  if (rec.device_count < 0 || rec.device_count > 2 || rec.ep_count < 0)
    return false;
  return true;
}

}  // namespace

std::vector<RobustnessRecord> read_records_csv(std::istream& in,
                                               const std::string& name,
                                               bool lenient) {
  std::vector<RobustnessRecord> out;
  std::string line;
  int lineno = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != kRecordsHeader) {
        throw ParseError(name, lineno, "missing records header");
      }
      saw_header = true;
      continue;
    }
    RobustnessRecord rec;
    if (!parse_record_line(line, rec)) {
      if (lenient) continue;
      throw ParseError(name, lineno, "malformed record row");
    }
    out.push_back(std::move(rec));
  }
  if (!saw_header && !lenient) {
    throw ParseError(name, lineno, "empty records file");
  }
  return out;
}

std::vector<RobustnessRecord> read_records_csv_file(const std::string& path,
                                                    bool lenient) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open records file " + path);
  }
  return read_records_csv(in, path, lenient);
}

void write_series_csv(std::ostream& out, std::span<const CountrySeries> series) {
  out << "country,view,config_index,value\n";
  for (const CountrySeries& cs : series) {
    for (std::size_t i = 0; i < cs.values.size(); ++i) {
      out << cs.country << ',' << to_string(cs.view) << ',' << i << ','
          << format_double(cs.values[i]) << '\n';
    }
  }
}

void write_series_json(std::ostream& out, std::span<const CountrySeries> series) {
  json arr = json::array();
  for (const CountrySeries& cs : series) {
    json obj;
    obj["country"] = cs.country;
    obj["view"] = to_string(cs.view);
    obj["values"] = cs.values;
    arr.push_back(std::move(obj));
  }
  out << arr.dump(2) << '\n';
}

namespace {

json stats_json(const std::string& group, const BoxplotStats& s, View view,
                Grouping grouping) {
  json obj;
  obj["group"] = group;
  obj["grouping"] = to_string(grouping);
  obj["view"] = to_string(view);
  obj["min"] = s.min;
  obj["q1"] = s.q1;
  obj["median"] = s.median;
  obj["q3"] = s.q3;
  obj["max"] = s.max;
  obj["mean"] = s.mean;
  obj["outlier_fraction"] = s.outlier_fraction;
  obj["outliers"] = s.outliers;
  obj["above_threshold"] = s.mean > kRoughThreshold;
  return obj;
}

}  // namespace

void write_boxplot_csv(std::ostream& out, const GroupStats& groups, View view,
                       Grouping grouping) {
  out << "group,grouping,view,min,q1,median,q3,max,mean,outlier_fraction,"
         "above_threshold,outliers\n";
  for (const auto& [name, s] : groups) {
    out << name << ',' << to_string(grouping) << ',' << to_string(view) << ','
        << format_double(s.min) << ',' << format_double(s.q1) << ','
        << format_double(s.median) << ',' << format_double(s.q3) << ','
        << format_double(s.max) << ',' << format_double(s.mean) << ','
        << format_double(s.outlier_fraction) << ','
        << (s.mean > kRoughThreshold ? 1 : 0) << ',';
    for (std::size_t i = 0; i < s.outliers.size(); ++i) {
      if (i) out << ';';
      out << format_double(s.outliers[i]);
    }
    out << '\n';
  }
}

void write_boxplot_json(std::ostream& out, const GroupStats& groups, View view,
                        Grouping grouping) {
  json arr = json::array();
  for (const auto& [name, s] : groups) {
    arr.push_back(stats_json(name, s, view, grouping));
  }
  out << arr.dump(2) << '\n';
}

}  // namespace mpdiv
