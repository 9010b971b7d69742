#include "mpdiv/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <utility>

namespace mpdiv {

namespace {

// Strips trailing CR and surrounding spaces.
std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
    s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  return s;
}

bool skippable(std::string_view line) {
  return line.empty() || line.front() == '#';
}

std::vector<std::string_view> split(std::string_view s, char delim) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(delim, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

long parse_int(std::string_view token, const std::string& file,
               std::size_t line) {
  long value = 0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(file, line, "bad integer token: " + std::string(token));
  }
  return value;
}

AsNumber parse_asn_at(std::string_view token, const std::string& file,
                      std::size_t line) {
  try {
    return parse_asn(token);
  } catch (const std::invalid_argument& e) {
    throw ParseError(file, line, e.what());
  }
}

using PairKey = std::pair<AsNumber, AsNumber>;

PairKey make_key(AsNumber a, AsNumber b) {
  return a < b ? PairKey{a, b} : PairKey{b, a};
}

}  // namespace

std::vector<RawLink> load_links(std::istream& links, std::istream* freq,
                                int window_length,
                                const std::string& links_name,
                                const std::string& freq_name) {
  if (window_length < 0) {
    throw std::invalid_argument("window_length must be non-negative");
  }

  // Occurrence days per unordered pair. Pairs that only appear in the
  // frequency file are ignored.
  std::map<PairKey, int> days;
  if (freq != nullptr) {
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(*freq, raw)) {
      ++lineno;
      std::string_view line = trim(raw);
      if (skippable(line)) continue;
      auto parts = split(line, '|');
      if (parts.size() != 3) {
        throw ParseError(freq_name, lineno,
                         "expected <ASN>|<ASN>|<days>: " + std::string(line));
      }
      AsNumber a = parse_asn_at(trim(parts[0]), freq_name, lineno);
      AsNumber b = parse_asn_at(trim(parts[1]), freq_name, lineno);
      long d = parse_int(trim(parts[2]), freq_name, lineno);
      if (d < 0 || d > window_length) {
        throw ParseError(freq_name, lineno,
                         "days_seen " + std::to_string(d) +
                             " outside [0, " + std::to_string(window_length) +
                             "]");
      }
      days[make_key(a, b)] = static_cast<int>(d);
    }
  }

  std::vector<RawLink> out;
  std::map<PairKey, std::size_t> seen;  // pair -> index into out
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(links, raw)) {
    ++lineno;
    std::string_view line = trim(raw);
    if (skippable(line)) continue;
    auto parts = split(line, '|');
    if (parts.size() < 3) {
      throw ParseError(links_name, lineno,
                       "expected <ASN>|<ASN>|<rel>: " + std::string(line));
    }
    AsNumber a = parse_asn_at(trim(parts[0]), links_name, lineno);
    AsNumber b = parse_asn_at(trim(parts[1]), links_name, lineno);
    long rel = parse_int(trim(parts[2]), links_name, lineno);
    if (a == b) {
      throw ParseError(links_name, lineno,
                       "self-loop link on AS " + std::to_string(a));
    }
    if (rel != -1 && rel != 0) {
      throw ParseError(links_name, lineno,
                       "unsupported relationship code " + std::to_string(rel) +
                           " (expected -1 or 0)");
    }

    RawLink link;
    link.a = a;
    link.b = b;
    link.kind =
        rel == -1 ? RawLink::Kind::provider_customer : RawLink::Kind::peer;
    auto it = days.find(make_key(a, b));
    link.days_seen = it == days.end() ? window_length : it->second;

    auto [pos, inserted] = seen.emplace(make_key(a, b), out.size());
    if (!inserted) {
      const RawLink& prev = out[pos->second];
      bool same = prev.kind == link.kind &&
                  (link.kind == RawLink::Kind::peer
                       ? true
                       : (prev.a == link.a && prev.b == link.b));
      if (!same) {
        throw ParseError(links_name, lineno,
                         "conflicting relationship for pair " +
                             std::to_string(link.a) + "|" +
                             std::to_string(link.b));
      }
      continue;  // idempotent duplicate
    }
    out.push_back(link);
  }
  return out;
}

std::vector<RawLink> filter_stable(const std::vector<RawLink>& links,
                                   int min_days) {
  if (min_days < 0) {
    throw std::invalid_argument("min_days must be non-negative");
  }
  std::vector<RawLink> out;
  out.reserve(links.size());
  for (const RawLink& l : links) {
    if (l.days_seen > min_days) out.push_back(l);
  }
  return out;
}

CountryMap load_country_map(std::istream& in, const std::string& name) {
  CountryMap out;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = trim(raw);
    if (skippable(line)) continue;
    auto parts = split(line, ',');
    if (parts.size() != 2) {
      throw ParseError(name, lineno, "expected ASN,CC: " + std::string(line));
    }
    AsNumber asn = parse_asn_at(trim(parts[0]), name, lineno);
    std::string_view cc = trim(parts[1]);
    if (!is_country_code(cc)) {
      throw ParseError(name, lineno,
                       "malformed country code: " + std::string(cc));
    }
    auto [it, inserted] = out.emplace(asn, std::string(cc));
    if (!inserted && it->second != cc) {
      throw ParseError(name, lineno,
                       "AS " + std::to_string(asn) + " mapped to both " +
                           it->second + " and " + std::string(cc));
    }
  }
  return out;
}

std::vector<AsPathRecord> load_as_paths(std::istream& in,
                                        const std::string& name) {
  std::vector<AsPathRecord> out;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = trim(raw);
    if (skippable(line)) continue;
    std::istringstream tokens{std::string(line)};
    AsPathRecord rec;
    std::string token;
    while (tokens >> token) {
      AsNumber asn = parse_asn_at(token, name, lineno);
      // Collapse prepending: repeated consecutive ASNs carry no topology.
      if (rec.path.empty() || rec.path.back() != asn) rec.path.push_back(asn);
    }
    if (rec.path.empty()) {
      throw ParseError(name, lineno, "empty AS path");
    }
    out.push_back(std::move(rec));
  }
  return out;
}

Classification classify(const std::vector<AsPathRecord>& paths,
                        const std::vector<RawLink>& links) {
  // Maximum 1-based position from the path end per AS.
  std::unordered_map<AsNumber, std::size_t> max_pos;
  for (const AsPathRecord& rec : paths) {
    const std::size_t n = rec.path.size();
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t pos = n - i;  // path[0] is collector side, path[n-1] origin
      auto [it, inserted] = max_pos.emplace(rec.path[i], pos);
      if (!inserted && pos > it->second) it->second = pos;
    }
  }

  Classification out;
  out.reserve(max_pos.size());
  for (const auto& [asn, pos] : max_pos) {
    AsClass c = AsClass::carrier;
    if (pos == 1) {
      c = AsClass::stub;
    } else if (pos <= 3) {
      c = AsClass::edge_provider;
    }
    out.emplace(asn, c);
  }
  for (const RawLink& l : links) {
    out.emplace(l.a, AsClass::unknown);
    out.emplace(l.b, AsClass::unknown);
  }
  return out;
}

namespace {

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  return in;
}

}  // namespace

std::vector<RawLink> load_links_file(const std::filesystem::path& links,
                                     const std::filesystem::path& freq,
                                     int window_length) {
  std::ifstream links_in = open_or_throw(links);
  if (freq.empty()) {
    return load_links(links_in, nullptr, window_length, links.string());
  }
  std::ifstream freq_in = open_or_throw(freq);
  return load_links(links_in, &freq_in, window_length, links.string(),
                    freq.string());
}

CountryMap load_country_map_file(const std::filesystem::path& path) {
  std::ifstream in = open_or_throw(path);
  return load_country_map(in, path.string());
}

std::vector<AsPathRecord> load_as_paths_file(const std::filesystem::path& path) {
  std::ifstream in = open_or_throw(path);
  return load_as_paths(in, path.string());
}

}  // namespace mpdiv
