#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "mpdiv/types.hpp"

namespace mpdiv {

// One undirected inter-AS link from the relationship dataset.
// kind == provider_customer means `a` is the provider of `b`.
struct RawLink {
  enum class Kind : std::uint8_t { provider_customer, peer };

  AsNumber a = 0;
  AsNumber b = 0;
  Kind kind = Kind::peer;
  int days_seen = 0;

  friend bool operator==(const RawLink&, const RawLink&) = default;
};

using CountryMap = std::unordered_map<AsNumber, std::string>;
using Classification = std::unordered_map<AsNumber, AsClass>;

// A BGP AS path, collector side first, prepending already collapsed.
struct AsPathRecord {
  std::vector<AsNumber> path;

  friend bool operator==(const AsPathRecord&, const AsPathRecord&) = default;
};

// Link file: `<a>|<b>|<rel>` per line, rel -1 (a provider of b) or 0 (peers),
// `#` comments ignored. Frequency file: `<a>|<b>|<days>`. Pairs without a
// frequency line, or every pair when `freq` is null, get window_length days.
// Duplicate pair lines with conflicting relations, self-loops and
// relationship codes other than -1/0 are errors.
std::vector<RawLink> load_links(std::istream& links, std::istream* freq,
                                int window_length,
                                const std::string& links_name = "links",
                                const std::string& freq_name = "freq");

// Keeps exactly the links with days_seen > min_days, order preserved.
std::vector<RawLink> filter_stable(const std::vector<RawLink>& links,
                                   int min_days);

// CSV lines `ASN,CC`; duplicate identical lines allowed, conflicts are errors.
CountryMap load_country_map(std::istream& in,
                            const std::string& name = "countries");

// One path per line, space-separated ASNs, collector side first. Consecutive
// duplicates (prepending) are collapsed on load.
std::vector<AsPathRecord> load_as_paths(std::istream& in,
                                        const std::string& name = "as-paths");

// Classifies every AS seen in `paths` or `links` by its maximum position
// from the path end (origin = 1): 1 -> stub, 2..3 -> edge_provider,
// >3 -> carrier; in links but in no path -> unknown.
Classification classify(const std::vector<AsPathRecord>& paths,
                        const std::vector<RawLink>& links);

// File-based convenience wrappers.
std::vector<RawLink> load_links_file(const std::filesystem::path& links,
                                     const std::filesystem::path& freq,
                                     int window_length);
CountryMap load_country_map_file(const std::filesystem::path& path);
std::vector<AsPathRecord> load_as_paths_file(const std::filesystem::path& path);

}  // namespace mpdiv
