#include "mpdiv/pairs.hpp"

#include <algorithm>
#include <map>

namespace mpdiv {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

EdgeProviderIndex EdgeProviderIndex::build(const Classification& classes,
                                           const CountryMap& countries,
                                           const TorGraph* graph) {
  std::map<std::string, std::vector<AsNumber>> grouped;
  for (const auto& [asn, cls] : classes) {
    if (cls != AsClass::edge_provider) continue;
    auto cc = countries.find(asn);
    if (cc == countries.end()) continue;
    if (graph != nullptr && !graph->contains(asn)) continue;
    grouped[cc->second].push_back(asn);
  }
  EdgeProviderIndex index;
  index.countries_.reserve(grouped.size());
  index.providers_.reserve(grouped.size());
  for (auto& [cc, asns] : grouped) {
    std::sort(asns.begin(), asns.end());
    index.countries_.push_back(cc);
    index.providers_.push_back(std::move(asns));
  }
  return index;
}

std::size_t EdgeProviderIndex::index_of(const std::string& country) const {
  auto it = std::lower_bound(countries_.begin(), countries_.end(), country);
  if (it == countries_.end() || *it != country) return countries_.size();
  return static_cast<std::size_t>(it - countries_.begin());
}

std::span<const AsNumber> EdgeProviderIndex::providers(
    const std::string& country) const {
  std::size_t i = index_of(country);
  if (i == countries_.size()) return {};
  return providers_[i];
}

std::size_t EdgeProviderIndex::total_providers() const {
  std::size_t n = 0;
  for (const auto& v : providers_) n += v.size();
  return n;
}

std::vector<SourceConfig> EdgeProviderIndex::sources(
    const std::string& country) const {
  auto eps = providers(country);
  std::vector<SourceConfig> out;
  if (eps.size() < 2) return out;
  out.reserve(eps.size() * (eps.size() - 1) / 2);
  for (std::size_t i = 0; i < eps.size(); ++i) {
    for (std::size_t j = i + 1; j < eps.size(); ++j) {
      out.push_back({country, {eps[i], eps[j]}});
    }
  }
  return out;
}

DestinationSet EdgeProviderIndex::destinations(const std::string& country) const {
  DestinationSet set;
  set.country = country;
  for (std::size_t i = 0; i < countries_.size(); ++i) {
    if (countries_[i] == country) continue;
    set.destinations.insert(set.destinations.end(), providers_[i].begin(),
                            providers_[i].end());
  }
  std::sort(set.destinations.begin(), set.destinations.end());
  return set;
}

std::uint64_t EdgeProviderIndex::expected_pair_count(
    const std::string& country) const {
  std::uint64_t own = providers(country).size();
  std::uint64_t foreign = total_providers() - own;
  return own * (own - 1) / 2 * foreign;
}

std::vector<SourceConfig> enumerate_sources(const std::string& country,
                                            const Classification& classes,
                                            const CountryMap& countries) {
  return EdgeProviderIndex::build(classes, countries).sources(country);
}

DestinationSet enumerate_destinations(const std::string& country,
                                      const Classification& classes,
                                      const CountryMap& countries) {
  return EdgeProviderIndex::build(classes, countries).destinations(country);
}

DestinationSet filter_single_homed(const DestinationSet& set, const TorGraph& g) {
  DestinationSet out;
  out.country = set.country;
  for (AsNumber asn : set.destinations) {
    TorGraph::NodeId id = g.find(asn);
    if (id == TorGraph::npos) continue;
    int providers = 0;
    for (const TorGraph::Edge& e : g.neighbors(id)) {
      if (e.label == Relationship::c2p) ++providers;
    }
    if (providers == 1) out.destinations.push_back(asn);
  }
  return out;
}

DestinationSet sample_destinations(const DestinationSet& set, std::size_t limit,
                                   std::uint64_t seed) {
  if (set.destinations.size() <= limit) return set;
  std::vector<std::pair<std::uint64_t, AsNumber>> keyed;
  keyed.reserve(set.destinations.size());
  for (AsNumber asn : set.destinations) {
    keyed.emplace_back(splitmix64(seed ^ asn), asn);
  }
  std::sort(keyed.begin(), keyed.end());
  DestinationSet out;
  out.country = set.country;
  out.destinations.reserve(limit);
  for (std::size_t i = 0; i < limit; ++i) out.destinations.push_back(keyed[i].second);
  std::sort(out.destinations.begin(), out.destinations.end());
  return out;
}

}  // namespace mpdiv
