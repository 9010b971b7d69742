#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mpdiv/ingest.hpp"
#include "mpdiv/tor_graph.hpp"

namespace mpdiv {

// A dual-homed device in `country`, attached to two distinct edge providers
// of that country. providers.first < providers.second always.
struct SourceConfig {
  std::string country;
  std::pair<AsNumber, AsNumber> providers;
};

struct DestinationSet {
  std::string country;  // the source country the set excludes
  std::vector<AsNumber> destinations;
};

// Country -> sorted edge-provider ASNs. Only ASes that are classified
// edge_provider and mapped to a country participate; when a graph is given,
// ASes missing from it are dropped as well (they cannot carry any path).
class EdgeProviderIndex {
 public:
  static EdgeProviderIndex build(const Classification& classes,
                                 const CountryMap& countries,
                                 const TorGraph* graph = nullptr);

  const std::vector<std::string>& countries() const { return countries_; }
  std::span<const AsNumber> providers(const std::string& country) const;
  std::size_t provider_count(const std::string& country) const {
    return providers(country).size();
  }
  std::size_t total_providers() const;

  // All unordered provider pairs of the country, sorted. Empty when the
  // country has fewer than two edge providers (the caller reports the skip).
  std::vector<SourceConfig> sources(const std::string& country) const;

  // Every edge provider outside the country, ascending.
  DestinationSet destinations(const std::string& country) const;

  // pairs(country) = |E_c|(|E_c|-1)/2 * sum of |E_x| over x != c
  std::uint64_t expected_pair_count(const std::string& country) const;

 private:
  std::size_t index_of(const std::string& country) const;

  std::vector<std::string> countries_;
  std::vector<std::vector<AsNumber>> providers_;
};

std::vector<SourceConfig> enumerate_sources(const std::string& country,
                                            const Classification& classes,
                                            const CountryMap& countries);

DestinationSet enumerate_destinations(const std::string& country,
                                      const Classification& classes,
                                      const CountryMap& countries);

// Keeps destinations with exactly one provider link in the graph.
DestinationSet filter_single_homed(const DestinationSet& set, const TorGraph& g);

// Deterministic subsample of at most `limit` destinations: order by a
// seed-keyed hash, take the smallest, return ascending.
DestinationSet sample_destinations(const DestinationSet& set, std::size_t limit,
                                   std::uint64_t seed);

}  // namespace mpdiv
