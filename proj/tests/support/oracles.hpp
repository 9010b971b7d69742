#pragma once

#include <random>
#include <utility>
#include <vector>

#include "mpdiv/ingest.hpp"
#include "mpdiv/metrics.hpp"
#include "mpdiv/path_search.hpp"

// Reference implementations the production code is checked against. They are
// deliberately naive and share no code with the library.
namespace mpdiv::test {

// Regex-style scan: c2p* p2p? p2c* (single_peer) or c2p* p2p* p2c*.
bool ref_valid(const std::vector<Relationship>& labels, Grammar grammar);

// Every simple s->d path with at most max_hops hops whose label sequence
// ref_valid accepts, from a private adjacency built off the raw links.
// Sorted by (hop count, node sequence).
std::vector<AsPath> oracle_enumerate(const std::vector<RawLink>& links,
                                     AsNumber s, AsNumber d, int max_hops,
                                     Grammar grammar);

// Same, starting from a synthetic node 0 wired customer-side to the two
// providers. max_hops includes that first hop.
std::vector<AsPath> oracle_enumerate_device(
    const std::vector<RawLink>& links, std::pair<AsNumber, AsNumber> providers,
    AsNumber d, int max_hops, Grammar grammar);

// Exact maximum number of vertex-disjoint paths (endpoints shared freely),
// via branch and bound over the pairwise conflict masks. paths.size() <= 64.
int oracle_max_disjoint(const std::vector<AsPath>& paths);

// Sort-and-index boxplot reference.
BoxplotStats ref_boxplot(const std::vector<double>& values, double fraction);

// Random policy-labeled link set on ASNs 1..nodes: each unordered pair draws
// an edge with edge_prob, peer with peer_prob, provider side by coin flip.
std::vector<RawLink> random_links(std::mt19937_64& rng, int nodes,
                                  double edge_prob, double peer_prob);

}  // namespace mpdiv::test
