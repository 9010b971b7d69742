#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mpdiv/tor_graph.hpp"
#include "mpdiv/types.hpp"

namespace mpdiv {

// A policy-compliant AS path. labels[i] labels the hop nodes[i] -> nodes[i+1].
// Paths found from a dual-homed device start with kDeviceNode.
struct AsPath {
  std::vector<AsNumber> nodes;
  std::vector<Relationship> labels;

  std::size_t hops() const { return labels.size(); }

  friend bool operator==(const AsPath&, const AsPath&) = default;
};

// (hop count, lexicographic node sequence) — the canonical result order.
bool path_less(const AsPath& a, const AsPath& b);

struct SearchParams {
  int tau = 6;                 // maximum hop depth
  ScanEngine engine = ScanEngine::exhaustive;
  Grammar grammar = Grammar::single_peer;
  std::size_t max_paths = 10000;
  QueueDiscipline queue = QueueDiscipline::fifo;  // pruned_bfs only
  // Device searches: charge the virtual source hop against tau.
  bool count_first_hop = false;
};

struct SearchResult {
  std::vector<AsPath> paths;
  bool truncated = false;  // hit max_paths; further paths were dropped
};

// All policy-compliant paths from s to d, sorted by (length, lex).
// exhaustive returns every simple path of <= tau hops whose labels satisfy
// the grammar; pruned_bfs reproduces the single-visit scan with in-flight
// edge removal and returns a subset of those paths.
SearchResult search(const TorGraph& g, AsNumber s, AsNumber d,
                    const SearchParams& params);

// Same search from a synthetic device node attached to two distinct
// providers by c2p edges. Returned paths start with kDeviceNode. The virtual
// first hop does not count against tau unless params.count_first_hop is set.
SearchResult search_from_device(const TorGraph& g,
                                std::pair<AsNumber, AsNumber> providers,
                                AsNumber d, const SearchParams& params);

}  // namespace mpdiv
