#include "mpdiv/path_search.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <limits>
#include <stdexcept>

namespace mpdiv {

bool path_less(const AsPath& a, const AsPath& b) {
  if (a.nodes.size() != b.nodes.size()) {
    return a.nodes.size() < b.nodes.size();
  }
  return a.nodes < b.nodes;
}

namespace {

using NodeId = TorGraph::NodeId;

// Sentinel NodeId for the synthetic device node (it has no row in the graph).
constexpr NodeId kVirtualTip = TorGraph::npos;

struct SourceSpec {
  bool virtual_source = false;
  NodeId s = TorGraph::npos;           // real source
  std::array<NodeId, 2> providers{};   // ascending ASN order
};

int state_index(ValleyState s) { return static_cast<int>(s); }

// Minimum hops from (valley state, node) to the destination, ignoring
// node-reuse. Used as an admissible bound to prune exhaustive branches that
// cannot complete; never prunes a reachable valid path.
class TargetIndex {
 public:
  static constexpr std::uint16_t kUnreachable =
      std::numeric_limits<std::uint16_t>::max();

  TargetIndex(const TorGraph& g, NodeId d, Grammar grammar) {
    for (auto& layer : dist_) layer.assign(g.node_count(), kUnreachable);
    std::deque<std::pair<int, NodeId>> queue;
    for (int q = 0; q < 3; ++q) {
      dist_[q][d] = 0;
      queue.emplace_back(q, d);
    }
    const std::array<ValleyState, 3> states = {
        ValleyState::uphill, ValleyState::peak, ValleyState::downhill};
    while (!queue.empty()) {
      auto [qi, v] = queue.front();
      queue.pop_front();
      std::uint16_t next = static_cast<std::uint16_t>(dist_[qi][v] + 1);
      // In-edges of v are the reverses of v's out-edges.
      for (const TorGraph::Edge& e : g.neighbors(v)) {
        NodeId u = e.to;
        Relationship into_v = reverse(e.label);
        for (int q = 0; q < 3; ++q) {
          if (dist_[q][u] != kUnreachable) continue;
          if (valley_step(states[q], into_v, grammar) == states[qi]) {
            dist_[q][u] = next;
            queue.emplace_back(q, u);
          }
        }
      }
    }
  }

  bool feasible(ValleyState st, NodeId v, int remaining) const {
    return dist_[state_index(st)][v] <= remaining;
  }

 private:
  std::array<std::vector<std::uint16_t>, 3> dist_;
};

// ---------------------------------------------------------------------------
// exhaustive engine: iterative deepening over exact hop counts, so that the
// max_paths cap keeps the shortest paths and output falls out already sorted.

struct ExhaustiveScan {
  const TorGraph& g;
  NodeId d;
  Grammar grammar;
  const TargetIndex& target;
  std::size_t max_paths;

  std::vector<char> on_path;
  std::vector<AsNumber> nodes;
  std::vector<Relationship> labels;
  std::vector<AsPath> found;
  bool truncated = false;
  int target_hops = 0;

  ExhaustiveScan(const TorGraph& graph, NodeId dest, Grammar gr,
                 const TargetIndex& ti, std::size_t cap)
      : g(graph), d(dest), grammar(gr), target(ti), max_paths(cap) {
    on_path.assign(g.node_count(), 0);
  }

  // Attempts the hop to v; returns false once the search must stop.
  bool take_hop(NodeId v, Relationship label, ValleyState state, int used) {
    if (on_path[v]) return true;
    ValleyState next = valley_step(state, label, grammar);
    if (next == ValleyState::invalid) return true;
    int remaining = target_hops - used - 1;
    if (v == d) {
      if (remaining == 0) {
        if (found.size() >= max_paths) {
          truncated = true;
          return false;
        }
        AsPath p;
        p.nodes = nodes;
        p.nodes.push_back(g.asn(v));
        p.labels = labels;
        p.labels.push_back(label);
        found.push_back(std::move(p));
      }
      return true;  // simple paths never continue through the destination
    }
    if (remaining <= 0) return true;
    if (!target.feasible(next, v, remaining)) return true;

    on_path[v] = 1;
    nodes.push_back(g.asn(v));
    labels.push_back(label);
    bool keep_going = expand(v, next, used + 1);
    labels.pop_back();
    nodes.pop_back();
    on_path[v] = 0;
    return keep_going;
  }

  bool expand(NodeId u, ValleyState state, int used) {
    for (const TorGraph::Edge& e : g.neighbors(u)) {
      if (!take_hop(e.to, e.label, state, used)) return false;
    }
    return true;
  }
};

SearchResult run_exhaustive(const TorGraph& g, const SourceSpec& src, NodeId d,
                            const SearchParams& params, int max_hops) {
  TargetIndex target(g, d, params.grammar);
  ExhaustiveScan scan(g, d, params.grammar, target, params.max_paths);

  for (int h = 1; h <= max_hops && !scan.truncated; ++h) {
    scan.target_hops = h;
    if (src.virtual_source) {
      scan.nodes.assign(1, kDeviceNode);
      bool keep_going = true;
      for (NodeId p : src.providers) {
        keep_going = scan.take_hop(p, Relationship::c2p, ValleyState::uphill, 0);
        if (!keep_going) break;
      }
      (void)keep_going;
    } else {
      scan.nodes.assign(1, g.asn(src.s));
      scan.on_path[src.s] = 1;
      scan.expand(src.s, ValleyState::uphill, 0);
      scan.on_path[src.s] = 0;
    }
    scan.labels.clear();
  }

  SearchResult result;
  result.paths = std::move(scan.found);
  result.truncated = scan.truncated;
  return result;
}

// ---------------------------------------------------------------------------
// pruned_bfs engine: single-visit scan over a per-call edge mask. Each node
// is expanded once; whenever a p2c hop into a customer is scanned, the
// customer's outgoing c2p/p2p edges are masked out. Hops that would violate
// the grammar or revisit the working path are skipped, so the result is
// always a subset of the exhaustive enumeration.

struct QueuedPath {
  std::vector<NodeId> nodes;  // kVirtualTip stands for the device node
  std::vector<Relationship> labels;
  ValleyState state = ValleyState::uphill;
};

SearchResult run_pruned_bfs(const TorGraph& g, const SourceSpec& src, NodeId d,
                            const SearchParams& params, int max_nodes) {
  std::vector<char> visited(g.node_count(), 0);
  std::vector<char> removed(g.directed_edge_count(), 0);
  bool virtual_expanded = false;

  SearchResult result;
  std::deque<QueuedPath> queue;
  {
    QueuedPath start;
    start.nodes.push_back(src.virtual_source ? kVirtualTip : src.s);
    queue.push_back(std::move(start));
  }

  auto emit = [&](const QueuedPath& qp) -> bool {
    if (result.paths.size() >= params.max_paths) {
      result.truncated = true;
      return false;
    }
    AsPath p;
    p.nodes.reserve(qp.nodes.size());
    for (NodeId id : qp.nodes) {
      p.nodes.push_back(id == kVirtualTip ? kDeviceNode : g.asn(id));
    }
    p.labels = qp.labels;
    result.paths.push_back(std::move(p));
    return true;
  };

  while (!queue.empty()) {
    QueuedPath path;
    if (params.queue == QueueDiscipline::fifo) {
      path = std::move(queue.front());
      queue.pop_front();
    } else {
      path = std::move(queue.back());
      queue.pop_back();
    }
    NodeId v = path.nodes.back();

    if (v == kVirtualTip) {
      if (virtual_expanded) continue;
      virtual_expanded = true;
      bool stop = false;
      for (NodeId n : src.providers) {
        if (visited[n]) continue;
        ValleyState next =
            valley_step(path.state, Relationship::c2p, params.grammar);
        QueuedPath extended = path;
        extended.nodes.push_back(n);
        extended.labels.push_back(Relationship::c2p);
        extended.state = next;
        if (n == d && !emit(extended)) {
          stop = true;
          break;
        }
        if (static_cast<int>(extended.nodes.size()) == max_nodes) break;
        queue.push_back(std::move(extended));
      }
      if (stop) break;
      continue;
    }

    if (visited[v]) continue;
    auto row = g.neighbors(v);
    const std::uint32_t base = g.row_offset(v);
    bool stop = false;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (removed[base + i]) continue;
      NodeId n = row[i].to;
      if (visited[n]) continue;
      ValleyState next = valley_step(path.state, row[i].label, params.grammar);
      if (next == ValleyState::invalid) continue;
      if (std::find(path.nodes.begin(), path.nodes.end(), n) !=
          path.nodes.end()) {
        continue;
      }
      if (row[i].label == Relationship::p2c) {
        // The customer must not carry traffic back up or sideways.
        auto crow = g.neighbors(n);
        const std::uint32_t cbase = g.row_offset(n);
        for (std::size_t j = 0; j < crow.size(); ++j) {
          if (crow[j].label != Relationship::p2c) removed[cbase + j] = 1;
        }
      }
      QueuedPath extended;
      extended.nodes = path.nodes;
      extended.nodes.push_back(n);
      extended.labels = path.labels;
      extended.labels.push_back(row[i].label);
      extended.state = next;
      if (n == d && !emit(extended)) {
        stop = true;
        break;
      }
      if (static_cast<int>(extended.nodes.size()) == max_nodes) break;
      queue.push_back(std::move(extended));
    }
    if (stop) break;
    visited[v] = 1;
  }

  std::sort(result.paths.begin(), result.paths.end(), path_less);
  return result;
}

SearchResult run(const TorGraph& g, const SourceSpec& src, AsNumber d_asn,
                 const SearchParams& params) {
  if (params.tau < 1) {
    throw std::invalid_argument("tau must be >= 1");
  }
  if (params.max_paths < 1) {
    throw std::invalid_argument("max_paths must be >= 1");
  }
  NodeId d = g.find(d_asn);
  if (d == TorGraph::npos) {
    throw std::invalid_argument("unknown destination AS " +
                                std::to_string(d_asn));
  }

  int budget = params.tau;
  if (src.virtual_source && !params.count_first_hop) budget += 1;

  if (params.engine == ScanEngine::exhaustive) {
    return run_exhaustive(g, src, d, params, budget);
  }
  return run_pruned_bfs(g, src, d, params, budget + 1);
}

}  // namespace

SearchResult search(const TorGraph& g, AsNumber s, AsNumber d,
                    const SearchParams& params) {
  if (s == d) {
    throw std::invalid_argument("source and destination coincide (AS " +
                                std::to_string(s) + ")");
  }
  SourceSpec src;
  src.s = g.find(s);
  if (src.s == TorGraph::npos) {
    throw std::invalid_argument("unknown source AS " + std::to_string(s));
  }
  return run(g, src, d, params);
}

SearchResult search_from_device(const TorGraph& g,
                                std::pair<AsNumber, AsNumber> providers,
                                AsNumber d, const SearchParams& params) {
  if (providers.first == providers.second) {
    throw std::invalid_argument("device providers must be distinct (AS " +
                                std::to_string(providers.first) + ")");
  }
  SourceSpec src;
  src.virtual_source = true;
  AsNumber lo = std::min(providers.first, providers.second);
  AsNumber hi = std::max(providers.first, providers.second);
  src.providers[0] = g.find(lo);
  src.providers[1] = g.find(hi);
  if (src.providers[0] == TorGraph::npos ||
      src.providers[1] == TorGraph::npos) {
    throw std::invalid_argument("unknown provider AS " +
                                std::to_string(src.providers[0] == TorGraph::npos
                                                   ? lo
                                                   : hi));
  }
  return run(g, src, d, params);
}

}  // namespace mpdiv
