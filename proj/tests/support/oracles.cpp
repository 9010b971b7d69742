#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>

namespace mpdiv::test {

bool ref_valid(const std::vector<Relationship>& labels, Grammar grammar) {
  std::size_t i = 0;
  while (i < labels.size() && labels[i] == Relationship::c2p) ++i;
  if (grammar == Grammar::multi_peer) {
    while (i < labels.size() && labels[i] == Relationship::p2p) ++i;
  } else if (i < labels.size() && labels[i] == Relationship::p2p) {
    ++i;
  }
  while (i < labels.size() && labels[i] == Relationship::p2c) ++i;
  return i == labels.size();
}

namespace {

using Adjacency = std::map<AsNumber, std::vector<std::pair<AsNumber, Relationship>>>;

Adjacency adjacency_of(const std::vector<RawLink>& links) {
  Adjacency adj;
  for (const RawLink& l : links) {
    if (l.kind == RawLink::Kind::provider_customer) {
      adj[l.a].emplace_back(l.b, Relationship::p2c);
      adj[l.b].emplace_back(l.a, Relationship::c2p);
    } else {
      adj[l.a].emplace_back(l.b, Relationship::p2p);
      adj[l.b].emplace_back(l.a, Relationship::p2p);
    }
  }
  return adj;
}

struct Enumerator {
  const Adjacency& adj;
  AsNumber d;
  int max_hops;
  Grammar grammar;
  std::vector<AsNumber> nodes;
  std::vector<Relationship> labels;
  std::set<AsNumber> on_path;
  std::vector<AsPath> found;

  void walk(AsNumber u) {
    if (u == d && !labels.empty()) {
      if (ref_valid(labels, grammar)) found.push_back({nodes, labels});
      return;
    }
    if (static_cast<int>(labels.size()) >= max_hops) return;
    auto it = adj.find(u);
    if (it == adj.end()) return;
    for (const auto& [v, label] : it->second) {
      if (on_path.count(v)) continue;
      nodes.push_back(v);
      labels.push_back(label);
      on_path.insert(v);
      walk(v);
      on_path.erase(v);
      labels.pop_back();
      nodes.pop_back();
    }
  }
};

std::vector<AsPath> run_oracle(const Adjacency& adj, AsNumber s, AsNumber d,
                               int max_hops, Grammar grammar) {
  Enumerator e{adj, d, max_hops, grammar, {s}, {}, {s}, {}};
  e.walk(s);
  std::sort(e.found.begin(), e.found.end(), path_less);
  return e.found;
}

}  // namespace

std::vector<AsPath> oracle_enumerate(const std::vector<RawLink>& links,
                                     AsNumber s, AsNumber d, int max_hops,
                                     Grammar grammar) {
  Adjacency adj = adjacency_of(links);
  return run_oracle(adj, s, d, max_hops, grammar);
}

std::vector<AsPath> oracle_enumerate_device(
    const std::vector<RawLink>& links, std::pair<AsNumber, AsNumber> providers,
    AsNumber d, int max_hops, Grammar grammar) {
  Adjacency adj = adjacency_of(links);
  adj[kDeviceNode].emplace_back(providers.first, Relationship::c2p);
  adj[kDeviceNode].emplace_back(providers.second, Relationship::c2p);
  return run_oracle(adj, kDeviceNode, d, max_hops, grammar);
}

namespace {

int best_independent(const std::vector<std::uint64_t>& conflicts,
                     std::uint64_t candidates, int chosen, int best) {
  if (chosen + std::popcount(candidates) <= best) return best;
  if (candidates == 0) return std::max(best, chosen);
  int i = std::countr_zero(candidates);
  std::uint64_t rest = candidates & ~(std::uint64_t{1} << i);
  best = best_independent(conflicts, rest & ~conflicts[i], chosen + 1, best);
  best = best_independent(conflicts, rest, chosen, best);
  return best;
}

}  // namespace

int oracle_max_disjoint(const std::vector<AsPath>& paths) {
  const std::size_t n = paths.size();
  if (n > 64) throw std::invalid_argument("too many paths for the oracle");
  std::vector<std::set<AsNumber>> inner(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& nodes = paths[i].nodes;
    for (std::size_t k = 1; k + 1 < nodes.size(); ++k) inner[i].insert(nodes[k]);
  }
  std::vector<std::uint64_t> conflicts(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      bool clash = std::any_of(inner[i].begin(), inner[i].end(),
                               [&](AsNumber x) { return inner[j].count(x); });
      if (clash) {
        conflicts[i] |= std::uint64_t{1} << j;
        conflicts[j] |= std::uint64_t{1} << i;
      }
    }
  }
  std::uint64_t all =
      n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  return best_independent(conflicts, all, 0, 0);
}

BoxplotStats ref_boxplot(const std::vector<double>& values, double fraction) {
  std::vector<double> v = values;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();

  auto quantile_at = [&](double p) {
    double h = p * static_cast<double>(n - 1);
    std::size_t lo = static_cast<std::size_t>(std::floor(h));
    std::size_t hi = static_cast<std::size_t>(std::ceil(h));
    return v[lo] + (h - std::floor(h)) * (v[hi] - v[lo]);
  };

  std::size_t k = static_cast<std::size_t>(
      std::floor(static_cast<double>(n) * fraction / 2.0));

  BoxplotStats s;
  s.outlier_fraction = fraction;
  s.q1 = quantile_at(0.25);
  s.median = quantile_at(0.5);
  s.q3 = quantile_at(0.75);
  double sum = 0;
  for (double x : v) sum += x;
  s.mean = sum / static_cast<double>(n);
  s.min = v[k];
  s.max = v[n - 1 - k];
  for (std::size_t i = 0; i < k; ++i) s.outliers.push_back(v[i]);
  for (std::size_t i = n - k; i < n; ++i) s.outliers.push_back(v[i]);
  return s;
}

std::vector<RawLink> random_links(std::mt19937_64& rng, int nodes,
                                  double edge_prob, double peer_prob) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<RawLink> links;
  for (int i = 1; i <= nodes; ++i) {
    for (int j = i + 1; j <= nodes; ++j) {
      if (coin(rng) >= edge_prob) continue;
      AsNumber a = static_cast<AsNumber>(i);
      AsNumber b = static_cast<AsNumber>(j);
      if (coin(rng) < peer_prob) {
        links.push_back({a, b, RawLink::Kind::peer, 30});
      } else if (coin(rng) < 0.5) {
        links.push_back({a, b, RawLink::Kind::provider_customer, 30});
      } else {
        links.push_back({b, a, RawLink::Kind::provider_customer, 30});
      }
    }
  }
  return links;
}

}  // namespace mpdiv::test
