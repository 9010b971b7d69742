#include "mpdiv/disjoint.hpp"

#include <algorithm>
#include <unordered_set>

namespace mpdiv {

std::vector<AsNumber> intermediates(const AsPath& path) {
  if (path.nodes.size() <= 2) return {};
  return std::vector<AsNumber>(path.nodes.begin() + 1, path.nodes.end() - 1);
}

namespace {

std::vector<AsPath> select_disjoint(std::span<const AsPath> paths,
                                    std::span<const std::size_t> order,
                                    std::span<const AsNumber> blocked) {
  std::unordered_set<AsNumber> used(blocked.begin(), blocked.end());
  std::vector<AsPath> kept;
  for (std::size_t idx : order) {
    const AsPath& p = paths[idx];
    bool clash = false;
    for (std::size_t i = 1; i + 1 < p.nodes.size(); ++i) {
      if (used.count(p.nodes[i])) {
        clash = true;
        break;
      }
    }
    if (clash) continue;
    for (std::size_t i = 1; i + 1 < p.nodes.size(); ++i) used.insert(p.nodes[i]);
    kept.push_back(p);
  }
  return kept;
}

}  // namespace

std::vector<AsPath> greedy_vertex_disjoint(std::span<const AsPath> paths,
                                           std::span<const AsNumber> blocked) {
  std::vector<std::size_t> order(paths.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return path_less(paths[a], paths[b]);
  });
  return select_disjoint(paths, order, blocked);
}

std::vector<AsPath> greedy_vertex_disjoint_in_order(
    std::span<const AsPath> paths, std::span<const AsNumber> blocked) {
  std::vector<std::size_t> order(paths.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  return select_disjoint(paths, order, blocked);
}

std::vector<AsNumber> intermediate_set(std::span<const AsPath> paths) {
  std::vector<AsNumber> out;
  for (const AsPath& p : paths) {
    for (std::size_t i = 1; i + 1 < p.nodes.size(); ++i) out.push_back(p.nodes[i]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace mpdiv
