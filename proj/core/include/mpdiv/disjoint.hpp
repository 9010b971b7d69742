#pragma once

#include <span>
#include <vector>

#include "mpdiv/path_search.hpp"

namespace mpdiv {

// Nodes strictly between the endpoints. The synthetic device node never
// appears here because it is always an endpoint.
std::vector<AsNumber> intermediates(const AsPath& path);

// Selects a vertex-disjoint subset greedily, shortest path first (ties by
// node sequence). Two paths conflict when they share an intermediate node;
// shared endpoints are fine. `blocked` names nodes treated as already used.
std::vector<AsPath> greedy_vertex_disjoint(std::span<const AsPath> paths,
                                           std::span<const AsNumber> blocked = {});

// Same selection rule, but honours the order of `paths` as given instead of
// re-sorting. Lets callers put preferred candidates first.
std::vector<AsPath> greedy_vertex_disjoint_in_order(
    std::span<const AsPath> paths, std::span<const AsNumber> blocked = {});

// Sorted union of the intermediate nodes of a path set.
std::vector<AsNumber> intermediate_set(std::span<const AsPath> paths);

}  // namespace mpdiv
