#pragma once

#include <cstdint>
#include <vector>

#include "mpdiv/ingest.hpp"

namespace mpdiv {

// Preferential-attachment topology in the shape of the AS graph: heavy-tailed
// degrees, most links provider-customer, a small peer fraction. New nodes
// attach with 1 link about a third of the time and 4-7 links otherwise, which
// lands the defaults near 21.5k nodes / 87k links (average degree ~8).
struct SynthParams {
  std::uint32_t nodes = 21469;
  std::uint64_t seed = 1;
  double single_link_prob = 0.32;
  int burst_min = 4;
  int burst_max = 7;
  double peer_prob = 0.10;
  int days_seen = 30;
};

std::vector<RawLink> scale_free_links(const SynthParams& params);

}  // namespace mpdiv
