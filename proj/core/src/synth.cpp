#include "mpdiv/synth.hpp"

#include <random>
#include <stdexcept>
#include <unordered_set>

namespace mpdiv {

std::vector<RawLink> scale_free_links(const SynthParams& params) {
  if (params.nodes < 4) {
    throw std::invalid_argument("need at least 4 nodes");
  }
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> burst(params.burst_min, params.burst_max);

  std::vector<RawLink> links;
  // Every edge endpoint is recorded twice over; sampling from this list is
  // sampling proportionally to degree.
  std::vector<AsNumber> endpoints;
  std::unordered_set<std::uint64_t> seen;

  auto pair_key = [](AsNumber a, AsNumber b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
  };
  auto add_link = [&](AsNumber node, AsNumber target) {
    if (!seen.insert(pair_key(node, target)).second) return false;
    RawLink l;
    if (coin(rng) < params.peer_prob) {
      l = {target, node, RawLink::Kind::peer, params.days_seen};
    } else {
      // The established node provides transit to the newcomer.
      l = {target, node, RawLink::Kind::provider_customer, params.days_seen};
    }
    links.push_back(l);
    endpoints.push_back(node);
    endpoints.push_back(target);
    return true;
  };

  // Seed triangle: ASNs start at 1 (0 is reserved for the device node).
  add_link(2, 1);
  add_link(3, 1);
  add_link(3, 2);

  for (AsNumber node = 4; node <= params.nodes; ++node) {
    int want = coin(rng) < params.single_link_prob ? 1 : burst(rng);
    int made = 0;
    int attempts = 0;
    while (made < want && attempts < 200) {
      ++attempts;
      std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
      AsNumber target = endpoints[pick(rng)];
      if (target == node) continue;
      if (add_link(node, target)) ++made;
    }
    if (made == 0) {
      // Degenerate fallback so the graph stays connected.
      add_link(node, node - 1);
    }
  }
  return links;
}

}  // namespace mpdiv
