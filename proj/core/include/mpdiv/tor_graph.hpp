#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mpdiv/ingest.hpp"
#include "mpdiv/types.hpp"

namespace mpdiv {

// One transition of the valley-free automaton. Under single_peer at most one
// p2p hop is accepted; multi_peer also accepts peak --p2p--> peak, i.e. the
// label language c2p* p2p* p2c*.
ValleyState valley_step(ValleyState state, Relationship next, Grammar grammar);

// True iff folding valley_step from uphill never reaches invalid.
// The empty label sequence is valid.
bool validate_path(std::span<const Relationship> labels, Grammar grammar);

// Immutable directed type-of-relationship graph. Nodes are indexed densely in
// ascending ASN order, adjacency rows are sorted by neighbor ASN, and every
// stored edge (u,v,L) has its reverse (v,u,reverse(L)).
class TorGraph {
 public:
  using NodeId = std::uint32_t;
  static constexpr NodeId npos = std::numeric_limits<NodeId>::max();

  struct Edge {
    NodeId to;
    Relationship label;
  };

  TorGraph() = default;

  // Materializes both directed edges per link and attaches country / class
  // metadata. `links` are expected to be stability-filtered already.
  static TorGraph build(const std::vector<RawLink>& links,
                        const CountryMap& countries,
                        const Classification& classes);

  std::size_t node_count() const { return asns_.size(); }
  std::size_t directed_edge_count() const { return edges_.size(); }
  std::size_t undirected_link_count() const { return edges_.size() / 2; }

  NodeId find(AsNumber asn) const {
    auto it = index_.find(asn);
    return it == index_.end() ? npos : it->second;
  }
  bool contains(AsNumber asn) const { return index_.count(asn) != 0; }

  AsNumber asn(NodeId id) const { return asns_[id]; }
  // Empty string when the AS has no country mapping.
  const std::string& country(NodeId id) const { return countries_[id]; }
  AsClass as_class(NodeId id) const { return classes_[id]; }

  std::span<const Edge> neighbors(NodeId id) const {
    return {edges_.data() + offsets_[id],
            edges_.data() + offsets_[id + 1]};
  }
  // Index of the first edge of `id`'s row within the flat edge array.
  std::uint32_t row_offset(NodeId id) const { return offsets_[id]; }

  std::optional<Relationship> edge_label(NodeId u, NodeId v) const;

  // Versioned text snapshot: node table followed by directed edge table.
  void dump(std::ostream& out) const;
  static TorGraph load(std::istream& in,
                       const std::string& name = "snapshot");
  void dump_file(const std::filesystem::path& path) const;
  static TorGraph load_file(const std::filesystem::path& path);

 private:
  void check_symmetry() const;

  std::vector<AsNumber> asns_;          // ascending; index = NodeId
  std::vector<std::string> countries_;  // "" = unmapped
  std::vector<AsClass> classes_;
  std::vector<std::uint32_t> offsets_;  // CSR row offsets, size = nodes + 1
  std::vector<Edge> edges_;
  std::unordered_map<AsNumber, NodeId> index_;
};

}  // namespace mpdiv
