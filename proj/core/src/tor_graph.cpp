#include "mpdiv/tor_graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace mpdiv {

ValleyState valley_step(ValleyState state, Relationship next, Grammar grammar) {
  switch (state) {
    case ValleyState::uphill:
      if (next == Relationship::c2p) return ValleyState::uphill;
      if (next == Relationship::p2p) return ValleyState::peak;
      return ValleyState::downhill;
    case ValleyState::peak:
      if (next == Relationship::p2c) return ValleyState::downhill;
      if (next == Relationship::p2p && grammar == Grammar::multi_peer)
        return ValleyState::peak;
      return ValleyState::invalid;
    case ValleyState::downhill:
      return next == Relationship::p2c ? ValleyState::downhill
                                       : ValleyState::invalid;
    case ValleyState::invalid:
    default:
      return ValleyState::invalid;
  }
}

bool validate_path(std::span<const Relationship> labels, Grammar grammar) {
  ValleyState state = ValleyState::uphill;
  for (Relationship label : labels) {
    state = valley_step(state, label, grammar);
    if (state == ValleyState::invalid) return false;
  }
  return true;
}

TorGraph TorGraph::build(const std::vector<RawLink>& links,
                         const CountryMap& countries,
                         const Classification& classes) {
  TorGraph g;

  g.asns_.reserve(links.size());
  for (const RawLink& l : links) {
    if (l.a == l.b) {
      throw std::invalid_argument("self-loop link on AS " +
                                  std::to_string(l.a));
    }
    g.asns_.push_back(l.a);
    g.asns_.push_back(l.b);
  }
  std::sort(g.asns_.begin(), g.asns_.end());
  g.asns_.erase(std::unique(g.asns_.begin(), g.asns_.end()), g.asns_.end());

  const std::size_t n = g.asns_.size();
  g.index_.reserve(n);
  for (NodeId id = 0; id < n; ++id) g.index_.emplace(g.asns_[id], id);

  g.countries_.resize(n);
  g.classes_.assign(n, AsClass::unknown);
  for (NodeId id = 0; id < n; ++id) {
    if (auto it = countries.find(g.asns_[id]); it != countries.end()) {
      g.countries_[id] = it->second;
    }
    if (auto it = classes.find(g.asns_[id]); it != classes.end()) {
      g.classes_[id] = it->second;
    }
  }

  // Both directions per link. Walking provider->customer reads p2c.
  std::vector<std::pair<NodeId, Edge>> directed;
  directed.reserve(links.size() * 2);
  for (const RawLink& l : links) {
    NodeId ia = g.index_.at(l.a);
    NodeId ib = g.index_.at(l.b);
    if (l.kind == RawLink::Kind::provider_customer) {
      directed.push_back({ia, {ib, Relationship::p2c}});
      directed.push_back({ib, {ia, Relationship::c2p}});
    } else {
      directed.push_back({ia, {ib, Relationship::p2p}});
      directed.push_back({ib, {ia, Relationship::p2p}});
    }
  }
  std::sort(directed.begin(), directed.end(),
            [](const auto& x, const auto& y) {
              if (x.first != y.first) return x.first < y.first;
              return x.second.to < y.second.to;
            });

  g.offsets_.assign(n + 1, 0);
  g.edges_.reserve(directed.size());
  for (const auto& [from, edge] : directed) {
    g.offsets_[from + 1]++;
    g.edges_.push_back(edge);
  }
  for (std::size_t i = 1; i <= n; ++i) g.offsets_[i] += g.offsets_[i - 1];

  g.check_symmetry();
  return g;
}

std::optional<Relationship> TorGraph::edge_label(NodeId u, NodeId v) const {
  auto row = neighbors(u);
  auto it = std::lower_bound(
      row.begin(), row.end(), v,
      [](const Edge& e, NodeId target) { return e.to < target; });
  if (it != row.end() && it->to == v) return it->label;
  return std::nullopt;
}

void TorGraph::check_symmetry() const {
  for (NodeId u = 0; u < node_count(); ++u) {
    for (const Edge& e : neighbors(u)) {
      if (e.to == u) {
        throw std::logic_error("self-loop on AS " + std::to_string(asns_[u]));
      }
      auto back = edge_label(e.to, u);
      if (!back || *back != reverse(e.label)) {
        throw std::logic_error("missing reverse edge for " +
                               std::to_string(asns_[u]) + "->" +
                               std::to_string(asns_[e.to]));
      }
    }
  }
}

namespace {
constexpr int kSnapshotVersion = 1;
constexpr const char* kSnapshotMagic = "torgraph";
}  // namespace

void TorGraph::dump(std::ostream& out) const {
  out << kSnapshotMagic << " " << kSnapshotVersion << "\n";
  out << "nodes " << node_count() << "\n";
  for (NodeId id = 0; id < node_count(); ++id) {
    out << asns_[id] << " "
        << (countries_[id].empty() ? std::string("-") : countries_[id]) << " "
        << to_string(classes_[id]) << "\n";
  }
  out << "edges " << directed_edge_count() << "\n";
  for (NodeId id = 0; id < node_count(); ++id) {
    for (const Edge& e : neighbors(id)) {
      out << asns_[id] << " " << asns_[e.to] << " " << to_string(e.label)
          << "\n";
    }
  }
}

TorGraph TorGraph::load(std::istream& in, const std::string& name) {
  std::size_t lineno = 0;
  auto next_line = [&](std::string& line) {
    if (!std::getline(in, line)) {
      throw ParseError(name, lineno, "unexpected end of snapshot");
    }
    ++lineno;
  };

  std::string line;
  next_line(line);
  {
    std::istringstream header(line);
    std::string magic;
    int version = 0;
    if (!(header >> magic >> version) || magic != kSnapshotMagic) {
      throw ParseError(name, lineno, "not a torgraph snapshot");
    }
    if (version != kSnapshotVersion) {
      throw ParseError(name, lineno,
                       "unsupported snapshot version " +
                           std::to_string(version));
    }
  }

  TorGraph g;
  std::size_t n = 0;
  next_line(line);
  {
    std::istringstream hdr(line);
    std::string tag;
    if (!(hdr >> tag >> n) || tag != "nodes") {
      throw ParseError(name, lineno, "expected node table header");
    }
  }
  g.asns_.reserve(n);
  g.countries_.reserve(n);
  g.classes_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    next_line(line);
    std::istringstream row(line);
    std::string asn_token, cc, cls;
    if (!(row >> asn_token >> cc >> cls)) {
      throw ParseError(name, lineno, "bad node row: " + line);
    }
    AsNumber asn;
    try {
      asn = parse_asn(asn_token);
      if (cc != "-" && !is_country_code(cc)) {
        throw std::invalid_argument("malformed country code: " + cc);
      }
      g.classes_.push_back(parse_as_class(cls));
    } catch (const std::invalid_argument& e) {
      throw ParseError(name, lineno, e.what());
    }
    if (!g.asns_.empty() && asn <= g.asns_.back()) {
      throw ParseError(name, lineno, "node table not in ascending ASN order");
    }
    g.asns_.push_back(asn);
    g.countries_.push_back(cc == "-" ? std::string() : cc);
  }
  g.index_.reserve(n);
  for (NodeId id = 0; id < n; ++id) g.index_.emplace(g.asns_[id], id);

  std::size_t m = 0;
  next_line(line);
  {
    std::istringstream hdr(line);
    std::string tag;
    if (!(hdr >> tag >> m) || tag != "edges") {
      throw ParseError(name, lineno, "expected edge table header");
    }
  }
  std::vector<std::pair<NodeId, Edge>> directed;
  directed.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    next_line(line);
    std::istringstream row(line);
    std::string from_token, to_token, label_token;
    if (!(row >> from_token >> to_token >> label_token)) {
      throw ParseError(name, lineno, "bad edge row: " + line);
    }
    try {
      NodeId from = g.find(parse_asn(from_token));
      NodeId to = g.find(parse_asn(to_token));
      if (from == npos || to == npos) {
        throw std::invalid_argument("edge references unknown AS");
      }
      directed.push_back({from, {to, parse_relationship(label_token)}});
    } catch (const std::invalid_argument& e) {
      throw ParseError(name, lineno, e.what());
    }
  }
  std::sort(directed.begin(), directed.end(),
            [](const auto& x, const auto& y) {
              if (x.first != y.first) return x.first < y.first;
              return x.second.to < y.second.to;
            });
  g.offsets_.assign(n + 1, 0);
  g.edges_.reserve(directed.size());
  for (const auto& [from, edge] : directed) {
    g.offsets_[from + 1]++;
    g.edges_.push_back(edge);
  }
  for (std::size_t i = 1; i <= n; ++i) g.offsets_[i] += g.offsets_[i - 1];

  g.check_symmetry();
  return g;
}

void TorGraph::dump_file(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  dump(out);
  out.flush();
  if (!out) {
    throw std::runtime_error("failed writing " + path.string());
  }
}

TorGraph TorGraph::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  return load(in, path.string());
}

}  // namespace mpdiv
