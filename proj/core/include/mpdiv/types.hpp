#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mpdiv {

// Public 32-bit AS number. 0 never occurs in datasets and is reserved for
// the synthetic device node attached in front of a provider pair.
using AsNumber = std::uint32_t;

inline constexpr AsNumber kDeviceNode = 0;

// Directed inter-AS link class as seen walking a path.
enum class Relationship : std::uint8_t { c2p, p2c, p2p };

constexpr Relationship reverse(Relationship r) {
  switch (r) {
    case Relationship::c2p: return Relationship::p2c;
    case Relationship::p2c: return Relationship::c2p;
    default: return Relationship::p2p;
  }
}

std::string_view to_string(Relationship r);
Relationship parse_relationship(std::string_view s);

// AS role derived from positions in BGP AS paths. `unknown` marks ASes that
// occur in the link dataset but in no observed path.
enum class AsClass : std::uint8_t { stub, edge_provider, carrier, unknown };

std::string_view to_string(AsClass c);
AsClass parse_as_class(std::string_view s);

// Valley-free automaton state: climb, optionally peer, then descend.
// `invalid` is absorbing.
enum class ValleyState : std::uint8_t { uphill, peak, downhill, invalid };

// Label grammar variants:
//   single_peer: at most one p2p hop per path   (c2p* p2p? p2c*)
//   multi_peer:  repeated p2p hops allowed      (c2p* p2p* p2c*)
enum class Grammar : std::uint8_t { single_peer, multi_peer };

std::string_view to_string(Grammar g);
Grammar parse_grammar(std::string_view s);

// Path search engines:
//   pruned_bfs: single-visit breadth/depth scan with in-flight policy edge
//               removal; cheap, but enumerates only a subset of the valid
//               simple paths.
//   exhaustive: complete bounded-depth simple-path enumeration.
enum class ScanEngine : std::uint8_t { pruned_bfs, exhaustive };

std::string_view to_string(ScanEngine e);
ScanEngine parse_engine(std::string_view s);

// Queue order for pruned_bfs: fifo expands breadth-first, lifo depth-first.
enum class QueueDiscipline : std::uint8_t { fifo, lifo };

std::string_view to_string(QueueDiscipline q);
QueueDiscipline parse_queue_discipline(std::string_view s);

// Raised by dataset loaders; carries the offending file and 1-based line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string file, std::size_t line, const std::string& message);

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

// Parses a decimal ASN token; rejects non-digits, 0 and values over 2^32-1.
AsNumber parse_asn(std::string_view token);

// True for a two-letter uppercase ISO-3166 alpha-2 code.
bool is_country_code(std::string_view s);

}  // namespace mpdiv
