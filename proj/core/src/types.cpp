#include "mpdiv/types.hpp"

#include <charconv>

namespace mpdiv {

std::string_view to_string(Relationship r) {
  switch (r) {
    case Relationship::c2p: return "c2p";
    case Relationship::p2c: return "p2c";
    default: return "p2p";
  }
}

Relationship parse_relationship(std::string_view s) {
  if (s == "c2p") return Relationship::c2p;
  if (s == "p2c") return Relationship::p2c;
  if (s == "p2p") return Relationship::p2p;
  throw std::invalid_argument("unknown relationship label: " + std::string(s));
}

std::string_view to_string(AsClass c) {
  switch (c) {
    case AsClass::stub: return "stub";
    case AsClass::edge_provider: return "edge_provider";
    case AsClass::carrier: return "carrier";
    default: return "unknown";
  }
}

AsClass parse_as_class(std::string_view s) {
  if (s == "stub") return AsClass::stub;
  if (s == "edge_provider") return AsClass::edge_provider;
  if (s == "carrier") return AsClass::carrier;
  if (s == "unknown") return AsClass::unknown;
  throw std::invalid_argument("unknown AS class: " + std::string(s));
}

std::string_view to_string(Grammar g) {
  return g == Grammar::single_peer ? "single-peer" : "multi-peer";
}

Grammar parse_grammar(std::string_view s) {
  if (s == "single-peer" || s == "single_peer") return Grammar::single_peer;
  if (s == "multi-peer" || s == "multi_peer") return Grammar::multi_peer;
  throw std::invalid_argument("unknown grammar mode: " + std::string(s));
}

std::string_view to_string(ScanEngine e) {
  return e == ScanEngine::pruned_bfs ? "pruned-bfs" : "exhaustive";
}

ScanEngine parse_engine(std::string_view s) {
  if (s == "pruned-bfs" || s == "pruned_bfs") return ScanEngine::pruned_bfs;
  if (s == "exhaustive") return ScanEngine::exhaustive;
  throw std::invalid_argument("unknown search engine: " + std::string(s));
}

std::string_view to_string(QueueDiscipline q) {
  return q == QueueDiscipline::fifo ? "fifo" : "lifo";
}

QueueDiscipline parse_queue_discipline(std::string_view s) {
  if (s == "fifo") return QueueDiscipline::fifo;
  if (s == "lifo") return QueueDiscipline::lifo;
  throw std::invalid_argument("unknown queue discipline: " + std::string(s));
}

ParseError::ParseError(std::string file, std::size_t line,
                       const std::string& message)
    : std::runtime_error(file + ":" + std::to_string(line) + ": " + message),
      file_(std::move(file)),
      line_(line) {}

AsNumber parse_asn(std::string_view token) {
  std::uint64_t value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw std::invalid_argument("bad ASN token: " + std::string(token));
  }
  if (value == 0 || value > 0xffffffffULL) {
    throw std::invalid_argument("ASN out of range: " + std::string(token));
  }
  return static_cast<AsNumber>(value);
}

bool is_country_code(std::string_view s) {
  return s.size() == 2 && s[0] >= 'A' && s[0] <= 'Z' && s[1] >= 'A' &&
         s[1] <= 'Z';
}

}  // namespace mpdiv
