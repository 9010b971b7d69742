#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mpdiv/ingest.hpp"
#include "mpdiv/tor_graph.hpp"

namespace mpdiv::test {

// Micro-topologies used across the suites (P1=1, P2=2, transits 3/4, dest 5).

// Disjoint transit:  1 -> 3 -> 5  and  2 -> 4 -> 5.
std::vector<RawLink> g1_links();
// Shared transit: both providers sit behind AS 3.
std::vector<RawLink> g2_links();
// Valley: 1 is 3's provider and so is 5, so 1->3->5 would need p2c then c2p.
std::vector<RawLink> g3_links();

TorGraph build_graph(const std::vector<RawLink>& links);

std::filesystem::path fixture_dir();
std::filesystem::path data_dir();

class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string str(const std::string& name = "") const;

 private:
  std::filesystem::path path_;
};

}  // namespace mpdiv::test
