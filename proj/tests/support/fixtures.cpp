#include "fixtures.hpp"

#include <random>
#include <stdexcept>

namespace mpdiv::test {

namespace fs = std::filesystem;

std::vector<RawLink> g1_links() {
  return {
      {3, 1, RawLink::Kind::provider_customer, 30},
      {3, 5, RawLink::Kind::provider_customer, 30},
      {4, 2, RawLink::Kind::provider_customer, 30},
      {4, 5, RawLink::Kind::provider_customer, 30},
  };
}

std::vector<RawLink> g2_links() {
  return {
      {3, 1, RawLink::Kind::provider_customer, 30},
      {3, 2, RawLink::Kind::provider_customer, 30},
      {3, 5, RawLink::Kind::provider_customer, 30},
  };
}

std::vector<RawLink> g3_links() {
  return {
      {1, 3, RawLink::Kind::provider_customer, 30},
      {5, 3, RawLink::Kind::provider_customer, 30},
  };
}

TorGraph build_graph(const std::vector<RawLink>& links) {
  return TorGraph::build(links, {}, {});
}

fs::path fixture_dir() { return fs::path(MPDIV_FIXTURE_DIR); }
fs::path data_dir() { return fs::path(MPDIV_DATA_DIR); }

TempDir::TempDir() {
  std::random_device rd;
  std::mt19937_64 rng(rd());
  for (int attempt = 0; attempt < 16; ++attempt) {
    fs::path candidate =
        fs::temp_directory_path() /
        ("mpdiv-test-" + std::to_string(rng() & 0xffffffffULL));
    std::error_code ec;
    if (fs::create_directory(candidate, ec) && !ec) {
      path_ = candidate;
      return;
    }
  }
  throw std::runtime_error("cannot create a temporary directory");
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::string TempDir::str(const std::string& name) const {
  return name.empty() ? path_.string() : (path_ / name).string();
}

}  // namespace mpdiv::test
