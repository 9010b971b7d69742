#pragma once

#include <string>

namespace mpdiv {

// Hex-encoded SHA-256.
std::string sha256_hex(const std::string& data);
std::string sha256_file_hex(const std::string& path);

}  // namespace mpdiv
