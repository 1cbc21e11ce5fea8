#pragma once

#include <cstdint>
#include <string>

namespace dkron {

inline constexpr const char* kVersion = "0.1.0";

// FNV-1a, used to stamp reports with a stable hash of their configuration.
inline std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace dkron
