#pragma once

#include <charconv>
#include <cstdint>
#include <string>

namespace veisim {

// Shortest round-trip decimal form (std::to_chars); the single number format
// every serialized artifact uses, so identical values always print
// identically.
inline std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

inline std::string format_hex64(std::uint64_t v) {
  char buf[16];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, 16);
  std::string digits(buf, ptr);
  return std::string(16 - digits.size(), '0') + digits;
}

}  // namespace veisim
