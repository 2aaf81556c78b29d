#pragma once

#include <charconv>
#include <string>

namespace rps {

/// Shortest round-trip decimal form; keeps CSV/JSON output byte-stable.
inline std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace rps
