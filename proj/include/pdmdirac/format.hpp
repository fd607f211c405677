#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <string>

namespace pdmdirac {

// Shortest decimal string that round-trips to the same double.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

} // namespace pdmdirac
