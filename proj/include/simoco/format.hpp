#pragma once

#include <array>
#include <charconv>
#include <string>

namespace simoco {

/// Shortest decimal text that round-trips to the same double.
inline std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

}  // namespace simoco
