#pragma once

#include <cstdint>
#include <vector>

namespace patmine::detail {

inline void put_varint(std::vector<std::uint8_t>& out, std::uint64_t value) {
  while (value >= 0x80) {
    out.push_back(static_cast<std::uint8_t>(value | 0x80));
    value >>= 7;
  }
  out.push_back(static_cast<std::uint8_t>(value));
}

inline std::uint64_t get_varint(const std::uint8_t*& p) {
  std::uint64_t value = 0;
  int shift = 0;
  for (;;) {
    std::uint8_t byte = *p++;
    value |= static_cast<std::uint64_t>(byte & 0x7f) << shift;
    if (!(byte & 0x80)) return value;
    shift += 7;
  }
}

}  // namespace patmine::detail
