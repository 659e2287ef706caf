#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bellgap {

using Index = std::size_t;

// Number of tuples over a mixed-radix alphabet.
inline Index tuple_count(std::span<const int> radix) {
  Index n = 1;
  for (int r : radix) n *= static_cast<Index>(r);
  return n;
}

// Flat index of a tuple, first component slowest (row-major).
inline Index flat_index(std::span<const int> tuple, std::span<const int> radix) {
  Index f = 0;
  for (std::size_t i = 0; i < radix.size(); ++i) {
    f = f * static_cast<Index>(radix[i]) + static_cast<Index>(tuple[i]);
  }
  return f;
}

// Inverse of flat_index.
inline void unflatten(Index flat, std::span<const int> radix, std::span<int> out) {
  for (std::size_t i = radix.size(); i-- > 0;) {
    out[i] = static_cast<int>(flat % static_cast<Index>(radix[i]));
    flat /= static_cast<Index>(radix[i]);
  }
}

// Odometer step in flat-index order. Returns false once the tuple wraps
// back to all zeros (i.e. iteration is complete).
inline bool next_tuple(std::span<int> tuple, std::span<const int> radix) {
  for (std::size_t i = radix.size(); i-- > 0;) {
    if (++tuple[i] < radix[i]) return true;
    tuple[i] = 0;
  }
  return false;
}

inline std::vector<int> zero_tuple(std::size_t size) {
  return std::vector<int>(size, 0);
}

}  // namespace bellgap
