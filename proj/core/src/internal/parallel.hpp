#pragma once

#include <algorithm>
#include <limits>
#include <thread>
#include <vector>

#include "bellgap/multi_index.hpp"

namespace bellgap::internal {

struct Best {
  double value = -std::numeric_limits<double>::infinity();
  Index index = 0;
  bool valid = false;

  // Strict improvement only, so ascending scans keep the lowest index on ties.
  void consider(double v, Index i) {
    if (!valid || v > value) {
      value = v;
      index = i;
      valid = true;
    }
  }
};

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Deterministic parallel argmax over [0, count): the factory builds one
// evaluator per worker (room for scratch buffers), chunks are contiguous,
// and the merge prefers lower indices on equal values, so the winner never
// depends on the thread count.
template <typename Factory>
Best best_over(Index count, int threads, Factory factory) {
  Best best;
  const int t = resolve_threads(threads);
  if (count < 4096 || t <= 1) {
    auto eval = factory();
    for (Index i = 0; i < count; ++i) best.consider(eval(i), i);
    return best;
  }

  const Index chunk = (count + t - 1) / t;
  std::vector<Best> partial(t);
  std::vector<std::thread> workers;
  workers.reserve(t);
  for (int w = 0; w < t; ++w) {
    workers.emplace_back([&, w] {
      auto eval = factory();
      const Index lo = chunk * Index(w);
      const Index hi = std::min(count, lo + chunk);
      for (Index i = lo; i < hi; ++i) partial[w].consider(eval(i), i);
    });
  }
  for (auto& worker : workers) worker.join();
  for (const Best& b : partial) {
    if (b.valid) best.consider(b.value, b.index);
  }
  return best;
}

}  // namespace bellgap::internal
