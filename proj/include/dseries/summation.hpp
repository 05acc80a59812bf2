#pragma once

#include <atomic>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <thread>
#include <vector>

namespace dseries {

/// Kahan-compensated accumulator. Works for double and std::complex<double>.
template <typename T>
struct Compensated {
  T sum{};
  T comp{};

  void add(T value) {
    const T y = value - comp;
    const T t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }

  Compensated& operator+=(T value) {
    add(value);
    return *this;
  }

  /// Merge another accumulator; the carried compensation terms are folded in too.
  void merge(const Compensated& other) {
    add(other.sum);
    add(-other.comp);
  }

  T value() const { return sum - comp; }
};

using KahanSum = Compensated<double>;
using ComplexKahanSum = Compensated<std::complex<double>>;

/// Pairwise reduction in a fixed tree shape: the result depends only on the
/// order of `parts`, never on how they were produced.
template <typename T>
T tree_reduce(std::span<const T> parts) {
  if (parts.empty()) return T{};
  std::vector<T> level(parts.begin(), parts.end());
  while (level.size() > 1) {
    std::vector<T> next;
    next.reserve((level.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
      T merged = level[i];
      merged.merge(level[i + 1]);
      next.push_back(merged);
    }
    if (level.size() % 2 == 1) next.push_back(level.back());
    level.swap(next);
  }
  return level.front();
}

/// Worker count from DSERIES_WORKERS, falling back to the hardware count.
unsigned default_workers();

/// Runs task(i, worker) for i in [0, count) on up to `workers` threads.
/// Tasks write only to their own slot i; `worker` indexes per-thread scratch.
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t, unsigned)>& task);

}  // namespace dseries
