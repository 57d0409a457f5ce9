#pragma once

#include <cstdint>
#include <functional>

namespace equidist {

inline constexpr std::int64_t kPairwiseLeaf = 1024;

namespace detail {

template <class F>
double pairwise_sum_range(std::int64_t lo, std::int64_t hi, F& f) {
  const std::int64_t len = hi - lo;
  if (len <= kPairwiseLeaf) {
    double s = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) s += f(i);
    return s;
  }
  // Split point rounded to a leaf multiple so the tree shape depends only
  // on the range length, never on the caller or worker count.
  const std::int64_t half =
      ((len / 2 + kPairwiseLeaf - 1) / kPairwiseLeaf) * kPairwiseLeaf;
  return pairwise_sum_range(lo, lo + half, f) +
         pairwise_sum_range(lo + half, hi, f);
}

}  // namespace detail

// Deterministic pairwise (tree) sum of f(0), ..., f(n-1).
template <class F>
double pairwise_sum(std::int64_t n, F f) {
  if (n <= 0) return 0.0;
  return detail::pairwise_sum_range(0, n, f);
}

// Runs body(i) for i in [0, n). body(i) must depend on i alone, so the
// result is identical for every worker count.
void parallel_for(std::int64_t n, int jobs,
                  const std::function<void(std::int64_t)>& body);

}  // namespace equidist
