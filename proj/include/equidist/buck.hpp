#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "equidist/meanstats.hpp"
#include "equidist/rational.hpp"

namespace equidist {

// Arithmetic progression r+(m) = {n in N : n = r (mod m)}.
struct ArithProg {
  long long r = 0;
  long long m = 1;  // 0 <= r < m
};

inline bool operator==(const ArithProg& a, const ArithProg& b) {
  return a.r == b.r && a.m == b.m;
}
inline bool prog_less(const ArithProg& a, const ArithProg& b) {
  return a.m != b.m ? a.m < b.m : a.r < b.r;
}

struct Covering {
  std::vector<ArithProg> progressions;  // sorted by (m, r)
  Rational cost;                        // sum of 1/m_j, exact
};

// Finite truncation of a subset of N: membership is exact on {1,...,horizon}
// and undefined beyond.
class SetWindow {
 public:
  SetWindow(long long horizon, std::vector<bool> membership);

  static SetWindow from_predicate(long long horizon,
                                  const std::function<bool(long long)>& pred);
  static SetWindow from_integers(long long horizon,
                                 const std::vector<long long>& elems);
  static SetWindow from_progressions(long long horizon,
                                     const std::vector<ArithProg>& progs);
  // "evens", "squarefree", "primes".
  static SetWindow named_builtin(const std::string& name, long long horizon);

  long long horizon() const { return horizon_; }
  bool contains(long long n) const;  // 1 <= n <= horizon
  long long size() const;            // |A intersect window|
  long long count_prefix(long long N) const;
  SetWindow complement() const;

 private:
  long long horizon_;
  std::vector<bool> bits_;  // bits_[n-1] <-> n in A
};

// "r+(m)" terms joined by '|'; "(m)" is shorthand for 0+(m).
std::vector<ArithProg> parse_progression_union(std::string_view text);

enum class CoverStrategy { greedy, exact };

inline constexpr long long kExactCandidateCap = 4096;
inline constexpr long long kExactNodeCap = 2'000'000;

// |A intersect [1,N]| / N per horizon; target unknown.
ConvergenceTable asymptotic_density_estimate(
    const SetWindow& a, const std::vector<long long>& horizons);

// True iff every member of A within the window lies in some progression.
bool verify_cover(const Covering& c, const SetWindow& a);

// Minimum of sum 1/m_j over window-verified coverings of A drawn from
// progressions with modulus <= modulus_bound. The exact strategy runs a
// branch-and-bound over all candidate progressions and returns the
// lexicographically least cost-optimal covering; greedy picks the
// progression maximizing (newly covered count) * m, then prunes redundant
// picks in reverse order.
std::pair<Rational, Covering> mu_upper_bound(const SetWindow& a,
                                             long long modulus_bound,
                                             CoverStrategy strategy);

// mu_upper_bound(A) + mu_upper_bound(window complement of A) - 1.
Rational measurability_gap(const SetWindow& a, long long modulus_bound);

}  // namespace equidist
