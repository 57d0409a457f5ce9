#pragma once

#include <optional>
#include <vector>

#include "equidist/seqcore.hpp"

namespace equidist {

struct OscillationRow {
  long long modulus = 0;
  long long horizon = 0;
  double oscillation = 0.0;
  // Fraction of residue classes whose oscillation is >= epsilon, filled
  // only when a threshold was supplied.
  std::optional<double> exception_fraction;
};

struct OscillationProfile {
  std::vector<OscillationRow> rows;
};

// Indexed family of sequence specs with an optional per-level bound series.
struct SequenceSystem {
  std::vector<SequenceSpec> levels;  // level N = levels[N-1]
  std::optional<std::vector<double>> bound_series;
};

struct UniformLimitRow {
  long long level = 0;
  double sup_difference = 0.0;
  std::optional<double> bound;
  bool within_bound = true;
};

// max over residues r mod m of (max - min of v(n), n <= N, n = r (mod m));
// residue classes empty in the window contribute 0.
double oscillation(const SequenceSpec& spec, long long m, long long N);
double oscillation_exception_fraction(const SequenceSpec& spec, long long m,
                                      long long N, double epsilon);

OscillationProfile oscillation_profile(const SequenceSpec& spec,
                                       const std::vector<long long>& moduli,
                                       const std::vector<long long>& horizons,
                                       std::optional<double> epsilon = {},
                                       int jobs = 1);

// Least candidate modulus with oscillation < epsilon at horizon N, or
// nothing; not finding one is data, not an error.
std::optional<long long> polyadic_modulus_search(
    const SequenceSpec& spec, double epsilon,
    std::vector<long long> candidates, long long N);

// All products of powers of the given primes that are <= bound, sorted;
// includes 1 (the empty product).
std::vector<long long> semigroup_moduli(const std::vector<long long>& primes,
                                        long long bound);

// Row per level L <= depth: sup over n <= horizon of
// |eval(level L, n) - eval(level L+1, n)|, flagged against the bound series
// when present.
std::vector<UniformLimitRow> uniform_limit_check(const SequenceSystem& system,
                                                 long long depth,
                                                 long long horizon);

enum class RefinementRule { zero_offsets, vdc };

// Builds a system of periodic sequences over a divisor chain B_1 | B_2 | ...
// such that values at indices congruent mod B_N differ by at most c/B_N
// between consecutive levels. The vdc rule assigns level-N residue j the
// radical inverse of j in the chain's common power base; zero_offsets
// repeats the level-1 values at every level.
SequenceSystem divisor_chain_system(const std::vector<long long>& chain,
                                    double c, RefinementRule rule);

}  // namespace equidist
