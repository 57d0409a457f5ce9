#include "equidist/polyadic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "equidist/numutil.hpp"
#include "equidist/reduce.hpp"

namespace equidist {

namespace {

struct ClassRanges {
  std::vector<double> lo, hi;  // per residue; lo > hi means empty class
};

ClassRanges residue_ranges(const SequenceSpec& spec, long long m, long long N) {
  if (m < 1) throw Error(errc::invalid_spec, "modulus must be >= 1");
  if (N < m) throw Error(errc::invalid_spec, "horizon must be >= the modulus");
  ClassRanges cr;
  cr.lo.assign(static_cast<size_t>(m), std::numeric_limits<double>::infinity());
  cr.hi.assign(static_cast<size_t>(m), -std::numeric_limits<double>::infinity());
  for (long long n = 1; n <= N; ++n) {
    const size_t r = static_cast<size_t>(n % m);
    const double v = eval_value(spec, n);
    cr.lo[r] = std::min(cr.lo[r], v);
    cr.hi[r] = std::max(cr.hi[r], v);
  }
  return cr;
}

}  // namespace

double oscillation(const SequenceSpec& spec, long long m, long long N) {
  const ClassRanges cr = residue_ranges(spec, m, N);
  double worst = 0.0;
  for (size_t r = 0; r < cr.lo.size(); ++r)
    if (cr.lo[r] <= cr.hi[r]) worst = std::max(worst, cr.hi[r] - cr.lo[r]);
  return worst;
}

double oscillation_exception_fraction(const SequenceSpec& spec, long long m,
                                      long long N, double epsilon) {
  const ClassRanges cr = residue_ranges(spec, m, N);
  long long exceptional = 0;
  for (size_t r = 0; r < cr.lo.size(); ++r)
    if (cr.lo[r] <= cr.hi[r] && cr.hi[r] - cr.lo[r] >= epsilon) ++exceptional;
  return static_cast<double>(exceptional) / static_cast<double>(m);
}

OscillationProfile oscillation_profile(const SequenceSpec& spec,
                                       const std::vector<long long>& moduli,
                                       const std::vector<long long>& horizons,
                                       std::optional<double> epsilon, int jobs) {
  if (moduli.empty()) throw Error(errc::empty_input, "empty modulus list");
  if (horizons.empty()) throw Error(errc::empty_input, "empty horizon list");
  OscillationProfile profile;
  profile.rows.resize(moduli.size() * horizons.size());
  parallel_for(static_cast<std::int64_t>(profile.rows.size()), jobs,
               [&](std::int64_t idx) {
                 const long long m = moduli[static_cast<size_t>(idx) / horizons.size()];
                 const long long N = horizons[static_cast<size_t>(idx) % horizons.size()];
                 OscillationRow row;
                 row.modulus = m;
                 row.horizon = N;
                 const ClassRanges cr = residue_ranges(spec, m, N);
                 double worst = 0.0;
                 long long exceptional = 0;
                 for (size_t r = 0; r < cr.lo.size(); ++r) {
                   if (cr.lo[r] > cr.hi[r]) continue;
                   const double osc = cr.hi[r] - cr.lo[r];
                   worst = std::max(worst, osc);
                   if (epsilon && osc >= *epsilon) ++exceptional;
                 }
                 row.oscillation = worst;
                 if (epsilon)
                   row.exception_fraction =
                       static_cast<double>(exceptional) / static_cast<double>(m);
                 profile.rows[static_cast<size_t>(idx)] = row;
               });
  return profile;
}

std::optional<long long> polyadic_modulus_search(
    const SequenceSpec& spec, double epsilon,
    std::vector<long long> candidates, long long N) {
  if (candidates.empty()) throw Error(errc::empty_input, "empty candidate list");
  if (!(epsilon > 0.0)) throw Error(errc::invalid_spec, "epsilon must be > 0");
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  for (long long m : candidates)
    if (oscillation(spec, m, N) < epsilon) return m;
  return std::nullopt;
}

std::vector<long long> semigroup_moduli(const std::vector<long long>& primes,
                                        long long bound) {
  if (bound < 1) throw Error(errc::invalid_spec, "bound must be >= 1");
  for (long long p : primes)
    if (!is_prime(p))
      throw Error(errc::invalid_spec,
                  "semigroup generator " + std::to_string(p) + " is not prime");
  std::vector<long long> gen = primes;
  std::sort(gen.begin(), gen.end());
  gen.erase(std::unique(gen.begin(), gen.end()), gen.end());
  std::vector<long long> out;
  // products in nondecreasing prime order, each smooth number built once
  std::function<void(long long, size_t)> emit = [&](long long v, size_t start) {
    out.push_back(v);
    for (size_t i = start; i < gen.size(); ++i)
      if (v <= bound / gen[i]) emit(v * gen[i], i);
  };
  emit(1, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<UniformLimitRow> uniform_limit_check(const SequenceSystem& system,
                                                 long long depth,
                                                 long long horizon) {
  if (depth < 1) throw Error(errc::invalid_spec, "depth must be >= 1");
  if (static_cast<long long>(system.levels.size()) < depth + 1)
    throw Error(errc::invalid_spec,
                "system needs at least depth+1 levels for a depth-" +
                    std::to_string(depth) + " check");
  if (horizon < 1) throw Error(errc::invalid_spec, "horizon must be >= 1");
  std::vector<UniformLimitRow> rows;
  rows.reserve(static_cast<size_t>(depth));
  for (long long level = 1; level <= depth; ++level) {
    const SequenceSpec& a = system.levels[static_cast<size_t>(level - 1)];
    const SequenceSpec& b = system.levels[static_cast<size_t>(level)];
    double sup = 0.0;
    for (long long n = 1; n <= horizon; ++n)
      sup = std::max(sup, std::fabs(eval_value(a, n) - eval_value(b, n)));
    UniformLimitRow row;
    row.level = level;
    row.sup_difference = sup;
    if (system.bound_series &&
        static_cast<long long>(system.bound_series->size()) >= level) {
      row.bound = (*system.bound_series)[static_cast<size_t>(level - 1)];
      row.within_bound = sup <= *row.bound;
    }
    rows.push_back(row);
  }
  return rows;
}

namespace {

// Smallest b >= 2 such that every chain element is a power of b, or 0.
long long common_power_base(const std::vector<long long>& chain) {
  for (long long b = 2; b <= chain.front(); ++b) {
    bool ok = true;
    for (long long v : chain) {
      long long w = v;
      while (w % b == 0) w /= b;
      if (w != 1) {
        ok = false;
        break;
      }
    }
    if (ok) return b;
  }
  return 0;
}

}  // namespace

SequenceSystem divisor_chain_system(const std::vector<long long>& chain,
                                    double c, RefinementRule rule) {
  if (chain.empty()) throw Error(errc::invalid_chain, "empty divisor chain");
  if (!(c > 0.0)) throw Error(errc::invalid_chain, "bound constant must be > 0");
  for (size_t i = 0; i < chain.size(); ++i) {
    if (chain[i] < 1) throw Error(errc::invalid_chain, "chain entries must be >= 1");
    if (i > 0) {
      if (chain[i] <= chain[i - 1])
        throw Error(errc::invalid_chain, "chain must be strictly increasing");
      if (chain[i] % chain[i - 1] != 0)
        throw Error(errc::invalid_chain,
                    std::to_string(chain[i - 1]) + " does not divide " +
                        std::to_string(chain[i]));
    }
  }

  SequenceSystem system;
  system.bound_series = std::vector<double>();
  for (long long b : chain)
    system.bound_series->push_back(c / static_cast<double>(b));

  if (rule == RefinementRule::vdc) {
    const long long base = common_power_base(chain);
    if (base == 0)
      throw Error(errc::invalid_chain,
                  "vdc refinement needs chain entries that are powers of a common base");
    if (c < 1.0)
      throw Error(errc::invalid_chain,
                  "vdc refinement guarantees the bound only for c >= 1");
    for (long long B : chain) {
      PeriodicList level;
      level.values.reserve(static_cast<size_t>(B));
      for (long long j = 1; j <= B; ++j)
        level.values.push_back(radical_inverse(j, base));
      system.levels.emplace_back(std::move(level));
    }
  } else {
    // Level-1 values repeated at every level: offsets are all zero.
    const long long b1 = chain.front();
    std::vector<UnitValue> seed;
    seed.reserve(static_cast<size_t>(b1));
    for (long long j = 1; j <= b1; ++j)
      seed.push_back(UnitValue(Rational(j - 1, b1)));
    for (long long B : chain) {
      PeriodicList level;
      level.values.reserve(static_cast<size_t>(B));
      for (long long j = 1; j <= B; ++j)
        level.values.push_back(seed[static_cast<size_t>((j - 1) % b1)]);
      system.levels.emplace_back(std::move(level));
    }
  }
  return system;
}

}  // namespace equidist
