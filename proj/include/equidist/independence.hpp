#pragma once

#include <string>
#include <vector>

#include "equidist/meanstats.hpp"
#include "equidist/seqcore.hpp"

namespace equidist {

struct IndependenceReport {
  std::vector<long long> horizons;
  std::vector<double> max_gaps;  // per horizon, over all function tuples
  std::vector<std::string> spec_labels;
  std::vector<std::string> function_labels;
};

// | E_N(prod_j g_j(v_j)) - prod_j E_N(g_j(v_j)) |. Pairs are reordered into
// a canonical order before evaluating, so the gap is invariant under
// permuting them; Constant specs factor out exactly.
double independence_gap(const std::vector<SequenceSpec>& specs,
                        const std::vector<TestFunctionSpec>& gs, long long N);

struct CrtMeans {
  Rational product_mean;  // E(v1 v2), enumerated over one full period
  Rational mean1;         // E(v1)
  Rational mean2;         // E(v2)
};

// Exact means for coprime-period periodic sequences; the identity
// E(v1 v2) = E(v1) E(v2) holds exactly for them.
CrtMeans crt_product_mean_exact(const PeriodicList& v1, const PeriodicList& v2);

// Runs independence_gap for every k-tuple of functions from the family and
// reports the max gap per horizon.
IndependenceReport independence_suite(const std::vector<SequenceSpec>& specs,
                                      const std::vector<TestFunctionSpec>& family,
                                      const std::vector<long long>& horizons,
                                      int jobs = 1);

}  // namespace equidist
