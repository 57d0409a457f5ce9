#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "equidist/seqcore.hpp"

namespace equidist {

// Finite-horizon surrogate for a limit: one statistic per horizon plus the
// value it is expected to approach (absent when unknown).
struct ConvergenceTable {
  struct Row {
    long long horizon = 0;
    double statistic = 0.0;
  };
  std::string label;
  std::vector<Row> rows;
  std::optional<double> target;
};

inline constexpr int kMaxMonomialDegree = 8;

struct Monomial {
  int degree = 1;  // 0..kMaxMonomialDegree
};

struct PwlKnot {
  UnitValue x;
  Scalar y;
};

// Piecewise-linear test function on [0,1]; knot abscissas strictly
// increasing, first 0, last 1.
struct PiecewiseLinear {
  std::vector<PwlKnot> knots;
};

using TestFunctionSpec = std::variant<Monomial, PiecewiseLinear>;

void validate(const TestFunctionSpec& g);
double apply(const TestFunctionSpec& g, double x);
Rational apply_exact(const TestFunctionSpec& g, const Rational& x);
// 1/(d+1) for monomials, trapezoid sum over knots for piecewise linear.
Rational exact_integral(const TestFunctionSpec& g);
// Like exact_integral but falls back to a double trapezoid sum when the
// knots are not exact.
double integral_value(const TestFunctionSpec& g);
std::string label(const TestFunctionSpec& g);

// (1/N) sum_{n<=N} g(v(n)), deterministic pairwise summation.
double partial_mean(const SequenceSpec& spec, long long N,
                    const TestFunctionSpec& g);

// (1/B) sum_{j<=B} g(values[j]) exactly; requires exact values and an
// exactly evaluable g.
Rational periodic_mean_exact(const PeriodicList& spec,
                             const TestFunctionSpec& g);

// |{n <= N : v(n) < x}| / N  (strict inequality).
double empirical_cdf(const SequenceSpec& spec, long long N, double x);

double star_discrepancy(std::vector<double> values);
double star_discrepancy(const std::vector<UnitValue>& values);

// max over the grid of |empirical_cdf(N, x) - x| per horizon; target 0.
ConvergenceTable ud_test(const SequenceSpec& spec,
                         const std::vector<long long>& horizons,
                         const std::vector<double>& x_grid, int jobs = 1);

// max over residues r of | |{n <= N : k_n = r (mod m)}| / N - 1/m |.
double ud_in_Z_stat(const IndexSeqSpec& spec, long long m, long long N);
std::vector<ConvergenceTable> ud_in_Z_test(const IndexSeqSpec& spec,
                                           const std::vector<long long>& moduli,
                                           long long N);

// | (1/N) sum g(v(k_n)) - integral of g |; target 0.
ConvergenceTable subsequence_mean_test(const SequenceSpec& v,
                                       const IndexSeqSpec& k,
                                       const TestFunctionSpec& g,
                                       const std::vector<long long>& horizons,
                                       int jobs = 1);

}  // namespace equidist
