#include "equidist/meanstats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "equidist/reduce.hpp"

namespace equidist {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_horizon(long long n) {
  if (n < 1) throw Error(errc::invalid_spec, "horizon must be >= 1");
}

void require_increasing(const std::vector<long long>& horizons) {
  if (horizons.empty()) throw Error(errc::empty_input, "empty horizon list");
  for (size_t i = 0; i < horizons.size(); ++i) {
    if (horizons[i] < 1 || (i > 0 && horizons[i] <= horizons[i - 1]))
      throw Error(errc::invalid_spec, "horizons must be strictly increasing positive integers");
  }
}

}  // namespace

void validate(const TestFunctionSpec& g) {
  std::visit(
      overloaded{
          [](const Monomial& m) {
            if (m.degree < 0 || m.degree > kMaxMonomialDegree)
              throw Error(errc::invalid_spec,
                          "monomial degree must be in 0.." +
                              std::to_string(kMaxMonomialDegree));
          },
          [](const PiecewiseLinear& p) {
            if (p.knots.size() < 2)
              throw Error(errc::invalid_spec, "piecewise linear needs >= 2 knots");
            for (size_t i = 1; i < p.knots.size(); ++i)
              if (!(p.knots[i - 1].x.value() < p.knots[i].x.value()))
                throw Error(errc::invalid_spec, "piecewise linear knots must be strictly increasing");
            if (p.knots.front().x.value() != 0.0 || p.knots.back().x.value() != 1.0)
              throw Error(errc::invalid_spec, "piecewise linear knots must span [0,1]");
            for (const auto& k : p.knots)
              if (!std::isfinite(k.y.value))
                throw Error(errc::invalid_spec, "piecewise linear knot value must be finite");
          },
      },
      g);
}

double apply(const TestFunctionSpec& g, double x) {
  return std::visit(
      overloaded{
          [&](const Monomial& m) {
            double r = 1.0;
            for (int i = 0; i < m.degree; ++i) r *= x;
            return r;
          },
          [&](const PiecewiseLinear& p) {
            const auto& ks = p.knots;
            size_t hi = 1;
            while (hi + 1 < ks.size() && ks[hi].x.value() < x) ++hi;
            const double x0 = ks[hi - 1].x.value();
            const double x1 = ks[hi].x.value();
            const double y0 = ks[hi - 1].y.value;
            const double y1 = ks[hi].y.value;
            return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
          },
      },
      g);
}

Rational apply_exact(const TestFunctionSpec& g, const Rational& x) {
  return std::visit(
      overloaded{
          [&](const Monomial& m) { return pow(x, m.degree); },
          [&](const PiecewiseLinear& p) {
            const auto& ks = p.knots;
            size_t hi = 1;
            auto knot_x = [&](size_t i) -> const Rational& {
              if (!ks[i].x.is_exact())
                throw Error(errc::exactness_unavailable,
                            "piecewise linear knot abscissa is not exact");
              return *ks[i].x.exact();
            };
            auto knot_y = [&](size_t i) -> const Rational& {
              if (!ks[i].y.exact)
                throw Error(errc::exactness_unavailable,
                            "piecewise linear knot value is not exact");
              return *ks[i].y.exact;
            };
            while (hi + 1 < ks.size() && knot_x(hi) < x) ++hi;
            const Rational& x0 = knot_x(hi - 1);
            const Rational& x1 = knot_x(hi);
            const Rational& y0 = knot_y(hi - 1);
            const Rational& y1 = knot_y(hi);
            return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
          },
      },
      g);
}

Rational exact_integral(const TestFunctionSpec& g) {
  return std::visit(
      overloaded{
          [](const Monomial& m) { return Rational(1, m.degree + 1); },
          [](const PiecewiseLinear& p) {
            Rational sum(0);
            for (size_t i = 1; i < p.knots.size(); ++i) {
              if (!p.knots[i - 1].x.is_exact() || !p.knots[i].x.is_exact() ||
                  !p.knots[i - 1].y.exact || !p.knots[i].y.exact)
                throw Error(errc::exactness_unavailable,
                            "piecewise linear integral needs exact knots");
              const Rational dx = *p.knots[i].x.exact() - *p.knots[i - 1].x.exact();
              sum += dx * (*p.knots[i - 1].y.exact + *p.knots[i].y.exact) / Rational(2);
            }
            return sum;
          },
      },
      g);
}

double integral_value(const TestFunctionSpec& g) {
  try {
    return exact_integral(g).to_double();
  } catch (const Error& e) {
    if (e.code() != errc::exactness_unavailable) throw;
  }
  const auto& p = std::get<PiecewiseLinear>(g);
  double sum = 0.0;
  for (size_t i = 1; i < p.knots.size(); ++i) {
    const double dx = p.knots[i].x.value() - p.knots[i - 1].x.value();
    sum += dx * (p.knots[i - 1].y.value + p.knots[i].y.value) / 2.0;
  }
  return sum;
}

std::string label(const TestFunctionSpec& g) {
  return std::visit(
      overloaded{
          [](const Monomial& m) { return "x^" + std::to_string(m.degree); },
          [](const PiecewiseLinear& p) {
            return "pwl(" + std::to_string(p.knots.size()) + " knots)";
          },
      },
      g);
}

double partial_mean(const SequenceSpec& spec, long long N,
                    const TestFunctionSpec& g) {
  require_horizon(N);
  const double sum =
      pairwise_sum(N, [&](std::int64_t i) { return apply(g, eval_value(spec, i + 1)); });
  return sum / static_cast<double>(N);
}

Rational periodic_mean_exact(const PeriodicList& spec,
                             const TestFunctionSpec& g) {
  if (spec.values.empty())
    throw Error(errc::invalid_spec, "periodic list must be nonempty");
  Rational sum(0);
  for (const UnitValue& v : spec.values)
    sum += apply_exact(g, v.exact_or_throw("periodic mean"));
  return sum / Rational(static_cast<long long>(spec.values.size()));
}

double empirical_cdf(const SequenceSpec& spec, long long N, double x) {
  require_horizon(N);
  long long count = 0;
  for (long long n = 1; n <= N; ++n)
    if (eval_value(spec, n) < x) ++count;
  return static_cast<double>(count) / static_cast<double>(N);
}

double star_discrepancy(std::vector<double> values) {
  if (values.empty()) throw Error(errc::empty_input, "star discrepancy of empty list");
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (size_t i = 0; i < values.size(); ++i) {
    const double up = static_cast<double>(i + 1) / n - values[i];
    const double down = values[i] - static_cast<double>(i) / n;
    d = std::max(d, std::max(up, down));
  }
  return d;
}

double star_discrepancy(const std::vector<UnitValue>& values) {
  std::vector<double> v;
  v.reserve(values.size());
  for (const auto& u : values) v.push_back(u.value());
  return star_discrepancy(std::move(v));
}

ConvergenceTable ud_test(const SequenceSpec& spec,
                         const std::vector<long long>& horizons,
                         const std::vector<double>& x_grid, int jobs) {
  require_increasing(horizons);
  if (x_grid.empty()) throw Error(errc::empty_input, "empty evaluation grid");
  for (double x : x_grid)
    if (!(x >= 0.0 && x <= 1.0))
      throw Error(errc::invalid_spec, "grid point outside [0,1]");

  const long long max_n = horizons.back();
  std::vector<double> evals(static_cast<size_t>(max_n));
  for (long long n = 1; n <= max_n; ++n)
    evals[static_cast<size_t>(n - 1)] = eval_value(spec, n);

  ConvergenceTable table;
  table.label = "cdf_deviation";
  table.target = 0.0;
  table.rows.resize(horizons.size());
  parallel_for(static_cast<std::int64_t>(horizons.size()), jobs, [&](std::int64_t i) {
    const long long n = horizons[static_cast<size_t>(i)];
    std::vector<double> prefix(evals.begin(), evals.begin() + n);
    std::sort(prefix.begin(), prefix.end());
    double worst = 0.0;
    for (double x : x_grid) {
      const auto it = std::lower_bound(prefix.begin(), prefix.end(), x);
      const double cdf =
          static_cast<double>(it - prefix.begin()) / static_cast<double>(n);
      worst = std::max(worst, std::fabs(cdf - x));
    }
    table.rows[static_cast<size_t>(i)] = {n, worst};
  });
  return table;
}

double ud_in_Z_stat(const IndexSeqSpec& spec, long long m, long long N) {
  require_horizon(N);
  if (m < 1) throw Error(errc::invalid_spec, "modulus must be >= 1");
  if (N < m) throw Error(errc::invalid_spec, "horizon must be >= the modulus");
  std::vector<long long> counts(static_cast<size_t>(m), 0);
  for (long long n = 1; n <= N; ++n)
    ++counts[static_cast<size_t>(index_eval(spec, n) % m)];
  double worst = 0.0;
  const double ideal = 1.0 / static_cast<double>(m);
  for (long long c : counts)
    worst = std::max(worst,
                     std::fabs(static_cast<double>(c) / static_cast<double>(N) - ideal));
  return worst;
}

std::vector<ConvergenceTable> ud_in_Z_test(const IndexSeqSpec& spec,
                                           const std::vector<long long>& moduli,
                                           long long N) {
  if (moduli.empty()) throw Error(errc::empty_input, "empty modulus list");
  std::vector<ConvergenceTable> tables;
  tables.reserve(moduli.size());
  for (long long m : moduli) {
    ConvergenceTable t;
    t.label = "m=" + std::to_string(m);
    t.target = 0.0;
    t.rows.push_back({N, ud_in_Z_stat(spec, m, N)});
    tables.push_back(std::move(t));
  }
  return tables;
}

ConvergenceTable subsequence_mean_test(const SequenceSpec& v,
                                       const IndexSeqSpec& k,
                                       const TestFunctionSpec& g,
                                       const std::vector<long long>& horizons,
                                       int jobs) {
  require_increasing(horizons);
  const double integral = integral_value(g);
  ConvergenceTable table;
  table.label = "subsequence_mean_gap(" + label(g) +
                ",integral=" + std::to_string(integral) + ")";
  table.target = 0.0;
  table.rows.resize(horizons.size());
  parallel_for(static_cast<std::int64_t>(horizons.size()), jobs, [&](std::int64_t i) {
    const long long n = horizons[static_cast<size_t>(i)];
    const double sum = pairwise_sum(n, [&](std::int64_t j) {
      return apply(g, eval_value(v, index_eval(k, j + 1)));
    });
    table.rows[static_cast<size_t>(i)] = {
        n, std::fabs(sum / static_cast<double>(n) - integral)};
  });
  return table;
}

}  // namespace equidist
