#include "equidist/independence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "equidist/json_io.hpp"
#include "equidist/reduce.hpp"

namespace equidist {

namespace {

struct Pair {
  const SequenceSpec* spec;
  const TestFunctionSpec* g;
  std::string key;
};

// Content-complete canonical ordering so gaps are invariant under
// permuting the (spec, g) pairs.
std::vector<Pair> canonical_pairs(const std::vector<SequenceSpec>& specs,
                                  const std::vector<TestFunctionSpec>& gs) {
  std::vector<Pair> pairs;
  pairs.reserve(specs.size());
  for (size_t i = 0; i < specs.size(); ++i) {
    pairs.push_back({&specs[i], &gs[i],
                     spec_to_json(specs[i]).dump() + "\x01" +
                         function_to_json(gs[i]).dump()});
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const Pair& a, const Pair& b) { return a.key < b.key; });
  return pairs;
}

}  // namespace

double independence_gap(const std::vector<SequenceSpec>& specs,
                        const std::vector<TestFunctionSpec>& gs, long long N) {
  if (specs.size() < 2)
    throw Error(errc::arity, "independence gap needs at least two sequences");
  if (specs.size() != gs.size())
    throw Error(errc::arity, "one test function per sequence required");
  if (N < 1) throw Error(errc::invalid_spec, "horizon must be >= 1");
  for (const auto& s : specs) validate(s);
  for (const auto& g : gs) validate(g);

  const std::vector<Pair> pairs = canonical_pairs(specs, gs);
  double constant_factor = 1.0;
  std::vector<const Pair*> core;
  for (const Pair& p : pairs) {
    if (const auto* c = std::get_if<Constant>(p.spec))
      constant_factor *= apply(*p.g, c->c.value());
    else
      core.push_back(&p);
  }
  // With at most one non-constant factor the identity is degenerate and the
  // gap is exactly zero.
  if (core.size() <= 1) return 0.0;

  const double product_mean =
      pairwise_sum(N,
                   [&](std::int64_t i) {
                     double prod = 1.0;
                     for (const Pair* p : core)
                       prod *= apply(*p->g, eval_value(*p->spec, i + 1));
                     return prod;
                   }) /
      static_cast<double>(N);
  double mean_product = 1.0;
  for (const Pair* p : core) mean_product *= partial_mean(*p->spec, N, *p->g);
  return std::fabs(constant_factor) * std::fabs(product_mean - mean_product);
}

CrtMeans crt_product_mean_exact(const PeriodicList& v1, const PeriodicList& v2) {
  if (v1.values.empty() || v2.values.empty())
    throw Error(errc::invalid_spec, "periodic list must be nonempty");
  const long long m1 = static_cast<long long>(v1.values.size());
  const long long m2 = static_cast<long long>(v2.values.size());
  if (std::gcd(m1, m2) != 1)
    throw Error(errc::coprimality,
                "periods " + std::to_string(m1) + " and " + std::to_string(m2) +
                    " are not coprime");

  std::vector<Rational> x1, x2;
  x1.reserve(static_cast<size_t>(m1));
  x2.reserve(static_cast<size_t>(m2));
  for (const auto& v : v1.values) x1.push_back(v.exact_or_throw("crt mean"));
  for (const auto& v : v2.values) x2.push_back(v.exact_or_throw("crt mean"));

  // E(v1 v2) by direct enumeration of one full period of the product
  // sequence; the factored double sum is what the identity asserts.
  const long long period = m1 * m2;
  Rational product_sum(0);
  for (long long n = 1; n <= period; ++n)
    product_sum += x1[static_cast<size_t>((n - 1) % m1)] *
                   x2[static_cast<size_t>((n - 1) % m2)];

  CrtMeans out;
  out.product_mean = product_sum / Rational(period);
  Rational s1(0), s2(0);
  for (const auto& x : x1) s1 += x;
  for (const auto& x : x2) s2 += x;
  out.mean1 = s1 / Rational(m1);
  out.mean2 = s2 / Rational(m2);
  return out;
}

IndependenceReport independence_suite(const std::vector<SequenceSpec>& specs,
                                      const std::vector<TestFunctionSpec>& family,
                                      const std::vector<long long>& horizons,
                                      int jobs) {
  if (family.empty()) throw Error(errc::empty_input, "empty function family");
  if (specs.size() < 2)
    throw Error(errc::arity, "independence suite needs at least two sequences");
  if (horizons.empty()) throw Error(errc::empty_input, "empty horizon list");
  for (size_t i = 0; i < horizons.size(); ++i)
    if (horizons[i] < 1 || (i > 0 && horizons[i] <= horizons[i - 1]))
      throw Error(errc::invalid_spec, "horizons must be strictly increasing positive integers");

  const size_t k = specs.size();
  size_t tuple_count = 1;
  for (size_t i = 0; i < k; ++i) {
    tuple_count *= family.size();
    if (tuple_count > 100000)
      throw Error(errc::invalid_spec, "function tuple count too large");
  }

  IndependenceReport report;
  report.horizons = horizons;
  report.max_gaps.resize(horizons.size());
  for (const auto& s : specs) report.spec_labels.push_back(label(s));
  for (const auto& g : family) report.function_labels.push_back(label(g));

  parallel_for(static_cast<std::int64_t>(horizons.size()), jobs, [&](std::int64_t hi) {
    const long long n = horizons[static_cast<size_t>(hi)];
    double worst = 0.0;
    std::vector<size_t> digits(k, 0);
    for (size_t t = 0; t < tuple_count; ++t) {
      std::vector<TestFunctionSpec> gs;
      gs.reserve(k);
      for (size_t j = 0; j < k; ++j) gs.push_back(family[digits[j]]);
      worst = std::max(worst, independence_gap(specs, gs, n));
      for (size_t j = 0; j < k; ++j) {
        if (++digits[j] < family.size()) break;
        digits[j] = 0;
      }
    }
    report.max_gaps[static_cast<size_t>(hi)] = worst;
  });
  return report;
}

}  // namespace equidist
