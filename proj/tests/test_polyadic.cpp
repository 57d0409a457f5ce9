#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "equidist/meanstats.hpp"
#include "equidist/polyadic.hpp"

using namespace equidist;

namespace {

PeriodicList make_periodic(std::vector<Rational> values) {
  PeriodicList p;
  for (auto& v : values) p.values.push_back(UnitValue(std::move(v)));
  return p;
}

SequenceSpec random_spec(std::mt19937_64& eng) {
  switch (eng() % 4) {
    case 0:
      return VanDerCorput{2 + static_cast<long long>(eng() % 3)};
    case 1: {
      PeriodicList p;
      const long long b = 1 + static_cast<long long>(eng() % 8);
      for (long long j = 0; j < b; ++j)
        p.values.push_back(UnitValue(static_cast<double>(eng() % 1001) / 1000.0));
      return p;
    }
    case 2:
      return MultiplicativeAlpha{{2, 3}, 2.0};
    default:
      return Constant{UnitValue(static_cast<double>(eng() % 1001) / 1000.0)};
  }
}

}  // namespace

TEST_CASE("oscillation within residue classes") {
  const SequenceSpec periodic =
      make_periodic({Rational(1, 5), Rational(2, 5), Rational(4, 5)});
  CHECK(oscillation(periodic, 3, 300) == 0.0);

  const SequenceSpec alpha = MultiplicativeAlpha{{2}, 2.0};
  CHECK(oscillation(alpha, 2, 1000) == 0.0);

  const SequenceSpec vdc = VanDerCorput{2};
  for (int k = 1; k <= 8; ++k)
    CHECK(oscillation(vdc, 1LL << k, 1LL << 15) <= std::ldexp(1.0, -k));

  CHECK_THROWS_AS(oscillation(vdc, 100, 50), Error);
}

TEST_CASE("oscillation is monotone under divisibility and in the horizon") {
  std::mt19937_64 eng(101);
  for (int trial = 0; trial < 60; ++trial) {
    const SequenceSpec spec = random_spec(eng);
    const long long m = 1 + static_cast<long long>(eng() % 12);
    const long long mult = 1 + static_cast<long long>(eng() % 4);
    const long long n = m * mult + static_cast<long long>(eng() % 500);
    CHECK(oscillation(spec, m * mult, n) <= oscillation(spec, m, n));
    CHECK(oscillation(spec, m, n) <= oscillation(spec, m, n + 200));
  }
}

TEST_CASE("exception fractions count bad residue classes") {
  // odd class oscillates by 1, even class is constant
  const SequenceSpec mix =
      make_periodic({Rational(0), Rational(1, 2), Rational(1), Rational(1, 2)});
  CHECK(oscillation_exception_fraction(mix, 2, 100, 0.9) == 0.5);
  CHECK(oscillation_exception_fraction(mix, 4, 100, 0.9) == 0.0);
}

TEST_CASE("modulus search returns the least adequate candidate") {
  CHECK(polyadic_modulus_search(Constant{UnitValue(0.3)}, 0.1, {1}, 100) == 1);
  CHECK(polyadic_modulus_search(VanDerCorput{2}, 0.1, {2, 4, 8, 16}, 1 << 12) == 16);
  const SequenceSpec zero_one = make_periodic({Rational(0), Rational(1)});
  CHECK(!polyadic_modulus_search(zero_one, 0.5, {3}, 100).has_value());
  CHECK_THROWS_AS(polyadic_modulus_search(zero_one, 0.5, {}, 100), Error);
}

TEST_CASE("semigroup moduli enumeration") {
  CHECK(semigroup_moduli({2}, 10) == std::vector<long long>{1, 2, 4, 8});
  CHECK(semigroup_moduli({2, 3}, 12) ==
        std::vector<long long>{1, 2, 3, 4, 6, 8, 9, 12});
  CHECK(semigroup_moduli({}, 10) == std::vector<long long>{1});
  CHECK_THROWS_AS(semigroup_moduli({4}, 10), Error);

  // closed under divisors that stay in the semigroup
  const auto s = semigroup_moduli({2, 5}, 200);
  for (long long v : s)
    for (long long d : s)
      if (v % d == 0)
        CHECK(std::find(s.begin(), s.end(), v / d) != s.end());
}

TEST_CASE("uniform limit check flags bound violations") {
  SequenceSystem constant;
  for (int i = 0; i < 4; ++i) constant.levels.push_back(Constant{UnitValue(0.25)});
  for (const auto& row : uniform_limit_check(constant, 3, 100))
    CHECK(row.sup_difference == 0.0);

  SequenceSystem jumpy;
  jumpy.levels.push_back(Constant{UnitValue(0.0)});
  jumpy.levels.push_back(Constant{UnitValue(0.05)});
  jumpy.levels.push_back(Constant{UnitValue(0.5)});
  jumpy.bound_series = std::vector<double>{0.1, 0.1};
  const auto rows = uniform_limit_check(jumpy, 2, 50);
  CHECK(rows[0].within_bound);
  CHECK(!rows[1].within_bound);
  CHECK(rows[1].sup_difference == doctest::Approx(0.45));

  CHECK_THROWS_AS(uniform_limit_check(jumpy, 5, 50), Error);
}

TEST_CASE("divisor chain systems: zero offsets repeat level one") {
  const SequenceSystem sys =
      divisor_chain_system({2, 4, 8}, 1.0, RefinementRule::zero_offsets);
  REQUIRE(sys.levels.size() == 3);
  for (long long n = 1; n <= 64; ++n) {
    const double first = eval_value(sys.levels[0], n);
    CHECK(eval_value(sys.levels[1], n) == first);
    CHECK(eval_value(sys.levels[2], n) == first);
  }
}

TEST_CASE("divisor chain systems: radical-inverse refinement") {
  const SequenceSystem sys = divisor_chain_system({2, 4}, 1.0, RefinementRule::vdc);
  const auto& level2 = std::get<PeriodicList>(sys.levels[1]);
  REQUIRE(level2.values.size() == 4);
  for (long long j = 1; j <= 4; ++j)
    CHECK(*level2.values[static_cast<size_t>(j - 1)].exact() ==
          radical_inverse_exact(j, 2));

  const SequenceSystem chain =
      divisor_chain_system({2, 4, 8, 16, 32}, 1.0, RefinementRule::vdc);
  const auto rows = uniform_limit_check(chain, 4, 1000);
  for (const auto& row : rows) {
    REQUIRE(row.bound.has_value());
    CHECK(row.within_bound);
    CHECK(row.sup_difference <= 1.0 / std::ldexp(1.0, static_cast<int>(row.level)));
  }
}

TEST_CASE("divisor chain systems: exact mean drift bound") {
  const std::vector<long long> chain{2, 4, 8, 16, 32};
  const SequenceSystem sys = divisor_chain_system(chain, 1.0, RefinementRule::vdc);
  for (size_t level = 0; level + 1 < sys.levels.size(); ++level) {
    const Rational drift =
        abs(periodic_mean_exact(std::get<PeriodicList>(sys.levels[level]), Monomial{1}) -
            periodic_mean_exact(std::get<PeriodicList>(sys.levels[level + 1]), Monomial{1}));
    CHECK(drift <= Rational(1, chain[level]));
  }
}

TEST_CASE("divisor chain validation") {
  CHECK_THROWS_AS(divisor_chain_system({2, 3}, 1.0, RefinementRule::vdc), Error);
  CHECK_THROWS_AS(divisor_chain_system({4, 2}, 1.0, RefinementRule::vdc), Error);
  CHECK_THROWS_AS(divisor_chain_system({}, 1.0, RefinementRule::vdc), Error);
  CHECK_THROWS_AS(divisor_chain_system({2, 6}, 1.0, RefinementRule::vdc), Error);
  CHECK_THROWS_AS(divisor_chain_system({2, 4}, 0.0, RefinementRule::vdc), Error);
  // 2 | 6 | 12 is a valid chain for the zero-offset rule
  const SequenceSystem sys =
      divisor_chain_system({2, 6, 12}, 1.0, RefinementRule::zero_offsets);
  CHECK(sys.levels.size() == 3);
}
