#include "doctest.h"

#include <cmath>

#include "equidist/partition.hpp"

using namespace equidist;

namespace {

std::vector<UnitValue> exact_values(std::vector<Rational> values) {
  std::vector<UnitValue> out;
  for (auto& v : values) out.push_back(UnitValue(std::move(v)));
  return out;
}

std::vector<double> dyadic_grid(int size) {
  std::vector<double> grid;
  for (int i = 0; i <= size; ++i)
    grid.push_back(static_cast<double>(i) / static_cast<double>(size));
  return grid;
}

}  // namespace

TEST_CASE("block decomposition lengths and counts") {
  const auto quarters = exact_values(
      {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4)});

  const BlockStats singles = decompose(quarters, {{1, 2, 3, 4}});
  REQUIRE(singles.blocks.size() == 4);
  for (const auto& blk : singles.blocks) {
    CHECK(blk.count == 1);
    CHECK(*blk.length.exact == Rational(1, 4));
  }

  const BlockStats pairs = decompose(quarters, {{1, 3}});
  REQUIRE(pairs.blocks.size() == 2);
  CHECK(pairs.blocks[0].count == 2);
  CHECK(pairs.blocks[1].count == 2);
  CHECK(*pairs.blocks[0].length.exact == Rational(1, 2));
  CHECK(*pairs.blocks[1].length.exact == Rational(1, 2));
  CHECK(pairs.max_count == 2);
  CHECK(pairs.min_count == 2);
  CHECK(pairs.max_length == 0.5);
  CHECK(pairs.min_length == 0.5);

  std::vector<UnitValue> plain{UnitValue(0.1), UnitValue(0.2), UnitValue(0.9)};
  const BlockStats mixed = decompose(plain, {{1, 3}});
  CHECK(mixed.blocks[0].count == 2);
  CHECK(mixed.blocks[1].count == 1);
  CHECK(mixed.blocks[0].length.value == doctest::Approx(0.8));
  CHECK(mixed.blocks[1].length.value == doctest::Approx(0.1));
}

TEST_CASE("decomposition validation") {
  std::vector<UnitValue> unsorted{UnitValue(0.5), UnitValue(0.2)};
  CHECK_THROWS_AS(decompose(unsorted, {{1, 2}}), Error);
  std::vector<UnitValue> ok{UnitValue(0.2), UnitValue(0.5)};
  CHECK_THROWS_AS(decompose(ok, {{2}}), Error);
  CHECK_THROWS_AS(decompose(ok, {{1, 1}}), Error);
  CHECK_THROWS_AS(decompose(ok, {{1, 5}}), Error);
  CHECK_THROWS_AS(decompose({}, {{1}}), Error);
}

TEST_CASE("block lengths telescope to 1 - v(1) exactly") {
  const PartitionSystem vdc = PartitionSystem::vdc_prefix();
  for (long long level : {4LL, 16LL, 64LL}) {
    const auto values = vdc.level(level);
    for (const CutRule& rule :
         {CutRule(SingletonCuts{}), CutRule(DyadicCuts{0}), CutRule(EveryCth{3})}) {
      const BlockStats stats = decompose(values, make_cuts(values, rule));
      Rational total(0);
      long long count = 0;
      for (const auto& blk : stats.blocks) {
        REQUIRE(blk.length.exact.has_value());
        total += *blk.length.exact;
        count += blk.count;
      }
      CHECK(count == static_cast<long long>(values.size()));
      CHECK(total == Rational(1) - *values.front().exact());
    }
  }
}

TEST_CASE("equipartition passes both sufficient conditions exactly") {
  const PartitionSystem equi = PartitionSystem::equipartition();
  const std::vector<long long> levels{16, 64, 256};
  const BlockUniformityTables un =
      block_uniformity_check(equi, SingletonCuts{}, levels);
  const ExtremalRatioTables lim =
      extremal_ratio_check(equi, SingletonCuts{}, levels);
  for (size_t i = 0; i < levels.size(); ++i) {
    CHECK(un.max_block_length.rows[i].statistic ==
          1.0 / static_cast<double>(levels[i]));
    CHECK(un.count_ratio_deviation.rows[i].statistic == 0.0);
    CHECK(un.degenerate_per_level[i] == 0);
    CHECK(lim.max_block_length.rows[i].statistic ==
          1.0 / static_cast<double>(levels[i]));
    CHECK(lim.extremal_ratio.rows[i].statistic == 1.0);
  }
}

TEST_CASE("vdc prefix under dyadic cuts has exact unit count ratios") {
  const PartitionSystem vdc = PartitionSystem::vdc_prefix();
  const std::vector<long long> levels{16, 256, 4096};
  const BlockUniformityTables un = block_uniformity_check(vdc, DyadicCuts{0}, levels);
  for (size_t i = 0; i < levels.size(); ++i) {
    CHECK(un.count_ratio_deviation.rows[i].statistic == 0.0);
    CHECK(un.max_block_length.rows[i].statistic <=
          2.0 / static_cast<double>(levels[i]));
  }
  // coarser dyadic cuts: blocks of equal dyadic length, exact ratio 1
  const BlockUniformityTables coarse =
      block_uniformity_check(vdc, DyadicCuts{3}, {256});
  CHECK(coarse.count_ratio_deviation.rows[0].statistic == 0.0);
  CHECK(coarse.max_block_length.rows[0].statistic == 0.125);

  const ExtremalRatioTables lim = extremal_ratio_check(vdc, DyadicCuts{0}, levels);
  for (const auto& row : lim.extremal_ratio.rows) CHECK(row.statistic == 1.0);
}

TEST_CASE("clustered counterexample fails uniform distribution") {
  const PartitionSystem clustered = PartitionSystem::clustered();
  const std::vector<long long> levels{16, 64, 256};
  const BlockUniformityTables un =
      block_uniformity_check(clustered, EveryCth{1 << 30}, levels);
  for (const auto& row : un.max_block_length.rows) CHECK(row.statistic >= 0.5);
  const ConvergenceTable ud = system_ud_test(clustered, levels, dyadic_grid(64));
  for (const auto& row : ud.rows) CHECK(row.statistic >= 0.25);
}

TEST_CASE("ragged builtin keeps the extremal ratio away from one") {
  const PartitionSystem ragged = PartitionSystem::ragged(7);
  const std::vector<long long> levels{16, 64, 256};
  const ExtremalRatioTables lim = extremal_ratio_check(ragged, DyadicCuts{0}, levels);
  for (const auto& row : lim.extremal_ratio.rows) CHECK(row.statistic == 2.0);
  // seeded: same seed, same levels, identical values
  const auto a = PartitionSystem::ragged(7).level(32);
  const auto b = PartitionSystem::ragged(7).level(32);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].value() == b[i].value());
  const auto c = PartitionSystem::ragged(8).level(32);
  bool differs = c.size() != a.size();
  for (size_t i = 0; !differs && i < a.size(); ++i)
    differs = a[i].value() != c[i].value();
  CHECK(differs);
}

TEST_CASE("counts in {c,2c} with equal lengths give ratio 2") {
  // 8 cells of width 1/8 holding alternately 1 and 2 points
  std::vector<Rational> values;
  for (long long i = 0; i < 8; ++i) {
    if (i % 2 == 0) {
      values.push_back(Rational(i, 8));
    } else {
      values.push_back(Rational(2 * i, 16));
      values.push_back(Rational(2 * i + 1, 16));
    }
  }
  const auto level = exact_values(values);
  const BlockStats stats = decompose(level, make_cuts(level, DyadicCuts{3}));
  REQUIRE(stats.blocks.size() == 8);
  const double ratio =
      (static_cast<double>(stats.max_count) * stats.min_length) /
      (static_cast<double>(stats.min_count) * stats.max_length);
  CHECK(ratio == 2.0);
}

TEST_CASE("system ud statistic matches star discrepancy up to 1/B") {
  const PartitionSystem vdc = PartitionSystem::vdc_prefix();
  for (long long level : {32LL, 128LL, 512LL}) {
    const auto values = vdc.level(level);
    const double dstar = star_discrepancy(values);
    // grid at all sample points plus endpoints
    std::vector<double> grid{0.0, 1.0};
    for (const auto& v : values) grid.push_back(v.value());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    const ConvergenceTable ud = system_ud_test(vdc, {level}, grid);
    CHECK(std::fabs(ud.rows[0].statistic - dstar) <=
          1.0 / static_cast<double>(level));
  }
}

TEST_CASE("degenerate blocks are excluded from ratios and reported") {
  const auto level = exact_values({Rational(0), Rational(1, 4), Rational(1, 4),
                                   Rational(1, 2), Rational(3, 4)});
  const BlockStats stats = decompose(level, {{1, 2, 3, 4, 5}});
  CHECK(stats.degenerate_count == 1);

  const PartitionSystem sys = PartitionSystem::from_levels(
      {exact_values({Rational(0), Rational(1, 4), Rational(1, 4)}),
       exact_values({Rational(0), Rational(1, 4), Rational(1, 4), Rational(1, 2)})});
  const BlockUniformityTables un =
      block_uniformity_check(sys, SingletonCuts{}, {1, 2});
  CHECK(un.degenerate_per_level[0] == 1);
  CHECK_THROWS_AS(extremal_ratio_check(sys, SingletonCuts{}, {1, 2}), Error);
}

TEST_CASE("periodic extension matches the level values") {
  const PartitionSystem sys = PartitionSystem::from_levels(
      {exact_values({Rational(1, 5)}),
       exact_values({Rational(1, 5), Rational(2, 5), Rational(9, 10)})});
  const SequenceSpec ext = periodic_extension(sys, 2);
  CHECK(eval_value(ext, 5) == 0.4);
  CHECK(eval_value(ext, 3) == 0.9);
  CHECK(eval_value(ext, 7) == eval_value(ext, 4));
  CHECK_THROWS_AS(periodic_extension(sys, 3), Error);

  const PartitionSystem equi = PartitionSystem::equipartition();
  const SequenceSpec level2 = periodic_extension(equi, 2);
  CHECK(eval_value(level2, 3) == 0.0);

  // whole-period partial mean agrees with the exact periodic mean
  const auto& plist = std::get<PeriodicList>(level2);
  const Rational exact = periodic_mean_exact(plist, Monomial{1});
  CHECK(partial_mean(level2, 4, Monomial{1}) ==
        doctest::Approx(exact.to_double()).epsilon(1e-15));
}

TEST_CASE("explicit system validation") {
  CHECK_THROWS_AS(PartitionSystem::from_levels({}), Error);
  CHECK_THROWS_AS(
      PartitionSystem::from_levels({exact_values({Rational(1, 2), Rational(1, 4)})}),
      Error);
  // sizes must grow strictly
  CHECK_THROWS_AS(
      PartitionSystem::from_levels({exact_values({Rational(0), Rational(1, 2)}),
                                    exact_values({Rational(0), Rational(1, 2)})}),
      Error);
  // first values must not increase across levels
  CHECK_THROWS_AS(
      PartitionSystem::from_levels({exact_values({Rational(0)}),
                                    exact_values({Rational(1, 4), Rational(1, 2)})}),
      Error);
  // strict flag rejects repeated values
  CHECK_THROWS_AS(
      PartitionSystem::from_levels(
          {exact_values({Rational(1, 4), Rational(1, 4), Rational(1, 2)})}, true),
      Error);
  CHECK_THROWS_AS(PartitionSystem::builtin("mystery"), Error);
  CHECK_THROWS_AS(PartitionSystem::equipartition().level(0), Error);
}

TEST_CASE("builtin level metadata") {
  const PartitionSystem equi = PartitionSystem::equipartition();
  CHECK(equi.level_size(10) == 10);
  CHECK(equi.level(10).size() == 10);
  const PartitionSystem ragged = PartitionSystem::ragged(1);
  CHECK(ragged.level_size(10) ==
        static_cast<long long>(ragged.level(10).size()));
  CHECK(!ragged.has_level(1));
  long long prev = 0;
  for (long long n = 2; n <= 40; ++n) {
    CHECK(ragged.level_size(n) > prev);
    prev = ragged.level_size(n);
  }
}
