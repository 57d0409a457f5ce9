#include "equidist/partition.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "equidist/numutil.hpp"
#include "equidist/reduce.hpp"

namespace equidist {

namespace {

constexpr long long kMaxBuiltinLevel = 1 << 24;

void require_levels(const PartitionSystem& system,
                    const std::vector<long long>& levels) {
  if (levels.empty()) throw Error(errc::empty_input, "empty level list");
  for (size_t i = 0; i < levels.size(); ++i) {
    if (i > 0 && levels[i] <= levels[i - 1])
      throw Error(errc::invalid_spec, "levels must be strictly increasing");
    if (!system.has_level(levels[i]))
      throw Error(errc::missing_level,
                  "level " + std::to_string(levels[i]) + " unavailable");
  }
}

}  // namespace

PartitionSystem PartitionSystem::equipartition() {
  return PartitionSystem(Kind::equipartition, 1);
}
PartitionSystem PartitionSystem::vdc_prefix() {
  return PartitionSystem(Kind::vdc_prefix, 1);
}
PartitionSystem PartitionSystem::clustered() {
  return PartitionSystem(Kind::clustered, 1);
}
PartitionSystem PartitionSystem::ragged(std::uint64_t seed) {
  return PartitionSystem(Kind::ragged, seed);
}

PartitionSystem PartitionSystem::builtin(const std::string& name,
                                         std::uint64_t seed) {
  if (name == "equipartition") return equipartition();
  if (name == "vdc_prefix") return vdc_prefix();
  if (name == "clustered") return clustered();
  if (name == "ragged") return ragged(seed);
  throw Error(errc::invalid_spec, "unknown builtin partition system '" + name + "'");
}

PartitionSystem PartitionSystem::from_levels(
    std::vector<std::vector<UnitValue>> levels, bool strict) {
  if (levels.empty())
    throw Error(errc::invalid_partition, "system needs at least one level");
  for (size_t li = 0; li < levels.size(); ++li) {
    const auto& v = levels[li];
    if (v.empty())
      throw Error(errc::invalid_partition, "levels must be nonempty");
    for (size_t i = 1; i < v.size(); ++i) {
      if (v[i].value() < v[i - 1].value() ||
          (strict && !(v[i - 1].value() < v[i].value())))
        throw Error(errc::invalid_partition,
                    strict ? "level values must be strictly increasing"
                           : "level values must be nondecreasing");
    }
    if (li > 0) {
      if (levels[li].size() <= levels[li - 1].size())
        throw Error(errc::invalid_partition, "level sizes must be strictly increasing");
      if (levels[li].front().value() > levels[li - 1].front().value())
        throw Error(errc::invalid_partition,
                    "first values must be nonincreasing across levels");
    }
  }
  PartitionSystem s(Kind::explicit_levels, 1);
  s.levels_ = std::move(levels);
  return s;
}

std::string PartitionSystem::name() const {
  switch (kind_) {
    case Kind::equipartition: return "equipartition";
    case Kind::vdc_prefix: return "vdc_prefix";
    case Kind::clustered: return "clustered";
    case Kind::ragged: return "ragged";
    case Kind::explicit_levels: return "explicit";
  }
  return "?";
}

bool PartitionSystem::has_level(long long N) const {
  switch (kind_) {
    case Kind::explicit_levels:
      return N >= 1 && N <= static_cast<long long>(levels_.size());
    case Kind::ragged:
      return N >= 2 && N <= kMaxBuiltinLevel;
    default:
      return N >= 1 && N <= kMaxBuiltinLevel;
  }
}

long long PartitionSystem::level_size(long long N) const {
  if (!has_level(N))
    throw Error(errc::missing_level, "level " + std::to_string(N) + " unavailable");
  switch (kind_) {
    case Kind::explicit_levels:
      return static_cast<long long>(levels_[static_cast<size_t>(N - 1)].size());
    case Kind::ragged:
      return N + (N + 1) / 2;
    default:
      return N;
  }
}

std::vector<UnitValue> PartitionSystem::level(long long N) const {
  if (!has_level(N))
    throw Error(errc::missing_level, "level " + std::to_string(N) + " unavailable");
  std::vector<UnitValue> out;
  switch (kind_) {
    case Kind::equipartition:
      out.reserve(static_cast<size_t>(N));
      for (long long j = 1; j <= N; ++j)
        out.push_back(UnitValue(Rational(j - 1, N)));
      break;
    case Kind::vdc_prefix:
      out.reserve(static_cast<size_t>(N));
      out.push_back(UnitValue(Rational(0)));
      for (long long n = 1; n < N; ++n) out.push_back(radical_inverse(n, 2));
      std::sort(out.begin(), out.end());
      break;
    case Kind::clustered:
      out.reserve(static_cast<size_t>(N));
      for (long long j = 1; j <= N; ++j)
        out.push_back(UnitValue(Rational(j - 1, 2 * N)));
      break;
    case Kind::ragged: {
      std::vector<int> counts(static_cast<size_t>(N), 1);
      counts[1] = 2;
      const long long twos = (N + 1) / 2;
      std::mt19937_64 eng(seed_ + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(N));
      std::vector<long long> pool;
      pool.reserve(static_cast<size_t>(N - 2));
      for (long long i = 2; i < N; ++i) pool.push_back(i);
      for (long long k = 0; k < twos - 1; ++k) {
        const size_t pick =
            static_cast<size_t>(k) +
            static_cast<size_t>(eng() % static_cast<std::uint64_t>(pool.size() - static_cast<size_t>(k)));
        std::swap(pool[static_cast<size_t>(k)], pool[pick]);
        counts[static_cast<size_t>(pool[static_cast<size_t>(k)])] = 2;
      }
      out.reserve(static_cast<size_t>(level_size(N)));
      for (long long i = 0; i < N; ++i) {
        const long long ci = counts[static_cast<size_t>(i)];
        for (long long t = 0; t < ci; ++t)
          out.push_back(UnitValue(Rational(i * ci + t, ci * N)));
      }
      break;
    }
    case Kind::explicit_levels:
      out = levels_[static_cast<size_t>(N - 1)];
      break;
  }
  return out;
}

BlockDecomposition make_cuts(const std::vector<UnitValue>& values,
                             const CutRule& rule) {
  const long long b = static_cast<long long>(values.size());
  if (b == 0) throw Error(errc::invalid_partition, "empty value list");
  BlockDecomposition cuts;
  if (std::holds_alternative<SingletonCuts>(rule)) {
    cuts.cuts.reserve(static_cast<size_t>(b));
    for (long long j = 1; j <= b; ++j) cuts.cuts.push_back(j);
    return cuts;
  }
  if (const auto* every = std::get_if<EveryCth>(&rule)) {
    if (every->c < 1) throw Error(errc::invalid_partition, "cut stride must be >= 1");
    for (long long j = 1; j <= b; j += every->c) cuts.cuts.push_back(j);
    return cuts;
  }
  const auto& dy = std::get<DyadicCuts>(rule);
  long long scale = dy.scale;
  if (scale <= 0) scale = floor_log2(b);
  if (scale > 40) throw Error(errc::invalid_partition, "dyadic cut scale too large");
  cuts.cuts.push_back(1);
  const long long pieces = 1LL << scale;
  for (long long k = 1; k < pieces; ++k) {
    const double x = static_cast<double>(k) / static_cast<double>(pieces);
    const auto it =
        std::lower_bound(values.begin(), values.end(), x,
                         [](const UnitValue& v, double t) { return v.value() < t; });
    if (it == values.end()) break;
    const long long j = static_cast<long long>(it - values.begin()) + 1;
    if (j > cuts.cuts.back()) cuts.cuts.push_back(j);
  }
  return cuts;
}

BlockStats decompose(const std::vector<UnitValue>& values,
                     const BlockDecomposition& cuts) {
  const long long b = static_cast<long long>(values.size());
  if (b == 0) throw Error(errc::invalid_partition, "empty value list");
  for (size_t i = 1; i < values.size(); ++i)
    if (values[i].value() < values[i - 1].value())
      throw Error(errc::invalid_partition, "values must be sorted");
  if (cuts.cuts.empty() || cuts.cuts.front() != 1)
    throw Error(errc::invalid_partition, "first cut must be index 1");
  for (size_t i = 0; i < cuts.cuts.size(); ++i) {
    if (cuts.cuts[i] < 1 || cuts.cuts[i] > b)
      throw Error(errc::invalid_partition, "cut index out of range");
    if (i > 0 && cuts.cuts[i] <= cuts.cuts[i - 1])
      throw Error(errc::invalid_partition, "cuts must be strictly increasing");
  }

  auto gap = [&](long long j_from, const std::optional<long long>& j_to) -> Scalar {
    const UnitValue& lo = values[static_cast<size_t>(j_from - 1)];
    if (j_to) {
      const UnitValue& hi = values[static_cast<size_t>(*j_to - 1)];
      Scalar s(hi.value() - lo.value());
      if (lo.is_exact() && hi.is_exact())
        s = Scalar(*hi.exact() - *lo.exact());
      return s;
    }
    Scalar s(1.0 - lo.value());
    if (lo.is_exact()) s = Scalar(Rational(1) - *lo.exact());
    return s;
  };

  BlockStats stats;
  stats.total = b;
  const size_t k_n = cuts.cuts.size();
  stats.blocks.reserve(k_n);
  for (size_t k = 0; k < k_n; ++k) {
    BlockStats::Block blk;
    const long long from = cuts.cuts[k];
    if (k + 1 < k_n) {
      blk.count = cuts.cuts[k + 1] - from;
      blk.length = gap(from, cuts.cuts[k + 1]);
    } else {
      blk.count = b - from + 1;
      blk.length = gap(from, std::nullopt);
    }
    stats.blocks.push_back(std::move(blk));
  }
  stats.max_count = stats.blocks.front().count;
  stats.min_count = stats.blocks.front().count;
  stats.max_length = stats.blocks.front().length.value;
  stats.min_length = stats.blocks.front().length.value;
  for (const auto& blk : stats.blocks) {
    stats.max_count = std::max(stats.max_count, blk.count);
    stats.min_count = std::min(stats.min_count, blk.count);
    stats.max_length = std::max(stats.max_length, blk.length.value);
    stats.min_length = std::min(stats.min_length, blk.length.value);
    if (blk.length.value == 0.0) ++stats.degenerate_count;
  }
  return stats;
}

BlockUniformityTables block_uniformity_check(const PartitionSystem& system,
                                             const CutRule& rule,
                                             const std::vector<long long>& levels,
                                             int jobs) {
  require_levels(system, levels);
  BlockUniformityTables out;
  out.max_block_length.label = "max_block_length";
  out.max_block_length.target = 0.0;
  out.max_block_length.rows.resize(levels.size());
  out.count_ratio_deviation.label = "count_ratio_deviation";
  out.count_ratio_deviation.target = 0.0;
  out.count_ratio_deviation.rows.resize(levels.size());
  out.degenerate_per_level.resize(levels.size());
  parallel_for(static_cast<std::int64_t>(levels.size()), jobs, [&](std::int64_t i) {
    const long long n = levels[static_cast<size_t>(i)];
    const std::vector<UnitValue> values = system.level(n);
    const BlockStats stats = decompose(values, make_cuts(values, rule));
    double worst_ratio = 0.0;
    for (const auto& blk : stats.blocks) {
      if (blk.length.value == 0.0) continue;
      const double ratio = static_cast<double>(blk.count) /
                           (blk.length.value * static_cast<double>(stats.total));
      worst_ratio = std::max(worst_ratio, std::fabs(ratio - 1.0));
    }
    out.max_block_length.rows[static_cast<size_t>(i)] = {n, stats.max_length};
    out.count_ratio_deviation.rows[static_cast<size_t>(i)] = {n, worst_ratio};
    out.degenerate_per_level[static_cast<size_t>(i)] = stats.degenerate_count;
  });
  return out;
}

ExtremalRatioTables extremal_ratio_check(const PartitionSystem& system,
                                         const CutRule& rule,
                                         const std::vector<long long>& levels,
                                         int jobs) {
  require_levels(system, levels);
  ExtremalRatioTables out;
  out.max_block_length.label = "max_block_length";
  out.max_block_length.target = 0.0;
  out.max_block_length.rows.resize(levels.size());
  out.extremal_ratio.label = "extremal_ratio";
  out.extremal_ratio.target = 1.0;
  out.extremal_ratio.rows.resize(levels.size());
  parallel_for(static_cast<std::int64_t>(levels.size()), jobs, [&](std::int64_t i) {
    const long long n = levels[static_cast<size_t>(i)];
    const std::vector<UnitValue> values = system.level(n);
    const BlockStats stats = decompose(values, make_cuts(values, rule));
    if (stats.min_length == 0.0)
      throw Error(errc::degenerate_block,
                  "zero-length extremal block at level " + std::to_string(n));
    const double ratio =
        (static_cast<double>(stats.max_count) * stats.min_length) /
        (static_cast<double>(stats.min_count) * stats.max_length);
    out.max_block_length.rows[static_cast<size_t>(i)] = {n, stats.max_length};
    out.extremal_ratio.rows[static_cast<size_t>(i)] = {n, ratio};
  });
  return out;
}

ConvergenceTable system_ud_test(const PartitionSystem& system,
                                const std::vector<long long>& levels,
                                const std::vector<double>& x_grid, int jobs) {
  require_levels(system, levels);
  if (x_grid.empty()) throw Error(errc::empty_input, "empty evaluation grid");
  for (double x : x_grid)
    if (!(x >= 0.0 && x <= 1.0))
      throw Error(errc::invalid_spec, "grid point outside [0,1]");
  ConvergenceTable table;
  table.label = "cdf_deviation";
  table.target = 0.0;
  table.rows.resize(levels.size());
  parallel_for(static_cast<std::int64_t>(levels.size()), jobs, [&](std::int64_t i) {
    const long long n = levels[static_cast<size_t>(i)];
    const std::vector<UnitValue> values = system.level(n);
    const double b = static_cast<double>(values.size());
    double worst = 0.0;
    for (double x : x_grid) {
      const auto it =
          std::lower_bound(values.begin(), values.end(), x,
                           [](const UnitValue& v, double t) { return v.value() < t; });
      const double cdf = static_cast<double>(it - values.begin()) / b;
      worst = std::max(worst, std::fabs(cdf - x));
    }
    table.rows[static_cast<size_t>(i)] = {n, worst};
  });
  return table;
}

SequenceSpec periodic_extension(const PartitionSystem& system, long long N) {
  PeriodicList list;
  list.values = system.level(N);
  return SequenceSpec(std::move(list));
}

}  // namespace equidist
