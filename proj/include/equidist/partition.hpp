#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "equidist/meanstats.hpp"
#include "equidist/seqcore.hpp"

namespace equidist {

// Indexed family of sorted finite sequences V_N in [0,1] with sizes B_N.
// Builtins generate any level on demand; explicit systems carry their
// levels verbatim. Level access is pure: values are recomputed per call.
class PartitionSystem {
 public:
  enum class Kind { equipartition, vdc_prefix, clustered, ragged, explicit_levels };

  // equipartition: (j-1)/N. vdc_prefix: sorted first N base-2 radical
  // inverse values (indices 0..N-1, so the level is the full dyadic grid
  // when N is a power of two). clustered: (j-1)/(2N), all mass in [0,1/2).
  // ragged: N equal-width cells holding 1 or 2 evenly spaced points each,
  // seeded placement, exactly ceil(N/2) double cells.
  static PartitionSystem equipartition();
  static PartitionSystem vdc_prefix();
  static PartitionSystem clustered();
  static PartitionSystem ragged(std::uint64_t seed);
  static PartitionSystem builtin(const std::string& name, std::uint64_t seed = 1);
  static PartitionSystem from_levels(std::vector<std::vector<UnitValue>> levels,
                                     bool strict = false);

  Kind kind() const { return kind_; }
  std::string name() const;
  std::uint64_t seed() const { return seed_; }
  const std::vector<std::vector<UnitValue>>& explicit_levels() const {
    return levels_;
  }

  bool has_level(long long N) const;
  long long level_size(long long N) const;        // B_N
  std::vector<UnitValue> level(long long N) const;  // sorted

 private:
  PartitionSystem(Kind k, std::uint64_t seed) : kind_(k), seed_(seed) {}
  Kind kind_;
  std::uint64_t seed_ = 1;
  std::vector<std::vector<UnitValue>> levels_;  // explicit only
};

// Cut indices 1 = j_1 < j_2 < ... <= B_N.
struct BlockDecomposition {
  std::vector<long long> cuts;
};

struct BlockStats {
  struct Block {
    long long count = 0;   // |V(k,N)|
    Scalar length;         // l(k,N)
  };
  std::vector<Block> blocks;
  long long total = 0;            // B_N
  long long max_count = 0;        // M_N
  long long min_count = 0;        // m_N
  double max_length = 0.0;        // L_N
  double min_length = 0.0;        // smallest l(k,N)
  long long degenerate_count = 0;  // blocks with zero length
};

struct SingletonCuts {};
// Cuts where the values first reach k/2^scale; scale <= 0 picks the largest
// scale with 2^scale <= B_N.
struct DyadicCuts {
  long long scale = 0;
};
struct EveryCth {
  long long c = 1;
};
using CutRule = std::variant<SingletonCuts, DyadicCuts, EveryCth>;

BlockDecomposition make_cuts(const std::vector<UnitValue>& values,
                             const CutRule& rule);

// Block k holds the consecutive elements from cut j_k to j_{k+1}-1; lengths
// are value gaps between cuts, the terminal length is 1 - v(j_last).
BlockStats decompose(const std::vector<UnitValue>& values,
                     const BlockDecomposition& cuts);

// Per level: max block length (target 0) and the worst deviation of
// |V(k,N)| / (l(k,N) B_N) from 1 (target 0); zero-length blocks are
// excluded from the ratio and counted separately.
struct BlockUniformityTables {
  ConvergenceTable max_block_length;
  ConvergenceTable count_ratio_deviation;
  std::vector<long long> degenerate_per_level;
};
BlockUniformityTables block_uniformity_check(const PartitionSystem& system,
                                             const CutRule& rule,
                                             const std::vector<long long>& levels,
                                             int jobs = 1);

// Per level: L_N (target 0) and M_N l_N / (m_N L_N) (target 1).
struct ExtremalRatioTables {
  ConvergenceTable max_block_length;
  ConvergenceTable extremal_ratio;
};
ExtremalRatioTables extremal_ratio_check(const PartitionSystem& system,
                                         const CutRule& rule,
                                         const std::vector<long long>& levels,
                                         int jobs = 1);

// Per level: max over grid of | |{n <= B_N : v_N(n) < x}| / B_N - x |.
ConvergenceTable system_ud_test(const PartitionSystem& system,
                                const std::vector<long long>& levels,
                                const std::vector<double>& x_grid,
                                int jobs = 1);

// PeriodicList with the level's values in order, period B_N.
SequenceSpec periodic_extension(const PartitionSystem& system, long long N);

}  // namespace equidist
