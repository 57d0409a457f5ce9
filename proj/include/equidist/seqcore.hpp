#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "equidist/errors.hpp"
#include "equidist/rational.hpp"

namespace equidist {

class PartitionSystem;  // partition.hpp

// Real value that optionally carries its exact rational form.
struct Scalar {
  double value = 0.0;
  std::optional<Rational> exact;

  Scalar() = default;
  explicit Scalar(double v) : value(v) {}
  explicit Scalar(Rational r) : value(r.to_double()), exact(std::move(r)) {}
  bool is_exact() const { return exact.has_value(); }
};

// Element of [0,1].
class UnitValue {
 public:
  UnitValue() = default;
  explicit UnitValue(double v);
  explicit UnitValue(Rational r);

  double value() const { return s_.value; }
  const std::optional<Rational>& exact() const { return s_.exact; }
  bool is_exact() const { return s_.exact.has_value(); }
  const Rational& exact_or_throw(const char* what) const;
  Scalar scalar() const { return s_; }

  friend bool operator<(const UnitValue& a, const UnitValue& b) {
    return a.value() < b.value();
  }

 private:
  Scalar s_;
};

struct VanDerCorput {
  long long base = 2;  // >= 2
};

struct PeriodicList {
  std::vector<UnitValue> values;  // nonempty; period = values.size()
};

struct MultiplicativeAlpha {
  std::vector<long long> primes;  // distinct primes
  double s = 2.0;                 // > 1
};

struct Constant {
  UnitValue c;
};

// One level of a partition system, extended periodically. The level is
// materialized at construction; evaluation is pure afterwards.
struct PartitionExtension {
  std::shared_ptr<const PartitionSystem> system;
  long long level = 0;
  std::shared_ptr<const std::vector<UnitValue>> values;

  PartitionExtension() = default;
  PartitionExtension(std::shared_ptr<const PartitionSystem> sys, long long lvl);
};

using SequenceSpec = std::variant<VanDerCorput, PeriodicList,
                                  MultiplicativeAlpha, PartitionExtension,
                                  Constant>;

struct IdentityIndex {};

// Permutes positions inside consecutive blocks of fixed length. The output
// is a bijective rearrangement of the positive integers that preserves
// residue frequencies mod every divisor of the block length.
struct BlockShuffle {
  long long modulus = 1;                // block length M >= 1
  std::vector<long long> permutation;   // bijection on {0,...,M-1}
};

using IndexSeqSpec = std::variant<IdentityIndex, BlockShuffle>;

void validate(const SequenceSpec& spec);
void validate(const IndexSeqSpec& spec);

// Digit-reversal map: with n = a_r b^r + ... + a_0, returns
// a_r / b^(r+1) + ... + a_0 / b.
Rational radical_inverse_exact(long long n, long long base);
UnitValue radical_inverse(long long n, long long base);
double radical_inverse_value(long long n, long long base);

// prod over p in primes with p | n of (1 - p^(-s)); empty product = 1.
// Exact only when s is an integer.
UnitValue alpha_eval(long long n, std::vector<long long> primes, double s);
double alpha_eval_value(long long n, const std::vector<long long>& primes,
                        double s);

UnitValue eval(const SequenceSpec& spec, long long n);
double eval_value(const SequenceSpec& spec, long long n);  // fast path
long long index_eval(const IndexSeqSpec& spec, long long n);

std::string label(const SequenceSpec& spec);
std::string label(const IndexSeqSpec& spec);

}  // namespace equidist
