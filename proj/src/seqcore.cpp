#include "equidist/seqcore.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "equidist/numutil.hpp"
#include "equidist/partition.hpp"

namespace equidist {

using boost::multiprecision::cpp_int;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_index(long long n) {
  if (n < 1) throw Error(errc::invalid_spec, "sequence index must be >= 1");
}

}  // namespace

UnitValue::UnitValue(double v) : s_(v) {
  if (!(v >= 0.0 && v <= 1.0))
    throw Error(errc::invalid_spec, "unit value outside [0,1]");
}

UnitValue::UnitValue(Rational r) {
  if (r < Rational(0) || r > Rational(1))
    throw Error(errc::invalid_spec, "unit value outside [0,1]");
  s_ = Scalar(std::move(r));
}

const Rational& UnitValue::exact_or_throw(const char* what) const {
  if (!s_.exact)
    throw Error(errc::exactness_unavailable, std::string(what) + ": value has no exact form");
  return *s_.exact;
}

PartitionExtension::PartitionExtension(
    std::shared_ptr<const PartitionSystem> sys, long long lvl)
    : system(std::move(sys)), level(lvl) {
  if (!system) throw Error(errc::invalid_spec, "partition extension without system");
  values = std::make_shared<const std::vector<UnitValue>>(system->level(level));
}

void validate(const SequenceSpec& spec) {
  std::visit(
      overloaded{
          [](const VanDerCorput& v) {
            if (v.base < 2)
              throw Error(errc::invalid_spec, "van der Corput base must be >= 2");
          },
          [](const PeriodicList& p) {
            if (p.values.empty())
              throw Error(errc::invalid_spec, "periodic list must be nonempty");
          },
          [](const MultiplicativeAlpha& a) {
            if (!(a.s > 1.0))
              throw Error(errc::invalid_spec, "alpha exponent must be > 1");
            for (long long p : a.primes)
              if (!is_prime(p))
                throw Error(errc::invalid_spec,
                            "alpha prime set contains non-prime " + std::to_string(p));
            for (size_t i = 1; i < a.primes.size(); ++i)
              if (a.primes[i - 1] >= a.primes[i])
                throw Error(errc::invalid_spec,
                            "alpha prime set must be sorted and distinct");
          },
          [](const PartitionExtension& pe) {
            if (!pe.system || !pe.values || pe.values->empty())
              throw Error(errc::invalid_spec, "partition extension not materialized");
          },
          [](const Constant&) {},
      },
      spec);
}

void validate(const IndexSeqSpec& spec) {
  std::visit(overloaded{
                 [](const IdentityIndex&) {},
                 [](const BlockShuffle& b) {
                   if (b.modulus < 1)
                     throw Error(errc::invalid_spec, "block length must be >= 1");
                   if (static_cast<long long>(b.permutation.size()) != b.modulus)
                     throw Error(errc::invalid_spec,
                                 "permutation size must equal the block length");
                   std::vector<bool> seen(static_cast<size_t>(b.modulus), false);
                   for (long long v : b.permutation) {
                     if (v < 0 || v >= b.modulus || seen[static_cast<size_t>(v)])
                       throw Error(errc::invalid_spec,
                                   "permutation must be a bijection on {0,...,M-1}");
                     seen[static_cast<size_t>(v)] = true;
                   }
                 },
             },
             spec);
}

Rational radical_inverse_exact(long long n, long long base) {
  if (base < 2) throw Error(errc::invalid_spec, "van der Corput base must be >= 2");
  require_index(n);
  cpp_int num = 0;
  cpp_int den = 1;
  while (n > 0) {
    num = num * base + n % base;
    den *= base;
    n /= base;
  }
  return Rational::from_raw(Rational::backend(num, den));
}

UnitValue radical_inverse(long long n, long long base) {
  return UnitValue(radical_inverse_exact(n, base));
}

double radical_inverse_value(long long n, long long base) {
  double v = 0.0;
  double scale = 1.0 / static_cast<double>(base);
  while (n > 0) {
    v += static_cast<double>(n % base) * scale;
    scale /= static_cast<double>(base);
    n /= base;
  }
  return v;
}

UnitValue alpha_eval(long long n, std::vector<long long> primes, double s) {
  require_index(n);
  std::sort(primes.begin(), primes.end());
  MultiplicativeAlpha probe{primes, s};
  validate(SequenceSpec(probe));
  const bool integral = s == std::floor(s) && s <= 62.0;
  if (integral) {
    const long long e = static_cast<long long>(s);
    Rational prod(1);
    for (long long p : primes)
      if (n % p == 0) prod *= Rational(1) - pow(Rational(1, p), e);
    return UnitValue(prod);
  }
  return UnitValue(alpha_eval_value(n, primes, s));
}

double alpha_eval_value(long long n, const std::vector<long long>& primes,
                        double s) {
  double prod = 1.0;
  for (long long p : primes)
    if (n % p == 0) prod *= 1.0 - std::pow(static_cast<double>(p), -s);
  return prod;
}

UnitValue eval(const SequenceSpec& spec, long long n) {
  require_index(n);
  return std::visit(
      overloaded{
          [&](const VanDerCorput& v) { return radical_inverse(n, v.base); },
          [&](const PeriodicList& p) {
            const long long b = static_cast<long long>(p.values.size());
            return p.values[static_cast<size_t>((n - 1) % b)];
          },
          [&](const MultiplicativeAlpha& a) {
            return alpha_eval(n, a.primes, a.s);
          },
          [&](const PartitionExtension& pe) {
            if (!pe.values || pe.values->empty())
              throw Error(errc::missing_level, "partition extension level unavailable");
            const long long b = static_cast<long long>(pe.values->size());
            return (*pe.values)[static_cast<size_t>((n - 1) % b)];
          },
          [&](const Constant& c) { return c.c; },
      },
      spec);
}

double eval_value(const SequenceSpec& spec, long long n) {
  require_index(n);
  return std::visit(
      overloaded{
          [&](const VanDerCorput& v) { return radical_inverse_value(n, v.base); },
          [&](const PeriodicList& p) {
            const long long b = static_cast<long long>(p.values.size());
            return p.values[static_cast<size_t>((n - 1) % b)].value();
          },
          [&](const MultiplicativeAlpha& a) {
            return alpha_eval_value(n, a.primes, a.s);
          },
          [&](const PartitionExtension& pe) {
            if (!pe.values || pe.values->empty())
              throw Error(errc::missing_level, "partition extension level unavailable");
            const long long b = static_cast<long long>(pe.values->size());
            return (*pe.values)[static_cast<size_t>((n - 1) % b)].value();
          },
          [&](const Constant& c) { return c.c.value(); },
      },
      spec);
}

long long index_eval(const IndexSeqSpec& spec, long long n) {
  require_index(n);
  return std::visit(
      overloaded{
          [&](const IdentityIndex&) { return n; },
          [&](const BlockShuffle& b) {
            const long long block = (n - 1) / b.modulus;
            const long long pos = (n - 1) % b.modulus;
            return block * b.modulus + b.permutation[static_cast<size_t>(pos)] + 1;
          },
      },
      spec);
}

std::string label(const SequenceSpec& spec) {
  return std::visit(
      overloaded{
          [](const VanDerCorput& v) {
            return "vdc(base=" + std::to_string(v.base) + ")";
          },
          [](const PeriodicList& p) {
            return "periodic(B=" + std::to_string(p.values.size()) + ")";
          },
          [](const MultiplicativeAlpha& a) {
            std::string s = "alpha(P={";
            for (size_t i = 0; i < a.primes.size(); ++i) {
              if (i) s += ",";
              s += std::to_string(a.primes[i]);
            }
            s += "},s=" + std::to_string(a.s) + ")";
            return s;
          },
          [](const PartitionExtension& pe) {
            return "partition-extension(level=" + std::to_string(pe.level) + ")";
          },
          [](const Constant& c) {
            return "constant(" + std::to_string(c.c.value()) + ")";
          },
      },
      spec);
}

std::string label(const IndexSeqSpec& spec) {
  return std::visit(
      overloaded{
          [](const IdentityIndex&) { return std::string("identity"); },
          [](const BlockShuffle& b) {
            return "block-shuffle(M=" + std::to_string(b.modulus) + ")";
          },
      },
      spec);
}

}  // namespace equidist
