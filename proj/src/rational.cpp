#include "equidist/rational.hpp"

#include <limits>
#include <ostream>

#include "equidist/errors.hpp"

namespace equidist {

using boost::multiprecision::cpp_int;

Rational::Rational(long long num, long long den) {
  if (den == 0) throw Error(errc::invalid_spec, "rational with zero denominator");
  cpp_int n(num), d(den);
  if (d < 0) {
    n = -n;
    d = -d;
  }
  v_ = backend(n, d);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.v_.is_zero()) throw Error(errc::invalid_spec, "rational division by zero");
  return Rational(Rational::backend(a.v_ / b.v_));
}

Rational Rational::parse(std::string_view text) {
  size_t begin = text.find_first_not_of(" \t");
  size_t end = text.find_last_not_of(" \t");
  if (begin == std::string_view::npos)
    throw Error(errc::parse, "empty rational literal");
  text = text.substr(begin, end - begin + 1);

  const size_t slash = text.find('/');
  auto parse_int = [&](std::string_view part) {
    if (part.empty()) throw Error(errc::parse, "malformed rational literal");
    try {
      return cpp_int(std::string(part));
    } catch (const std::exception&) {
      throw Error(errc::parse,
                  "malformed rational literal: '" + std::string(part) + "'");
    }
  };
  cpp_int num = parse_int(text.substr(0, slash));
  cpp_int den = 1;
  if (slash != std::string_view::npos) {
    den = parse_int(text.substr(slash + 1));
    if (den <= 0) throw Error(errc::parse, "rational denominator must be positive");
  }
  return Rational(backend(num, den));
}

bool Rational::is_integer() const {
  return boost::multiprecision::denominator(v_) == 1;
}

bool Rational::fits_int64() const {
  if (!is_integer()) return false;
  const cpp_int n = boost::multiprecision::numerator(v_);
  return n >= std::numeric_limits<std::int64_t>::min() &&
         n <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t Rational::to_int64() const {
  return boost::multiprecision::numerator(v_).convert_to<std::int64_t>();
}

std::string Rational::str() const {
  const cpp_int num = boost::multiprecision::numerator(v_);
  const cpp_int den = boost::multiprecision::denominator(v_);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::ostream& operator<<(std::ostream& os, const Rational& x) {
  return os << x.str();
}

Rational abs(const Rational& x) {
  return x < Rational(0) ? -x : x;
}

Rational pow(const Rational& base, long long exponent) {
  if (exponent < 0) return Rational(1) / pow(base, -exponent);
  Rational result(1);
  Rational b = base;
  long long e = exponent;
  while (e > 0) {
    if (e & 1) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

}  // namespace equidist
