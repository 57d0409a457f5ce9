#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>

namespace equidist {

// Exact rational number: always in lowest terms, denominator >= 1, no
// rounding in +, *, comparison. Arbitrary-precision backend so covering
// costs and long product means never overflow.
class Rational {
 public:
  using backend = boost::multiprecision::cpp_rational;

  Rational() : v_(0) {}
  Rational(long long n) : v_(n) {}  // NOLINT: implicit by design
  Rational(long long num, long long den);

  // Accepts "p", "-p", "p/q" with optional surrounding spaces.
  static Rational parse(std::string_view text);
  static Rational from_raw(backend b) { return Rational(std::move(b)); }

  const backend& raw() const { return v_; }
  double to_double() const { return v_.convert_to<double>(); }
  bool is_integer() const;
  bool fits_int64() const;
  std::int64_t to_int64() const;
  std::string str() const;  // "p" or "p/q"

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(backend(a.v_ + b.v_));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(backend(a.v_ - b.v_));
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(backend(a.v_ * b.v_));
  }
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(backend(-v_)); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& x);

 private:
  explicit Rational(backend b) : v_(std::move(b)) {}
  backend v_;
};

Rational abs(const Rational& x);
Rational pow(const Rational& base, long long exponent);

}  // namespace equidist
