#ifndef KGRAPH_RATIONAL_HPP
#define KGRAPH_RATIONAL_HPP

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "kgraph/errors.hpp"

namespace kgraph {

/// Exact rational on int64 with overflow detection.  The constraint systems
/// solved here have coefficients in {-1,0,1} and stay tiny, so 64 bits is
/// plenty; overflow throws instead of silently wrapping.
class Rational {
 public:
  Rational() = default;
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }

  Rational operator+(const Rational& o) const {
    return Rational(checked(mul128(num_, o.den_) + mul128(o.num_, den_)), checked(mul128(den_, o.den_)));
  }
  Rational operator-(const Rational& o) const {
    return Rational(checked(mul128(num_, o.den_) - mul128(o.num_, den_)), checked(mul128(den_, o.den_)));
  }
  Rational operator*(const Rational& o) const {
    return Rational(checked(mul128(num_, o.num_)), checked(mul128(den_, o.den_)));
  }
  Rational operator/(const Rational& o) const {
    if (o.num_ == 0) throw ComputeError("rational division by zero");
    return Rational(checked(mul128(num_, o.den_)), checked(mul128(den_, o.num_)));
  }
  Rational operator-() const { return Rational(-num_, den_); }

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const { return mul128(num_, o.den_) < mul128(o.num_, den_); }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Exact rational value of a finite double (doubles are dyadic rationals).
  static Rational from_double_exact(double x) {
    if (x == 0.0) return Rational(0);
    int exp = 0;
    double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5,1)
    long long m = static_cast<long long>(mant * 9007199254740992.0);  // mant * 2^53
    exp -= 53;
    while (m != 0 && (m & 1) == 0) {
      m >>= 1;
      ++exp;
    }
    if (exp >= 0) {
      if (exp > 9) throw ComputeError("double too large for exact rational");
      return Rational(m << exp, 1);
    }
    if (exp < -62) throw ComputeError("double too fine for exact rational");
    return Rational(m, 1LL << (-exp));
  }

 private:
  static __int128 mul128(long long a, long long b) { return static_cast<__int128>(a) * b; }
  static long long checked(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw ComputeError("rational overflow");
    return static_cast<long long>(v);
  }

  void normalize() {
    if (den_ == 0) throw ComputeError("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  long long num_ = 0;
  long long den_ = 1;
};

}  // namespace kgraph

#endif
