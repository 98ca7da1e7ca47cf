#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace jacobi::exact {

using Rational = mpq_class;

/// Parses "3", "-1/2" or a decimal such as "0.75" exactly.
Rational parse_rational(const std::string& text);

/// Exact binary value of a double.
Rational to_rational(double value);

std::string to_string(const Rational& r);

/// Falling factorial z (z-1) ... (z-j+1); 1 for j = 0.
Rational falling_factorial(const Rational& z, int j);

Rational binomial(int n, int k);

/// a + b s with a formal symbol s satisfying s^2 = lambda.
/// Used to carry lambda^{1/2} and lambda^{-1/2} factors exactly.
class QuadExtScalar {
 public:
  QuadExtScalar() = default;
  QuadExtScalar(Rational a, Rational b, Rational lambda);

  static QuadExtScalar rational(const Rational& a, const Rational& lambda) {
    return {a, 0, lambda};
  }
  /// The adjoined root s itself.
  static QuadExtScalar root(const Rational& lambda) { return {0, 1, lambda}; }
  /// 1/s = s/lambda; lambda must be nonzero.
  static QuadExtScalar inverse_root(const Rational& lambda);

  const Rational& a() const noexcept { return a_; }
  const Rational& b() const noexcept { return b_; }
  const Rational& lambda() const noexcept { return lambda_; }
  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }

  QuadExtScalar operator+(const QuadExtScalar& o) const;
  QuadExtScalar operator-(const QuadExtScalar& o) const;
  QuadExtScalar operator*(const QuadExtScalar& o) const;
  QuadExtScalar operator-() const { return {-a_, -b_, lambda_}; }

  /// Structural equality: both components agree. The symbol s is treated
  /// formally, so a + b s = a' + b' s only if a = a' and b = b'.
  friend bool operator==(const QuadExtScalar& x, const QuadExtScalar& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

  double to_double() const;
  std::string to_string() const;

 private:
  void check_same_field(const QuadExtScalar& o) const;

  Rational a_{0};
  Rational b_{0};
  Rational lambda_{0};
};

}  // namespace jacobi::exact
