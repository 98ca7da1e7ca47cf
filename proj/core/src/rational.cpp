#include "jacobi/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace jacobi::exact {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  const auto dot = text.find('.');
  if (dot == std::string::npos) {
    Rational r;
    if (r.set_str(text, 10) != 0) throw std::invalid_argument("bad rational literal: " + text);
    if (sgn(r.get_den()) == 0) throw std::invalid_argument("zero denominator: " + text);
    r.canonicalize();
    return r;
  }
  // Decimal: digits before and after the point, optional sign.
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  const auto decimals = text.size() - dot - 1;
  mpz_class numerator;
  if (digits.empty() || digits == "-" || digits == "+" ||
      numerator.set_str(digits[0] == '+' ? digits.substr(1) : digits, 10) != 0) {
    throw std::invalid_argument("bad decimal literal: " + text);
  }
  mpz_class denominator;
  mpz_ui_pow_ui(denominator.get_mpz_t(), 10, decimals);
  Rational r(numerator, denominator);
  r.canonicalize();
  return r;
}

Rational to_rational(double value) {
  if (!std::isfinite(value)) throw std::domain_error("non-finite value has no rational form");
  return Rational(value);
}

std::string to_string(const Rational& r) { return r.get_str(); }

Rational falling_factorial(const Rational& z, int j) {
  Rational out(1);
  for (int i = 0; i < j; ++i) out *= z - i;
  return out;
}

Rational binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(out);
}

QuadExtScalar::QuadExtScalar(Rational a, Rational b, Rational lambda)
    : a_(std::move(a)), b_(std::move(b)), lambda_(std::move(lambda)) {
  if (sgn(lambda_) < 0) throw std::domain_error("QuadExtScalar: lambda must be >= 0");
}

QuadExtScalar QuadExtScalar::inverse_root(const Rational& lambda) {
  if (sgn(lambda) == 0) throw std::domain_error("inverse of sqrt(0)");
  return {0, Rational(1) / lambda, lambda};
}

void QuadExtScalar::check_same_field(const QuadExtScalar& o) const {
  // Pure rationals (b = 0) mix freely with any field.
  if (sgn(b_) != 0 && sgn(o.b_) != 0 && lambda_ != o.lambda_) {
    throw std::logic_error("QuadExtScalar: mixing different adjoined roots");
  }
}

QuadExtScalar QuadExtScalar::operator+(const QuadExtScalar& o) const {
  check_same_field(o);
  return {a_ + o.a_, b_ + o.b_, sgn(b_) != 0 ? lambda_ : o.lambda_};
}

QuadExtScalar QuadExtScalar::operator-(const QuadExtScalar& o) const { return *this + (-o); }

QuadExtScalar QuadExtScalar::operator*(const QuadExtScalar& o) const {
  check_same_field(o);
  const Rational& lam = sgn(b_) != 0 ? lambda_ : o.lambda_;
  return {a_ * o.a_ + b_ * o.b_ * lam, a_ * o.b_ + b_ * o.a_, lam};
}

double QuadExtScalar::to_double() const {
  return a_.get_d() + b_.get_d() * std::sqrt(lambda_.get_d());
}

std::string QuadExtScalar::to_string() const {
  if (sgn(b_) == 0) return a_.get_str();
  return a_.get_str() + " + (" + b_.get_str() + ")*sqrt(" + lambda_.get_str() + ")";
}

}  // namespace jacobi::exact
