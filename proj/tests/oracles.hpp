#pragma once

// Reference computations used only by the tests. None of them share code
// paths with the library: explicit sums, Beta-function moments, finite
// differences and exact rational evaluation.

#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "jacobi/expansion.hpp"
#include "jacobi/rational.hpp"

namespace oracle {

/// P_k^{(a,b)}(x) from the explicit binomial sum, in long double.
inline long double jacobi_explicit(long double a, long double b, int k, long double x) {
  auto binom = [](long double top, int bottom) {
    // Generalized binomial C(top, bottom) with integer bottom >= 0.
    long double r = 1.0L;
    for (int j = 1; j <= bottom; ++j) r *= (top - bottom + j) / j;
    return r;
  };
  long double sum = 0.0L;
  const long double lo = (x - 1.0L) / 2.0L;
  const long double hi = (x + 1.0L) / 2.0L;
  for (int s = 0; s <= k; ++s) {
    sum += binom(k + a, k - s) * binom(k + b, s) * std::pow(lo, s) * std::pow(hi, k - s);
  }
  return sum;
}

/// int_{-1}^{1} x^m (1-x)^a (1+x)^b dx. The boundary term of
/// d/dx[(1-x)^{a+1} (1+x)^{b+1} x^k] vanishes, which gives
/// (a+b+2+k) m_{k+1} = (b-a) m_k + k m_{k-1}, started from the Beta integral.
inline long double jacobi_moment(long double a, long double b, int m) {
  long double prev = 0.0L;
  long double cur =
      std::pow(2.0L, a + b + 1) * std::exp(std::lgamma(a + 1) + std::lgamma(b + 1) - std::lgamma(a + b + 2));
  for (int k = 0; k < m; ++k) {
    const long double next = ((b - a) * cur + k * prev) / (a + b + 2 + k);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Horner evaluation of ascending rational coefficients at a rational point.
inline jacobi::exact::Rational horner(const std::vector<jacobi::exact::Rational>& c,
                                      const jacobi::exact::Rational& x) {
  jacobi::exact::Rational acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

template <class F>
double central_difference(F&& f, double x, double h = 1e-5) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Central differences at steps h and 2h combined to cancel the h^2 term.
template <class F>
double richardson_difference(F&& f, double x, double h = 1e-5) {
  const double d1 = central_difference(f, x, h);
  const double d2 = central_difference(f, x, 2.0 * h);
  return (4.0 * d1 - d2) / 3.0;
}

/// Coordinatewise central difference of an expansion.
inline double partial_fd(const jacobi::Expansion& f, int j, std::span<const double> x,
                         double h = 1e-5) {
  std::vector<double> xp(x.begin(), x.end());
  std::vector<double> xm(x.begin(), x.end());
  xp[j] += h;
  xm[j] -= h;
  return (f.synthesize(xp) - f.synthesize(xm)) / (2.0 * h);
}

/// Uniform parameter draw in (lo, hi).
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace oracle
