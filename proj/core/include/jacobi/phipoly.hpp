#pragma once

#include <compare>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "jacobi/rational.hpp"

namespace jacobi::exact {

/// x^e * prod_i Phi_i^{s_i} with Phi_i = sqrt(1 - x_i^2).
/// Canonical monomials have s_i in {0, 1}; intermediate (raw) results of the
/// differential operators may carry any integer Phi exponent.
struct PhiMonomial {
  std::vector<int> x;
  std::vector<int> phi;

  auto operator<=>(const PhiMonomial&) const = default;
};

/// Element of the algebra of polynomials in x_1..x_d adjoined with the
/// functions Phi_i, stored as a sparse map monomial -> rational coefficient.
///
/// The canonical form reduces Phi_i^2 to 1 - x_i^2 and clears negative Phi
/// powers by exact division; each canonical element is unique because
/// {x^e, x^e Phi} are linearly independent over polynomials. Arithmetic on
/// canonical operands returns canonical results.
class PhiPoly {
 public:
  using TermMap = std::map<PhiMonomial, Rational>;

  explicit PhiPoly(int dim);

  static PhiPoly constant(int dim, const Rational& c);
  /// x_i (0-based coordinate).
  static PhiPoly variable(int dim, int i);
  static PhiPoly phi(int dim, int i);
  /// sum_j coeffs[j] x_i^j.
  static PhiPoly univariate(int dim, int i, std::span<const Rational> coeffs);

  int dim() const noexcept { return dim_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Adds c * m without canonicalizing. Zero sums are erased.
  void add_term(const PhiMonomial& m, const Rational& c);

  bool is_canonical() const;
  /// Canonical form; throws NonRepresentable if a negative Phi power
  /// cannot be cleared (the function is not in the algebra).
  PhiPoly canonical() const;

  /// True if every term carries an odd power of Phi_i.
  bool carries_phi(int i) const;

  PhiPoly operator+(const PhiPoly& o) const;
  PhiPoly operator-(const PhiPoly& o) const;
  PhiPoly operator-() const;
  /// Product; canonical if both operands are.
  PhiPoly operator*(const PhiPoly& o) const;
  PhiPoly scaled(const Rational& c) const;
  PhiPoly& operator+=(const PhiPoly& o);

  /// Multiplies every term by Phi_i^power (raw; no reduction).
  PhiPoly times_phi_power(int i, int power) const;
  /// Raw partial derivative in x_i; d(Phi)/dx = -x / Phi.
  PhiPoly raw_partial(int i) const;

  /// Equality of the represented functions (compares canonical forms).
  friend bool operator==(const PhiPoly& f, const PhiPoly& g);

  double evaluate(std::span<const double> x) const;
  std::string to_string() const;
  /// One string per term, used in residual reports.
  std::vector<std::string> term_strings() const;

 private:
  void check_dim(const PhiPoly& o) const;
  PhiPoly reduce_high_powers(int i) const;
  PhiPoly divide_by_phi(int i) const;

  int dim_;
  TermMap terms_;
};

}  // namespace jacobi::exact
