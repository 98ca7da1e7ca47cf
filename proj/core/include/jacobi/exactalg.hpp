#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jacobi/phipoly.hpp"
#include "jacobi/rational.hpp"

namespace jacobi::exact {

/// Exact type multi-indices (alpha, beta), one pair per coordinate.
class RationalParamVector {
 public:
  RationalParamVector(std::vector<Rational> alpha, std::vector<Rational> beta);
  /// Same (alpha, beta) in every one of `dim` coordinates.
  static RationalParamVector uniform(int dim, const Rational& alpha, const Rational& beta);

  int dim() const noexcept { return static_cast<int>(alpha_.size()); }
  const Rational& alpha(int i) const { return alpha_.at(i); }
  const Rational& beta(int i) const { return beta_.at(i); }
  const std::vector<Rational>& alpha() const noexcept { return alpha_; }
  const std::vector<Rational>& beta() const noexcept { return beta_; }

  /// (alpha + e_i, beta + e_i).
  RationalParamVector shifted(int i) const;

  /// lambda_k = sum_i k_i (k_i + alpha_i + beta_i + 1).
  Rational eigenvalue(const std::vector<int>& k) const;
  Rational eigenvalue_1d(int i, int k) const;

  std::string to_string() const;

 private:
  std::vector<Rational> alpha_;
  std::vector<Rational> beta_;
};

inline constexpr int kDefaultExactDegreeCap = 8;

/// Coefficients (ascending powers of x) of P_k^{(alpha,beta)} by symbolic
/// Rodrigues differentiation (Leibniz rule on (1-x)^{a+k} (1+x)^{b+k}).
std::vector<Rational> jacobi_coefficients(const Rational& alpha, const Rational& beta, int k,
                                          int cap = kDefaultExactDegreeCap);

/// Same polynomial from the three-term recurrence in rationals; independent route.
std::vector<Rational> jacobi_coefficients_recurrence(const Rational& alpha, const Rational& beta,
                                                     int k);

/// The one-dimensional polynomial P_k^{(alpha_i,beta_i)}(x_i) embedded in dimension p.dim().
PhiPoly jacobi_exact(const RationalParamVector& p, int i, int k,
                     int cap = kDefaultExactDegreeCap);

/// Tensor product prod_i P_{k_i}^{(alpha_i,beta_i)}(x_i).
PhiPoly jacobi_exact(const RationalParamVector& p, const std::vector<int>& k,
                     int cap = kDefaultExactDegreeCap);

/// Phi_i P_m^{(alpha+e_i, beta+e_i)}, the i-shifted basis function.
PhiPoly shifted_basis_exact(const RationalParamVector& p, int i, const std::vector<int>& m,
                            int cap = kDefaultExactDegreeCap);

/// delta_i f = Phi_i d/dx_i f (0-based i).
PhiPoly apply_delta(int i, const PhiPoly& f);
/// Uncanonicalized delta_i f.
PhiPoly delta_raw(int i, const PhiPoly& f);

/// Formal adjoint -Phi_i d_i + (alpha_i+1/2) sqrt((1+x)/(1-x)) - (beta_i+1/2) sqrt((1-x)/(1+x)).
/// Throws NonRepresentable when the singular part does not cancel.
PhiPoly apply_delta_star(int i, const RationalParamVector& p, const PhiPoly& f);
/// Uncanonicalized delta_i^* f; defined for every f, possibly with negative Phi powers.
PhiPoly delta_star_raw(int i, const RationalParamVector& p, const PhiPoly& f);

/// J f from the second-order expression. Throws NonRepresentable when J f
/// leaves the algebra (e.g. J applied to Phi-carrying functions for most parameters).
PhiPoly apply_jacobi_operator(const RationalParamVector& p, const PhiPoly& f);

/// Raw (uncanonicalized) J f; may carry negative Phi powers.
PhiPoly jacobi_operator_raw(const RationalParamVector& p, const PhiPoly& f);

/// [delta_i, delta_i^*] f = ((alpha_i+1/2)/(1-x_i) + (beta_i+1/2)/(1+x_i)) f, raw.
PhiPoly commutator_raw(int i, const RationalParamVector& p, const PhiPoly& f);

enum class ModifiedPath {
  decomposition,  // delta_i delta_i^* + sum_{j != i} delta_j^* delta_j
  commutator,     // J + [delta_i, delta_i^*]
};

/// M_i f. Both paths are exact and must agree wherever both are defined.
PhiPoly apply_modified_operator(int i, const RationalParamVector& p, const PhiPoly& f,
                                ModifiedPath path = ModifiedPath::decomposition);

enum class IdentityId {
  derivative,
  adjoint,
  factorization,
  commutator,
  eigen_J,
  eigen_M,
  cr1,
  cr2,
  cr3,
  cr5,
  hh1,
  hh2,
  hh3,
  sum_RbarR,
  hh4,
  spf2,
  potential,
};

const std::vector<IdentityId>& all_identities();
std::string_view identity_name(IdentityId id);
std::optional<IdentityId> parse_identity(std::string_view name);

enum class CheckStatus { pass, fail, skip };
std::string_view status_name(CheckStatus s);

struct ModeCheck {
  std::vector<int> mode;
  CheckStatus status = CheckStatus::pass;
  std::string detail;
  std::vector<std::string> residual_terms;
};

struct IdentityReport {
  IdentityId identity;
  RationalParamVector params;
  int degree_cap;
  std::vector<ModeCheck> modes;

  bool passed() const;
  std::size_t failures() const;
};

/// Expands both sides of the named identity for every mode |k| <= degree_cap
/// and compares them exactly. t-dependent sides are represented per mode as
/// (QuadExt coefficient) * exp(-n t sqrt(mu)) * PhiPoly, with s = sqrt(lambda_k)
/// adjoined, so exponentials cancel structurally.
IdentityReport verify_identity(IdentityId id, const RationalParamVector& p, int degree_cap);

/// hh2 written coordinate-wise (delta_j Ubar_j = -d/dt Ptilde_j) in any
/// dimension. Only the one-dimensional case is an identity; for d > 1 the
/// report is expected to contain failures (lambda_k differs from lambda_{k_j}).
IdentityReport probe_hh2_multidim(const RationalParamVector& p, int degree_cap);

/// All multi-indices k in N^dim with |k| <= cap, in lexicographic order.
std::vector<std::vector<int>> modes_up_to(int dim, int cap);

}  // namespace jacobi::exact
