#pragma once

#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "jacobi/polycore.hpp"

namespace jacobi {

using MultiIndex = std::vector<int>;

struct SpectralMode {
  MultiIndex k;
  double lambda;
  double sqrt_lambda;
};

/// Per-coordinate type parameters (alpha_i, beta_i).
class ParamVector {
 public:
  ParamVector(std::vector<double> alpha, std::vector<double> beta);
  static ParamVector uniform(int dim, double alpha, double beta);

  int dim() const noexcept { return static_cast<int>(pairs_.size()); }
  double alpha(int i) const { return pairs_.at(i).alpha(); }
  double beta(int i) const { return pairs_.at(i).beta(); }
  const ParamPair& pair(int i) const { return pairs_.at(i); }
  std::vector<double> alphas() const;
  std::vector<double> betas() const;

  /// (alpha + e_i, beta + e_i).
  ParamVector shifted(int i) const;
  bool in_half_range() const;

  /// lambda_k = sum of the one-dimensional eigenvalues.
  double eigenvalue(const MultiIndex& k) const;
  SpectralMode mode(const MultiIndex& k) const;
  /// ||P_k||^2 = product of the one-dimensional squared norms.
  double squared_norm(const MultiIndex& k) const;
  double total_mass() const;

  friend bool operator==(const ParamVector&, const ParamVector&) = default;

 private:
  std::vector<ParamPair> pairs_;
};

/// Standard basis P_k, or the i-shifted basis Phi_i P_k^{(alpha+e_i,beta+e_i)}.
/// `shifted` is 0-based internally; -1 means standard.
struct Basis {
  int shifted = -1;

  static Basis standard() { return {}; }
  static Basis shifted_in(int i) { return {i}; }
  bool is_standard() const noexcept { return shifted < 0; }
  std::string to_string() const;
  friend bool operator==(const Basis&, const Basis&) = default;
};

/// ||basis_k||^2 in L^2(d mu_{(alpha,beta)}); for the i-shifted basis this is
/// the squared norm of P_k at the shifted parameters.
double basis_squared_norm(const ParamVector& p, Basis b, const MultiIndex& k);

/// One-dimensional basis factor in coordinate `coord`: P_k(x) for the standard
/// basis, Phi(x) P_k^{(a+1,b+1)}(x) in the shifted coordinate (0 at x = +-1).
double basis_factor(const ParamVector& p, Basis b, int coord, int k, double x);

/// Truncated Fourier-Jacobi expansion. Stored modes satisfy k <= N componentwise.
class Expansion {
 public:
  Expansion(ParamVector params, Basis basis, int degree_cap);

  const ParamVector& params() const noexcept { return params_; }
  Basis basis() const noexcept { return basis_; }
  int degree_cap() const noexcept { return degree_cap_; }
  int dim() const noexcept { return params_.dim(); }
  const std::map<MultiIndex, double>& coeffs() const noexcept { return coeffs_; }

  double coeff(const MultiIndex& k) const;
  /// Sets a coefficient; zero values are stored too (explicit modes).
  void set(const MultiIndex& k, double value);
  void add(const MultiIndex& k, double value);

  /// sum_k c_k basis_k(x); |x_i| < 1 required.
  double synthesize(std::span<const double> x) const;
  /// Parseval: sum_k c_k^2 ||basis_k||^2.
  double l2_norm_squared() const;

  static Expansion single_mode(const ParamVector& p, Basis b, const MultiIndex& k, double value,
                               int degree_cap);
  /// Standard-normal coefficients on every mode of the box [0, N]^d.
  static Expansion random(const ParamVector& p, Basis b, int degree_cap, std::mt19937_64& rng);

 private:
  void check_mode(const MultiIndex& k) const;

  ParamVector params_;
  Basis basis_;
  int degree_cap_;
  std::map<MultiIndex, double> coeffs_;
};

/// Every multi-index of the box [0, N]^d in lexicographic order.
std::vector<MultiIndex> box_modes(int dim, int N);

/// Largest absolute coefficient difference, missing modes read as zero.
/// Throws BasisMismatch if parameters or basis differ.
double max_coeff_difference(const Expansion& a, const Expansion& b);

}  // namespace jacobi
