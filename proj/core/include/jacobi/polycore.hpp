#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace jacobi {

/// Type parameters (alpha, beta) of a one-dimensional Jacobi system.
/// Both must exceed -1; the constructor throws std::domain_error otherwise.
class ParamPair {
 public:
  ParamPair(double alpha, double beta);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

  /// alpha >= -1/2 and beta >= -1/2. The kernel comparison between the
  /// modified and the plain heat kernels only holds in this range.
  bool in_half_range() const noexcept { return in_half_range_; }

  /// (alpha + 1, beta + 1), the parameters of the derivative system.
  ParamPair shifted() const { return {alpha_ + 1.0, beta_ + 1.0}; }

  friend bool operator==(const ParamPair&, const ParamPair&) = default;

 private:
  double alpha_;
  double beta_;
  bool in_half_range_;
};

struct SpectralMode1D {
  int k;
  double lambda;
  double sqrt_lambda;
};

/// P_k^{(alpha,beta)}(x) for |x| < 1 by the three-term recurrence.
double eval_jacobi(const ParamPair& p, int k, double x);

/// d/dx P_k^{(alpha,beta)}(x) = (k+alpha+beta+1)/2 * P_{k-1}^{(alpha+1,beta+1)}(x); 0 for k = 0.
double eval_jacobi_derivative(const ParamPair& p, int k, double x);

/// Second derivative, by applying the derivative relation twice.
double eval_jacobi_second_derivative(const ParamPair& p, int k, double x);

/// Values P_0(x), ..., P_kmax(x) in one recurrence sweep. No domain check on x,
/// so it can also be used at the endpoints.
void jacobi_sweep(const ParamPair& p, int kmax, double x, std::span<double> out);
std::vector<double> jacobi_sweep(const ParamPair& p, int kmax, double x);

/// lambda_k = k (k + alpha + beta + 1).
SpectralMode1D eigenvalue(const ParamPair& p, int k);

/// ||P_k||^2 in L^2((1-x)^alpha (1+x)^beta dx), computed in log-Gamma form.
double squared_norm(const ParamPair& p, int k);

/// Total mass of the one-dimensional Jacobi measure, 2^{a+b+1} B(a+1, b+1).
double total_mass(const ParamPair& p);

/// sqrt(1 - x^2) on [-1, 1].
double phi(double x);

}  // namespace jacobi
