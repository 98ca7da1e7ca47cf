#pragma once

#include <span>
#include <string>
#include <vector>

#include "jacobi/expansion.hpp"
#include "jacobi/quadrature.hpp"
#include "jacobi/spectral.hpp"

namespace jacobi {

/// R_i: standard mode k (k_i > 0) to shifted-i mode k - e_i, times
/// (k_i + alpha_i + beta_i + 1) / (2 sqrt(lambda_k)). Modes with k_i = 0 vanish.
Expansion riesz(int i, const Expansion& f);

/// Rbar_i: shifted-i mode m to standard mode m + e_i, times 2 (m_i + 1) / sqrt(lambda_{m+e_i}).
/// The degree cap grows by one if some m_i already sits at the cap.
Expansion riesz_adjoint(int i, const Expansion& g);

/// U^i_t f = Ptilde^i_t R_i f; t = 0 returns R_i f.
Expansion conjugate_poisson(int i, double t, const Expansion& f);
/// The same field summed term by term from its closed-form series, without
/// going through riesz/apply_modified. Used as a cross-check.
Expansion conjugate_poisson_series(int i, double t, const Expansion& f);
/// Ubar^i_t g = P_t Rbar_i g.
Expansion conjugate_poisson_adjoint(int i, double t, const Expansion& g);

enum class DeltaDirection { delta, delta_star };

/// Exact spectral action: delta_j on a standard expansion (to shifted-j) or
/// delta_j^* on a shifted-j expansion (to standard). Any other combination has
/// no single-basis image and throws BasisMismatch; use evaluate_operator then.
Expansion delta_apply(int j, const Expansion& f, DeltaDirection dir);

/// (-P_t Pi_0 f, U^1_t f, ..., U^d_t f).
struct ConjugateField {
  double t = 0.0;
  Expansion scalar;
  std::vector<Expansion> components;
};
ConjugateField conjugate_field(const Expansion& f, double t);

/// F(t, .) = sum_{|k|>0} a_k lambda_k^{-1/2} exp(-t sqrt(lambda_k)) P_k.
Expansion potential_expansion(const Expansion& f, double t);
double potential_function(const Expansion& f, double t, std::span<const double> x);

/// Pointwise differential operators applied analytically to an expansion in
/// any basis, coordinate by coordinate (derivatives of P_k and Phi P_k closed form).
enum class PointOp {
  value,
  delta,       // delta_j
  delta_star,  // delta_j^*
  jacobi,      // J (sum over coordinates; j ignored)
  modified,    // M_j = J + [delta_j, delta_j^*]
};
double evaluate_operator(const Expansion& f, PointOp op, int j, std::span<const double> x);
/// The operator applied to each stored basis function of f (coefficients not
/// applied), in coeffs() order.
std::vector<double> mode_values(const Expansion& f, PointOp op, int j, std::span<const double> x);
/// Values of evaluate_operator at every grid node.
std::vector<double> evaluate_operator_on(const Expansion& f, PointOp op, int j,
                                         const TensorGrid& grid);

/// delta_j f(x) by a central difference of step h; independent cross-check.
double evaluate_delta_fd(const Expansion& f, int j, std::span<const double> x, double h = 1e-5);

struct ResidualReport {
  std::string equation;
  double t = 0.0;
  ParamVector params;
  double max_residual = 0.0;
  std::string grid_spec;
};

/// Max absolute grid residual of cr1, cr2, cr3, cr5, hh1, hh2 (d = 1 only) and
/// hh3. The supplementary equations use g = R_j f as input. t-derivatives are spectral.
std::vector<ResidualReport> verify_cauchy_riemann(const Expansion& f, double t,
                                                  const TensorGrid& grid);

/// max over coefficients of |sum_j Ubar^j_t U^j_t f - P_{2t} Pi_0 f|.
double hh4_coefficient_error(const Expansion& f, double t);

/// One-dimensional check that sup_t |U_t f(x)| <= sup_t P_t(|R f|)(x) through the
/// chain |Ptilde_t g| <= Ptilde_t |g| <= P_t |g|. P_t|g| is evaluated from a
/// truncated expansion of |g| (Gauss rule with `nodes` points, degree <= K);
/// times where that truncation is not negligible are skipped and counted.
struct DominatedSupReport {
  std::vector<double> xs;
  int times_checked = 0;
  int times_skipped = 0;
  double worst_excess = 0.0;  // max over x, checked t of |U_t f(x)| - P_t|g|(x)
  double worst_sup_excess = 0.0;  // max over x of sup_t |U_t f| - lower bound of P_*|g|
  bool holds = false;
};
DominatedSupReport verify_dominated_sup(const Expansion& f, std::span<const double> xs,
                                        std::span<const double> times, int K = 2000,
                                        int nodes = 4000, double slack = 1e-10);

/// int_{|x| < 1 - eps} |delta^* J^{-1/2} P_1(x)|^2 dmu_{(a,b)}(x) in one dimension.
/// For a = b = 0 this grows like log(1/eps): the naive adjoint transform leaves L^2.
double naive_adjoint_riesz_partial_norm(const ParamPair& p, double eps);

}  // namespace jacobi
