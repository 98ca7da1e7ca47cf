#pragma once

#include <span>
#include <string>
#include <vector>

#include "jacobi/expansion.hpp"
#include "jacobi/quadrature.hpp"

namespace jacobi {

enum class SemigroupKind { heat, poisson };

/// T_t: coefficient of mode k times exp(-t lambda_k). Standard basis only.
Expansion apply_heat(double t, const Expansion& f);
/// P_t: coefficient of mode k times exp(-t sqrt(lambda_k)). Standard basis only.
Expansion apply_poisson(double t, const Expansion& f);
Expansion apply_semigroup(SemigroupKind kind, double t, const Expansion& f);

/// Modified semigroups on an i-shifted expansion; mode k uses lambda_{k+e_i}
/// computed with the original parameters.
Expansion apply_modified(int i, SemigroupKind kind, double t, const Expansion& f);

/// Drops the k = 0 coefficient.
Expansion project_pi0(const Expansion& f);

/// Multiplier derivatives in t: coefficient times (-m)^order, m the exponent
/// rate of the semigroup (lambda or sqrt(lambda)).
Expansion time_derivative(SemigroupKind kind, double t, const Expansion& f, int order);
Expansion modified_time_derivative(int i, SemigroupKind kind, double t, const Expansion& f,
                                   int order);

/// n log-spaced times in [lo, hi]; defaults match the maximal-operator grid.
std::vector<double> log_time_grid(double lo = 1e-3, double hi = 1e2, int n = 65);

/// max over the t-grid of |semigroup_t f(x)|: a lower bound of the maximal function.
double maximal_operator(SemigroupKind kind, const Expansion& f, std::span<const double> x,
                        std::span<const double> times);

enum class KernelVariant { heat, modified };

/// Kernel values on point lists xs, ys (each point has dim() coordinates).
struct KernelTable {
  double t = 0.0;
  ParamVector params;
  KernelVariant variant = KernelVariant::heat;
  int modified_coord = -1;  // 0-based, for the modified variant
  std::vector<std::vector<double>> xs;
  std::vector<std::vector<double>> ys;
  std::vector<double> values;  // values[a * ys.size() + b]
  int max_degree = 0;          // largest |k| retained
  double residual = 0.0;       // max |contribution| of the last shell
  bool converged = false;      // residual <= 1e-10 max |value|
  double path_discrepancy = 0.0;  // modified variant: max |series - delegation|

  double at(std::size_t a, std::size_t b) const { return values[a * ys.size() + b]; }
};

inline constexpr int kDefaultKernelDegreeCap = 400;

/// G_t(x,y) = sum_k exp(-t lambda_k) P_k(x) P_k(y) / ||P_k||^2, summed in shells
/// of total degree |k| until the last shell is below 1e-12 of the running max
/// or `K` is reached.
KernelTable heat_kernel_table(double t, const ParamVector& p,
                              const std::vector<std::vector<double>>& xs,
                              const std::vector<std::vector<double>>& ys,
                              int K = kDefaultKernelDegreeCap);

/// Modified kernel exp(-t(alpha_i+beta_i+2)) Phi_i(x) Phi_i(y) G_t^{(alpha+e_i,beta+e_i)}(x,y),
/// built by delegation and also by direct summation over the shifted basis;
/// path_discrepancy records the largest disagreement of the two.
KernelTable modified_kernel_table(int i, double t, const ParamVector& p,
                                  const std::vector<std::vector<double>>& xs,
                                  const std::vector<std::vector<double>>& ys,
                                  int K = kDefaultKernelDegreeCap);

/// Points of a 1D list as one-coordinate vectors.
std::vector<std::vector<double>> as_points(std::span<const double> xs);
/// n equispaced interior points of (-1, 1): -1 + 2(j+1)/(n+1).
std::vector<double> interior_points(int n);

/// Result of comparing the modified kernel with the plain one on a grid.
struct KernelComparison {
  double t = 0.0;
  double max_excess = 0.0;  // max over the grid of G~ - G
  std::vector<double> worst_point;
  bool converged = false;
  double path_discrepancy = 0.0;
};

/// G~^i_t - G_t on xs x xs (d = params.dim(), coordinates given by xs points).
KernelComparison compare_kernels(int i, double t, const ParamVector& p,
                                 const std::vector<std::vector<double>>& xs,
                                 int K = kDefaultKernelDegreeCap);

/// Modified semigroup applied to the constant function 1 in dimension one:
/// sum_k m(lambda_{k+1}) c_k Phi(x) P_k^{(a+1,b+1)}(x) with
/// c_k = int Phi P_k^{(a+1,b+1)} dmu_{(a,b)} / ||P_k^{(a+1,b+1)}||^2, evaluated
/// with an exact Gauss rule for mu_{(a+1/2,b+1/2)}. Values above 1 witness
/// the failure of L^infinity contraction.
struct ModifiedOnOne {
  std::vector<double> xs;
  std::vector<double> values;
  double max_value = 0.0;
  double last_term = 0.0;  // magnitude of the last retained term at the worst point
  int terms = 0;
};
ModifiedOnOne modified_semigroup_on_one(SemigroupKind kind, double t, const ParamPair& p,
                                        std::span<const double> xs, int max_terms = 4000);

/// Half-line rule for the measure pi^{-1/2} u^{-1/2} e^{-u} du on (0, inf).
struct HalfLineRule {
  enum class Method { log_trapezoid, gauss_laguerre };
  Method method = Method::log_trapezoid;
  double s_lo = 0.0;  // log-trapezoid interval and step
  double s_hi = 0.0;
  double h = 0.0;
  int n = 0;  // Gauss-Laguerre node count
  std::vector<double> nodes;
  std::vector<double> weights;

  std::string name() const;
};

/// Trapezoid rule in s = log u on [s_lo, s_hi] with step h.
HalfLineRule log_trapezoid_rule(double s_lo = -60.0, double s_hi = 5.0, double h = 0.1);
/// Generalized Gauss-Laguerre rule with exponent -1/2 (weights normalized to 1).
HalfLineRule gauss_laguerre_half(int n = 64);
/// Same family at twice the resolution, for the self-check.
HalfLineRule refined(const HalfLineRule& rule);

struct SubordinationResult {
  double value = 0.0;
  double refined_value = 0.0;
  bool resolved = false;  // |value - refined_value| <= 1e-10 (1 + |value|)
};

/// (1/sqrt(pi)) int_0^inf u^{-1/2} e^{-u} T_{t^2/(4u)} f(x) du by the half-line rule,
/// with a node-refinement self-check.
SubordinationResult subordinated_poisson(double t, const Expansion& f, std::span<const double> x,
                                         const HalfLineRule& rule = log_trapezoid_rule());

}  // namespace jacobi
