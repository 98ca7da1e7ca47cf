#pragma once

#include <span>
#include <string>
#include <vector>

#include "jacobi/expansion.hpp"
#include "jacobi/quadrature.hpp"

namespace jacobi {

enum class GVariant { full, vertical };
enum class GMethod { closed_form, t_quadrature };

std::string to_string(GVariant v);
std::string to_string(GMethod m);

/// g(f)(x) = (int_0^inf t |(d_t, delta_1, ..., delta_d) P_t f(x)|^2 dt)^{1/2}, with the
/// t-integral done per mode pair: int t e^{-t(a+b)} dt = (a+b)^{-2}. The vertical
/// variant keeps only the d_t component.
double g_function(const Expansion& f, std::span<const double> x, GVariant variant = GVariant::full);

/// gtilde_i(g)(x) = (int_0^inf t |d_t Ptilde^i_t g(x)|^2 dt)^{1/2} for a shifted-i expansion.
double g_tilde(int i, const Expansion& g, std::span<const double> x);

/// Nodes and weights of a Gauss-Legendre rule in log t over [t_lo, t_hi].
struct TimeRule {
  std::vector<double> t;
  std::vector<double> w;
};
TimeRule log_time_rule(double t_lo = 1e-8, double t_hi = 50.0, int n = 129);

/// Same quantities by direct quadrature of the t-integral; independent cross-check.
double g_function_quadrature(const Expansion& f, std::span<const double> x,
                             GVariant variant = GVariant::full,
                             const TimeRule& rule = log_time_rule());
double g_tilde_quadrature(int i, const Expansion& g, std::span<const double> x,
                          const TimeRule& rule = log_time_rule());

struct GFunctionResult {
  std::vector<std::vector<double>> points;
  std::vector<double> values;
  GMethod method = GMethod::closed_form;
  double cross_residual = 0.0;  // max |closed form - t-quadrature| over the points
  bool cross_validated() const { return cross_residual <= 1e-7; }
};

/// Evaluates g (coord < 0) or gtilde_coord at every point by `method`, and
/// records the discrepancy against the other method.
GFunctionResult evaluate_square_function(const Expansion& f, int coord, GVariant variant,
                                         const std::vector<std::vector<double>>& points,
                                         GMethod method = GMethod::closed_form);

struct DominationViolation {
  int coord = 0;
  std::vector<double> point;
  double g_tilde = 0.0;
  double g = 0.0;
};

struct DominationReport {
  ParamVector params;
  std::size_t points_checked = 0;
  double max_excess = 0.0;  // max over i, x of gtilde_i(R_i f)(x) - g(f)(x)
  std::vector<DominationViolation> violations;
  bool holds() const { return violations.empty(); }
};

/// Checks gtilde_i(R_i f)(x) <= g(f)(x) + slack at every grid node and every i.
DominationReport verify_domination(const Expansion& f, const TensorGrid& grid,
                                   double slack = 1e-10);

struct EnergyReport {
  ParamVector params;
  double lhs = 0.0;  // 2 int g(f)^2 dmu
  double rhs = 0.0;  // int f^2 dmu - mass * (mean f)^2
  double relative_error = 0.0;
  bool holds(double tol = 1e-8) const { return relative_error <= tol; }
};

/// p = 2 energy identity: int_0^inf int t J(P_t f)^2 dmu dt = ||f||^2 - ||P_inf f||^2,
/// with J(u^2) = 2 |grad u|^2 for harmonic u. Both sides use grid quadrature in x;
/// the grid must integrate polynomials of degree 2N exactly.
EnergyReport verify_energy_identity(const Expansion& f, const TensorGrid& grid);

}  // namespace jacobi
