#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "jacobi/errors.hpp"
#include "jacobi/spectral.hpp"

namespace jacobi {

std::string HalfLineRule::name() const {
  if (method == Method::gauss_laguerre) return "gauss-laguerre(n=" + std::to_string(n) + ")";
  return "log-trapezoid(h=" + std::to_string(h) + ")";
}

HalfLineRule log_trapezoid_rule(double s_lo, double s_hi, double h) {
  if (!(h > 0.0) || !(s_hi > s_lo)) throw std::invalid_argument("log_trapezoid_rule: bad interval");
  HalfLineRule rule;
  rule.method = HalfLineRule::Method::log_trapezoid;
  rule.s_lo = s_lo;
  rule.s_hi = s_hi;
  rule.h = h;
  const int m = static_cast<int>(std::lround((s_hi - s_lo) / h));
  const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
  for (int j = 0; j <= m; ++j) {
    const double s = s_lo + j * h;
    const double u = std::exp(s);
    // u^{-1/2} e^{-u} du = e^{s/2} e^{-e^s} ds
    double w = h * std::exp(0.5 * s - u) * inv_sqrt_pi;
    if (j == 0 || j == m) w *= 0.5;
    rule.nodes.push_back(u);
    rule.weights.push_back(w);
  }
  return rule;
}

HalfLineRule gauss_laguerre_half(int n) {
  if (n < 1) throw std::invalid_argument("gauss_laguerre_half: n must be positive");
  HalfLineRule rule;
  rule.method = HalfLineRule::Method::gauss_laguerre;
  rule.n = n;
  const double a = -0.5;
  if (n == 1) {
    rule.nodes = {a + 1.0};
    rule.weights = {1.0};
    return rule;
  }
  Eigen::VectorXd diag(n);
  Eigen::VectorXd off(n - 1);
  for (int k = 0; k < n; ++k) diag[k] = 2.0 * k + a + 1.0;
  for (int k = 1; k < n; ++k) off[k - 1] = std::sqrt(k * (k + a));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw SolverFailure("gauss_laguerre_half: eigensolver did not converge");
  }
  for (int j = 0; j < n; ++j) {
    const double v0 = solver.eigenvectors()(0, j);
    rule.nodes.push_back(solver.eigenvalues()[j]);
    rule.weights.push_back(v0 * v0);  // total mass normalized to 1
  }
  return rule;
}

HalfLineRule refined(const HalfLineRule& rule) {
  if (rule.method == HalfLineRule::Method::gauss_laguerre) return gauss_laguerre_half(2 * rule.n);
  return log_trapezoid_rule(rule.s_lo, rule.s_hi, rule.h / 2.0);
}

namespace {

double subordinate(double t, const std::vector<std::pair<double, double>>& terms,
                   const HalfLineRule& rule) {
  double sum = 0.0;
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    const double s = t * t / (4.0 * rule.nodes[j]);
    double heat = 0.0;
    for (const auto& [lambda, b] : terms) heat += std::exp(-s * lambda) * b;
    sum += rule.weights[j] * heat;
  }
  return sum;
}

}  // namespace

SubordinationResult subordinated_poisson(double t, const Expansion& f, std::span<const double> x,
                                         const HalfLineRule& rule) {
  if (!f.basis().is_standard()) throw BasisMismatch("subordinated_poisson: standard basis only");
  if (!(t > 0.0)) throw std::domain_error("subordinated_poisson: t must be positive");
  std::vector<std::pair<double, double>> terms;  // (lambda_k, a_k P_k(x))
  for (const auto& [k, v] : f.coeffs()) {
    double b = v;
    for (int c = 0; c < f.dim(); ++c) b *= basis_factor(f.params(), f.basis(), c, k[c], x[c]);
    terms.emplace_back(f.params().eigenvalue(k), b);
  }
  SubordinationResult out;
  out.value = subordinate(t, terms, rule);
  out.refined_value = subordinate(t, terms, refined(rule));
  out.resolved = std::abs(out.value - out.refined_value) <= 1e-10 * (1.0 + std::abs(out.value));
  return out;
}

}  // namespace jacobi
