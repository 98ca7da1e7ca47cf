#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jacobi/conjugacy.hpp"
#include "jacobi/errors.hpp"

namespace jacobi {

namespace {

std::string describe(const TensorGrid& grid) {
  std::string out = "gauss";
  for (std::size_t n : grid.shape()) out += (out == "gauss" ? " " : "x") + std::to_string(n);
  return out;
}

/// max_n |sum_terms sign * values[n]|
double max_residual(const std::vector<std::pair<double, std::vector<double>>>& terms) {
  double worst = 0.0;
  const std::size_t n = terms.front().second.size();
  for (std::size_t j = 0; j < n; ++j) {
    double sum = 0.0;
    for (const auto& [sign, values] : terms) sum += sign * values[j];
    worst = std::max(worst, std::abs(sum));
  }
  return worst;
}

}  // namespace

std::vector<ResidualReport> verify_cauchy_riemann(const Expansion& f, double t,
                                                  const TensorGrid& grid) {
  if (!f.basis().is_standard()) throw BasisMismatch("verify_cauchy_riemann: standard basis only");
  if (!(t > 0.0)) throw std::domain_error("verify_cauchy_riemann: t must be positive");
  if (grid.dim() != f.dim()) throw std::invalid_argument("verify_cauchy_riemann: grid dimension");
  const int d = f.dim();
  const std::string spec = describe(grid);
  std::vector<ResidualReport> out;
  auto report = [&](const std::string& name, double r) {
    out.push_back(ResidualReport{name, t, f.params(), r, spec});
  };
  auto on = [&](const Expansion& e) { return synthesize_on(e, grid); };
  auto op = [&](const Expansion& e, PointOp o, int j) { return evaluate_operator_on(e, o, j, grid); };

  const Expansion pt = apply_poisson(t, f);
  std::vector<Expansion> u;
  for (int j = 0; j < d; ++j) u.push_back(conjugate_poisson(j, t, f));

  double cr1 = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      cr1 = std::max(cr1, max_residual({{1.0, op(u[i], PointOp::delta, j)},
                                        {-1.0, op(u[j], PointOp::delta, i)}}));
  report("cr1", cr1);

  double cr2 = 0.0;
  double cr5 = 0.0;
  for (int j = 0; j < d; ++j) {
    const Expansion r = riesz(j, f);
    cr2 = std::max(cr2, max_residual({{1.0, op(pt, PointOp::delta, j)},
                                      {1.0, on(modified_time_derivative(j, SemigroupKind::poisson, t, r, 1))}}));
    cr5 = std::max(cr5, max_residual({{1.0, on(modified_time_derivative(j, SemigroupKind::poisson, t, r, 2))},
                                      {-1.0, op(u[j], PointOp::modified, j)}}));
  }
  report("cr2", cr2);

  std::vector<std::pair<double, std::vector<double>>> cr3_terms;
  for (int j = 0; j < d; ++j) cr3_terms.emplace_back(1.0, op(u[j], PointOp::delta_star, j));
  cr3_terms.emplace_back(1.0, on(time_derivative(SemigroupKind::poisson, t, f, 1)));
  report("cr3", max_residual(cr3_terms));
  report("cr5", cr5);

  // Supplementary system, driven by g = R_j f in the shifted-j basis.
  double hh1 = 0.0;
  double hh2 = 0.0;
  double hh3 = 0.0;
  for (int j = 0; j < d; ++j) {
    const Expansion g = riesz(j, f);
    const Expansion rbar = riesz_adjoint(j, g);
    const Expansion ubar = apply_poisson(t, rbar);
    const Expansion ptilde = apply_modified(j, SemigroupKind::poisson, t, g);
    hh1 = std::max(hh1, max_residual({{1.0, op(ptilde, PointOp::delta_star, j)},
                                      {1.0, on(time_derivative(SemigroupKind::poisson, t, rbar, 1))}}));
    if (d == 1) {
      hh2 = std::max(hh2, max_residual({{1.0, op(ubar, PointOp::delta, j)},
                                        {1.0, on(modified_time_derivative(j, SemigroupKind::poisson, t, g, 1))}}));
    }
    hh3 = std::max(hh3, max_residual({{1.0, on(time_derivative(SemigroupKind::poisson, t, rbar, 2))},
                                      {-1.0, op(ubar, PointOp::jacobi, j)}}));
  }
  report("hh1", hh1);
  if (d == 1) report("hh2", hh2);
  report("hh3", hh3);
  return out;
}

double hh4_coefficient_error(const Expansion& f, double t) {
  if (!f.basis().is_standard()) throw BasisMismatch("hh4_coefficient_error: standard basis only");
  const Expansion target = apply_poisson(2.0 * t, project_pi0(f));
  Expansion sum(f.params(), Basis::standard(), f.degree_cap() + 1);
  for (int j = 0; j < f.dim(); ++j) {
    const Expansion term = conjugate_poisson_adjoint(j, t, conjugate_poisson(j, t, f));
    for (const auto& [k, v] : term.coeffs()) sum.add(k, v);
  }
  double worst = 0.0;
  for (const auto& [k, v] : sum.coeffs()) worst = std::max(worst, std::abs(v - target.coeff(k)));
  for (const auto& [k, v] : target.coeffs()) worst = std::max(worst, std::abs(v - sum.coeff(k)));
  return worst;
}

}  // namespace jacobi
