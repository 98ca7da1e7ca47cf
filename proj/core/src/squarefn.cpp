#include "jacobi/squarefn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jacobi/conjugacy.hpp"
#include "jacobi/errors.hpp"
#include "jacobi/parallel.hpp"

namespace jacobi {

std::string to_string(GVariant v) { return v == GVariant::full ? "full" : "vertical"; }
std::string to_string(GMethod m) {
  return m == GMethod::closed_form ? "closed-form" : "t-quadrature";
}

namespace {

/// Per-mode data at one point: rate s_k, a_k s_k basis_k(x) and a_k delta_j basis_k(x).
struct ModeData {
  std::vector<double> rate;
  std::vector<double> u;
  std::vector<std::vector<double>> w;  // w[j][n]
};

ModeData standard_modes(const Expansion& f, std::span<const double> x, bool with_delta) {
  if (!f.basis().is_standard()) throw BasisMismatch("g_function: standard basis only");
  const auto values = mode_values(f, PointOp::value, 0, x);
  std::vector<std::vector<double>> deltas;
  if (with_delta) {
    for (int j = 0; j < f.dim(); ++j) deltas.push_back(mode_values(f, PointOp::delta, j, x));
  }
  ModeData out;
  out.w.resize(deltas.size());
  std::size_t n = 0;
  for (const auto& [k, a] : f.coeffs()) {
    const double lambda = f.params().eigenvalue(k);
    if (lambda > 0.0) {
      const double s = std::sqrt(lambda);
      out.rate.push_back(s);
      out.u.push_back(a * s * values[n]);
      for (std::size_t j = 0; j < deltas.size(); ++j) out.w[j].push_back(a * deltas[j][n]);
    }
    ++n;
  }
  return out;
}

ModeData shifted_modes(int i, const Expansion& g, std::span<const double> x) {
  if (g.basis().shifted != i) {
    throw BasisMismatch("g_tilde: expected a shifted-" + std::to_string(i + 1) + " expansion, got " +
                        g.basis().to_string());
  }
  const auto values = mode_values(g, PointOp::value, 0, x);
  ModeData out;
  std::size_t n = 0;
  for (const auto& [k, a] : g.coeffs()) {
    MultiIndex up = k;
    ++up[i];
    const double s = std::sqrt(g.params().eigenvalue(up));
    out.rate.push_back(s);
    out.u.push_back(a * s * values[n]);
    ++n;
  }
  return out;
}

double closed_form(const ModeData& m) {
  const std::size_t n = m.rate.size();
  double sum = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      double num = m.u[a] * m.u[b];
      for (const auto& w : m.w) num += w[a] * w[b];
      const double r = m.rate[a] + m.rate[b];
      sum += num / (r * r);
    }
  }
  return std::sqrt(std::max(sum, 0.0));
}

double by_quadrature(const ModeData& m, const TimeRule& rule) {
  double sum = 0.0;
  for (std::size_t q = 0; q < rule.t.size(); ++q) {
    const double t = rule.t[q];
    double dt = 0.0;
    std::vector<double> dj(m.w.size(), 0.0);
    for (std::size_t n = 0; n < m.rate.size(); ++n) {
      const double e = std::exp(-t * m.rate[n]);
      dt += e * m.u[n];
      for (std::size_t j = 0; j < m.w.size(); ++j) dj[j] += e * m.w[j][n];
    }
    double sq = dt * dt;
    for (double v : dj) sq += v * v;
    sum += rule.w[q] * t * sq;
  }
  return std::sqrt(sum);
}

}  // namespace

double g_function(const Expansion& f, std::span<const double> x, GVariant variant) {
  return closed_form(standard_modes(f, x, variant == GVariant::full));
}

double g_tilde(int i, const Expansion& g, std::span<const double> x) {
  return closed_form(shifted_modes(i, g, x));
}

TimeRule log_time_rule(double t_lo, double t_hi, int n) {
  if (!(t_lo > 0.0) || !(t_hi > t_lo) || n < 1) throw std::invalid_argument("log_time_rule: bad range");
  const QuadRule1D gl = gauss_jacobi(ParamPair(0.0, 0.0), n);
  const double a = std::log(t_lo);
  const double b = std::log(t_hi);
  TimeRule rule;
  for (int q = 0; q < n; ++q) {
    const double s = 0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[q];
    const double t = std::exp(s);
    rule.t.push_back(t);
    rule.w.push_back(0.5 * (b - a) * gl.weights[q] * t);  // dt = t ds
  }
  return rule;
}

double g_function_quadrature(const Expansion& f, std::span<const double> x, GVariant variant,
                             const TimeRule& rule) {
  return by_quadrature(standard_modes(f, x, variant == GVariant::full), rule);
}

double g_tilde_quadrature(int i, const Expansion& g, std::span<const double> x,
                          const TimeRule& rule) {
  return by_quadrature(shifted_modes(i, g, x), rule);
}

GFunctionResult evaluate_square_function(const Expansion& f, int coord, GVariant variant,
                                         const std::vector<std::vector<double>>& points,
                                         GMethod method) {
  GFunctionResult out;
  out.points = points;
  out.method = method;
  out.values.resize(points.size());
  std::vector<double> residual(points.size());
  const TimeRule rule = log_time_rule();
  parallel_for(points.size(), [&](std::size_t n) {
    const auto& x = points[n];
    const ModeData m = coord < 0 ? standard_modes(f, x, variant == GVariant::full)
                                 : shifted_modes(coord, f, x);
    const double exact = closed_form(m);
    const double quad = by_quadrature(m, rule);
    out.values[n] = method == GMethod::closed_form ? exact : quad;
    residual[n] = std::abs(exact - quad);
  });
  for (double r : residual) out.cross_residual = std::max(out.cross_residual, r);
  return out;
}

DominationReport verify_domination(const Expansion& f, const TensorGrid& grid, double slack) {
  if (!f.basis().is_standard()) throw BasisMismatch("verify_domination: standard basis only");
  const int d = f.dim();
  std::vector<Expansion> r;
  for (int i = 0; i < d; ++i) r.push_back(riesz(i, f));
  std::vector<double> g(grid.size());
  std::vector<std::vector<double>> gt(grid.size(), std::vector<double>(d));
  parallel_for(grid.size(), [&](std::size_t n) {
    const auto x = grid.point(n);
    g[n] = g_function(f, x);
    for (int i = 0; i < d; ++i) gt[n][i] = g_tilde(i, r[i], x);
  });
  DominationReport out{
      .params = f.params(), .points_checked = grid.size(), .max_excess = -INFINITY, .violations = {}};
  for (std::size_t n = 0; n < grid.size(); ++n) {
    for (int i = 0; i < d; ++i) {
      const double excess = gt[n][i] - g[n];
      out.max_excess = std::max(out.max_excess, excess);
      if (excess > slack) out.violations.push_back({i, grid.point(n), gt[n][i], g[n]});
    }
  }
  return out;
}

EnergyReport verify_energy_identity(const Expansion& f, const TensorGrid& grid) {
  if (!f.basis().is_standard()) throw BasisMismatch("verify_energy_identity: standard basis only");
  const auto values = synthesize_on(f, grid);
  std::vector<double> g2(grid.size());
  parallel_for(grid.size(), [&](std::size_t n) {
    const double g = g_function(f, grid.point(n));
    g2[n] = g * g;
  });
  double lhs = 0.0;
  double f2 = 0.0;
  double f1 = 0.0;
  double mass = 0.0;
  for (std::size_t n = 0; n < grid.size(); ++n) {
    const double w = grid.weight(n);
    lhs += 2.0 * w * g2[n];
    f2 += w * values[n] * values[n];
    f1 += w * values[n];
    mass += w;
  }
  EnergyReport out{.params = f.params()};
  out.lhs = lhs;
  out.rhs = f2 - f1 * f1 / mass;
  // Relative to ||f||^2 so that f = const (both sides zero) stays well defined.
  out.relative_error = f2 > 0.0 ? std::abs(out.lhs - out.rhs) / f2 : std::abs(out.lhs - out.rhs);
  return out;
}

}  // namespace jacobi
