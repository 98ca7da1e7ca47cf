#include "jacobi/conjugacy.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "jacobi/errors.hpp"

namespace jacobi {

namespace {

void require_standard(const Expansion& f, const char* op) {
  if (!f.basis().is_standard()) {
    throw BasisMismatch(std::string(op) + ": expected a standard-basis expansion, got " +
                        f.basis().to_string());
  }
}

void require_shifted(const Expansion& f, int i, const char* op) {
  if (f.basis().shifted != i) {
    throw BasisMismatch(std::string(op) + ": expected a shifted-" + std::to_string(i + 1) +
                        " expansion, got " + f.basis().to_string());
  }
}

void check_coord(const Expansion& f, int i) {
  if (i < 0 || i >= f.dim()) throw std::invalid_argument("coordinate index out of range");
}

int raised_cap(const Expansion& g, int i) {
  for (const auto& [m, v] : g.coeffs())
    if (m[i] >= g.degree_cap()) return g.degree_cap() + 1;
  return g.degree_cap();
}

}  // namespace

Expansion riesz(int i, const Expansion& f) {
  require_standard(f, "riesz");
  check_coord(f, i);
  const ParamVector& p = f.params();
  Expansion out(p, Basis::shifted_in(i), f.degree_cap());
  for (const auto& [k, v] : f.coeffs()) {
    if (k[i] == 0) continue;
    const double lambda = p.eigenvalue(k);
    assert(lambda > 0.0);
    MultiIndex m = k;
    --m[i];
    out.set(m, v * 0.5 * (k[i] + p.alpha(i) + p.beta(i) + 1.0) / std::sqrt(lambda));
  }
  return out;
}

Expansion riesz_adjoint(int i, const Expansion& g) {
  require_shifted(g, i, "riesz_adjoint");
  const ParamVector& p = g.params();
  Expansion out(p, Basis::standard(), raised_cap(g, i));
  for (const auto& [m, v] : g.coeffs()) {
    MultiIndex k = m;
    ++k[i];
    out.set(k, v * 2.0 * k[i] / std::sqrt(p.eigenvalue(k)));
  }
  return out;
}

Expansion conjugate_poisson(int i, double t, const Expansion& f) {
  if (t < 0.0) throw std::domain_error("conjugate_poisson: t must be nonnegative");
  const Expansion r = riesz(i, f);
  if (t == 0.0) return r;
  return apply_modified(i, SemigroupKind::poisson, t, r);
}

Expansion conjugate_poisson_series(int i, double t, const Expansion& f) {
  require_standard(f, "conjugate_poisson_series");
  check_coord(f, i);
  const ParamVector& p = f.params();
  Expansion out(p, Basis::shifted_in(i), f.degree_cap());
  for (const auto& [k, v] : f.coeffs()) {
    if (k[i] == 0) continue;
    const double s = std::sqrt(p.eigenvalue(k));
    MultiIndex m = k;
    --m[i];
    out.set(m, v * (k[i] + p.alpha(i) + p.beta(i) + 1.0) / (2.0 * s) * std::exp(-t * s));
  }
  return out;
}

Expansion conjugate_poisson_adjoint(int i, double t, const Expansion& g) {
  if (t < 0.0) throw std::domain_error("conjugate_poisson_adjoint: t must be nonnegative");
  const Expansion r = riesz_adjoint(i, g);
  if (t == 0.0) return r;
  return apply_poisson(t, r);
}

Expansion delta_apply(int j, const Expansion& f, DeltaDirection dir) {
  check_coord(f, j);
  const ParamVector& p = f.params();
  if (dir == DeltaDirection::delta && f.basis().is_standard()) {
    Expansion out(p, Basis::shifted_in(j), f.degree_cap());
    for (const auto& [k, v] : f.coeffs()) {
      if (k[j] == 0) continue;
      MultiIndex m = k;
      --m[j];
      out.set(m, v * 0.5 * (k[j] + p.alpha(j) + p.beta(j) + 1.0));
    }
    return out;
  }
  if (dir == DeltaDirection::delta_star && f.basis().shifted == j) {
    Expansion out(p, Basis::standard(), raised_cap(f, j));
    for (const auto& [m, v] : f.coeffs()) {
      MultiIndex k = m;
      ++k[j];
      out.set(k, v * 2.0 * k[j]);
    }
    return out;
  }
  throw BasisMismatch("delta_apply: no spectral image for " +
                      std::string(dir == DeltaDirection::delta ? "delta_" : "delta*_") +
                      std::to_string(j + 1) + " on a " + f.basis().to_string() + " expansion");
}

ConjugateField conjugate_field(const Expansion& f, double t) {
  Expansion scalar = apply_poisson(t, project_pi0(f));
  Expansion negated(scalar.params(), scalar.basis(), scalar.degree_cap());
  for (const auto& [k, v] : scalar.coeffs()) negated.set(k, -v);
  ConjugateField out{t, std::move(negated), {}};
  for (int i = 0; i < f.dim(); ++i) out.components.push_back(conjugate_poisson(i, t, f));
  return out;
}

Expansion potential_expansion(const Expansion& f, double t) {
  require_standard(f, "potential_expansion");
  Expansion out(f.params(), f.basis(), f.degree_cap());
  for (const auto& [k, v] : f.coeffs()) {
    const double lambda = f.params().eigenvalue(k);
    if (lambda == 0.0) continue;
    const double s = std::sqrt(lambda);
    out.set(k, v * std::exp(-t * s) / s);
  }
  return out;
}

double potential_function(const Expansion& f, double t, std::span<const double> x) {
  return potential_expansion(f, t).synthesize(x);
}

namespace {

/// Values and first two derivatives of every 1D basis factor at x, degree <= N.
struct FactorTable {
  std::vector<double> v, d1, d2;
};

FactorTable factor_table(const ParamPair& p, bool shifted, int N, double x) {
  const ParamPair q = shifted ? p.shifted() : p;
  const double a = q.alpha();
  const double b = q.beta();
  const auto P = jacobi_sweep(q, N, x);
  const auto P1 = jacobi_sweep(q.shifted(), std::max(N - 1, 0), x);
  const auto P2 = jacobi_sweep(ParamPair(a + 2.0, b + 2.0), std::max(N - 2, 0), x);
  FactorTable t;
  t.v.resize(N + 1);
  t.d1.resize(N + 1);
  t.d2.resize(N + 1);
  for (int k = 0; k <= N; ++k) {
    const double f = P[k];
    const double f1 = k >= 1 ? 0.5 * (k + a + b + 1.0) * P1[k - 1] : 0.0;
    const double f2 = k >= 2 ? 0.25 * (k + a + b + 1.0) * (k + a + b + 2.0) * P2[k - 2] : 0.0;
    if (!shifted) {
      t.v[k] = f;
      t.d1[k] = f1;
      t.d2[k] = f2;
    } else {
      // (Phi f)' = Phi f' - x f / Phi, (Phi f)'' = Phi f'' - 2 x f' / Phi - f / Phi^3
      const double ph = phi(x);
      t.v[k] = ph * f;
      t.d1[k] = ph * f1 - x * f / ph;
      t.d2[k] = ph * f2 - 2.0 * x * f1 / ph - f / (ph * ph * ph);
    }
  }
  return t;
}

/// Applies the requested one-dimensional operator to every factor of coordinate c.
std::vector<double> operator_row(const FactorTable& t, const ParamPair& p, PointOp op, double x,
                                 bool with_commutator) {
  const double a = p.alpha();
  const double b = p.beta();
  const double ph = phi(x);
  std::vector<double> out(t.v.size());
  for (std::size_t k = 0; k < t.v.size(); ++k) {
    switch (op) {
      case PointOp::value:
        out[k] = t.v[k];
        break;
      case PointOp::delta:
        out[k] = ph * t.d1[k];
        break;
      case PointOp::delta_star:
        out[k] = -ph * t.d1[k] + ((a - b) + (a + b + 1.0) * x) / ph * t.v[k];
        break;
      case PointOp::jacobi:
      case PointOp::modified:
        out[k] = -(1.0 - x * x) * t.d2[k] - ((b - a) - (a + b + 2.0) * x) * t.d1[k];
        if (with_commutator) {
          out[k] += ((a + 0.5) / (1.0 - x) + (b + 0.5) / (1.0 + x)) * t.v[k];
        }
        break;
    }
  }
  return out;
}

/// Adds the per-mode products of the coordinate rows to out (coeffs() order).
void accumulate(const Expansion& f, const std::vector<std::vector<double>>& rows,
                std::vector<double>& out) {
  std::size_t n = 0;
  for (const auto& entry : f.coeffs()) {
    const MultiIndex& k = entry.first;
    double term = 1.0;
    for (int c = 0; c < f.dim(); ++c) term *= rows[c][k[c]];
    out[n++] += term;
  }
}

}  // namespace

std::vector<double> mode_values(const Expansion& f, PointOp op, int j, std::span<const double> x) {
  const int d = f.dim();
  if (static_cast<int>(x.size()) != d) throw std::invalid_argument("mode_values: point dimension");
  if (op != PointOp::value && op != PointOp::jacobi) check_coord(f, j);
  std::vector<FactorTable> tables;
  std::vector<std::vector<double>> values(d);
  for (int c = 0; c < d; ++c) {
    if (!(std::abs(x[c]) < 1.0)) throw std::domain_error("mode_values: point outside (-1,1)^d");
    tables.push_back(factor_table(f.params().pair(c), f.basis().shifted == c, f.degree_cap(), x[c]));
    values[c] = tables[c].v;
  }
  std::vector<double> out(f.coeffs().size(), 0.0);
  if (op == PointOp::value) {
    accumulate(f, values, out);
  } else if (op == PointOp::jacobi || op == PointOp::modified) {
    for (int c = 0; c < d; ++c) {
      auto rows = values;
      rows[c] = operator_row(tables[c], f.params().pair(c), PointOp::jacobi, x[c],
                             op == PointOp::modified && c == j);
      accumulate(f, rows, out);
    }
  } else {
    auto rows = values;
    rows[j] = operator_row(tables[j], f.params().pair(j), op, x[j], false);
    accumulate(f, rows, out);
  }
  return out;
}

double evaluate_operator(const Expansion& f, PointOp op, int j, std::span<const double> x) {
  const auto values = mode_values(f, op, j, x);
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& entry : f.coeffs()) sum += entry.second * values[n++];
  return sum;
}

std::vector<double> evaluate_operator_on(const Expansion& f, PointOp op, int j,
                                         const TensorGrid& grid) {
  std::vector<double> out(grid.size());
  std::vector<double> x(grid.dim());
  for (std::size_t n = 0; n < grid.size(); ++n) {
    grid.point(n, x);
    out[n] = evaluate_operator(f, op, j, x);
  }
  return out;
}

double evaluate_delta_fd(const Expansion& f, int j, std::span<const double> x, double h) {
  std::vector<double> lo(x.begin(), x.end());
  std::vector<double> hi(x.begin(), x.end());
  lo[j] -= h;
  hi[j] += h;
  return phi(x[j]) * (f.synthesize(hi) - f.synthesize(lo)) / (2.0 * h);
}

double naive_adjoint_riesz_partial_norm(const ParamPair& p, double eps) {
  if (!(eps > 0.0) || !(eps < 1.0)) throw std::domain_error("eps must lie in (0, 1)");
  const double a = p.alpha();
  const double b = p.beta();
  const double lambda = eigenvalue(p, 1).lambda;
  // delta^* P_1 with P_1 = ((a+b+2) x + (a-b)) / 2, P_1' = (a+b+2) / 2.
  auto g = [&](double x) {
    const double ph = phi(x);
    const double p1 = 0.5 * ((a + b + 2.0) * x + (a - b));
    const double dp1 = 0.5 * (a + b + 2.0);
    return (-ph * dp1 + ((a - b) + (a + b + 1.0) * x) / ph * p1) / std::sqrt(lambda);
  };
  // Composite Gauss-Legendre on panels geometrically refined toward both ends.
  const QuadRule1D gl = gauss_jacobi(ParamPair(0.0, 0.0), 20);
  std::vector<double> cuts{0.0};
  for (double r = 0.5; r > eps; r *= 0.5) cuts.push_back(1.0 - r);
  cuts.push_back(1.0 - eps);
  double sum = 0.0;
  for (double sign : {-1.0, 1.0}) {
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const double lo = cuts[c];
      const double hi = cuts[c + 1];
      for (std::size_t n = 0; n < gl.nodes.size(); ++n) {
        const double y = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gl.nodes[n];
        const double x = sign * y;
        const double w = 0.5 * (hi - lo) * gl.weights[n] * std::pow(1.0 - x, a) * std::pow(1.0 + x, b);
        sum += w * g(x) * g(x);
      }
    }
  }
  return sum;
}

DominatedSupReport verify_dominated_sup(const Expansion& f, std::span<const double> xs,
                                        std::span<const double> times, int K, int nodes,
                                        double slack) {
  require_standard(f, "verify_dominated_sup");
  if (f.dim() != 1) throw std::invalid_argument("verify_dominated_sup: one dimension only");
  const ParamVector& pv = f.params();
  const ParamPair& p = pv.pair(0);
  const Expansion g = riesz(0, f);

  // Coefficients of |g| in the standard basis.
  const QuadRule1D rule = gauss_jacobi(p, nodes);
  std::vector<double> b(K + 1, 0.0);
  for (std::size_t n = 0; n < rule.nodes.size(); ++n) {
    const double x = rule.nodes[n];
    const double absg = std::abs(g.synthesize(std::span<const double>(&x, 1)));
    const auto vals = jacobi_sweep(p, K, x);
    for (int k = 0; k <= K; ++k) b[k] += rule.weights[n] * absg * vals[k];
  }
  std::vector<double> rates(K + 1);
  for (int k = 0; k <= K; ++k) {
    b[k] /= squared_norm(p, k);
    rates[k] = std::sqrt(eigenvalue(p, k).lambda);
  }

  DominatedSupReport out;
  out.xs.assign(xs.begin(), xs.end());
  out.worst_excess = -INFINITY;
  out.worst_sup_excess = -INFINITY;
  std::vector<bool> usable(times.size());
  for (std::size_t ti = 0; ti < times.size(); ++ti) {
    usable[ti] = std::exp(-times[ti] * rates[K]) * (K + 1) <= 1e-16;
    (usable[ti] ? out.times_checked : out.times_skipped) += 1;
  }
  std::vector<Expansion> fields;
  for (double t : times) fields.push_back(conjugate_poisson(0, t, f));
  for (double x : xs) {
    const double gx = std::abs(g.synthesize(std::span<const double>(&x, 1)));
    const auto vals = jacobi_sweep(p, K, x);
    double lhs_sup = 0.0;
    double rhs_lower = gx;  // P_t|g|(x) -> |g(x)| as t -> 0
    for (std::size_t ti = 0; ti < times.size(); ++ti) {
      const double t = times[ti];
      const double u = std::abs(fields[ti].synthesize(std::span<const double>(&x, 1)));
      lhs_sup = std::max(lhs_sup, u);
      if (!usable[ti]) continue;
      double pg = 0.0;
      for (int k = 0; k <= K; ++k) pg += std::exp(-t * rates[k]) * b[k] * vals[k];
      rhs_lower = std::max(rhs_lower, pg);
      out.worst_excess = std::max(out.worst_excess, u - pg);
    }
    out.worst_sup_excess = std::max(out.worst_sup_excess, lhs_sup - rhs_lower);
  }
  out.holds = out.worst_excess <= slack && out.worst_sup_excess <= slack;
  return out;
}

}  // namespace jacobi
