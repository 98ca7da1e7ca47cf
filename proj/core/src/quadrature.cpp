#include "jacobi/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "jacobi/errors.hpp"

namespace jacobi {

QuadRule1D gauss_jacobi(const ParamPair& p, int n) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi: node count must be positive");
  const double a = p.alpha();
  const double b = p.beta();
  const double ab = a + b;
  Eigen::VectorXd diag(n);
  Eigen::VectorXd off(std::max(n - 1, 1));
  diag[0] = (b - a) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    const double c = 2.0 * k + ab;
    diag[k] = (b * b - a * a) / (c * (c + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double c = 2.0 * k + ab;
    double sq;
    if (k == 1) {
      // The generic expression has a removable 0/0 at a + b = -1.
      sq = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      sq = 4.0 * k * (k + a) * (k + b) * (k + ab) / (c * c * (c + 1.0) * (c - 1.0));
    }
    off[k - 1] = std::sqrt(sq);
  }

  QuadRule1D rule{p, {}, {}};
  rule.nodes.resize(n);
  if (n == 1) {
    rule.nodes[0] = diag[0];
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, off.head(n - 1), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw SolverFailure("gauss_jacobi: tridiagonal eigensolver did not converge (n=" +
                          std::to_string(n) + ")");
    }
    for (int j = 0; j < n; ++j) rule.nodes[j] = solver.eigenvalues()[j];
  }

  // Newton polish on P_n, then Christoffel weights 1 / sum_k P_k(x)^2 / h_k.
  std::vector<double> norms(n);
  for (int k = 0; k < n; ++k) norms[k] = squared_norm(p, k);
  const ParamPair up = p.shifted();
  const double dfac = 0.5 * (n + ab + 1.0);
  rule.weights.resize(n);
  for (int j = 0; j < n; ++j) {
    double x = rule.nodes[j];
    for (int it = 0; it < 2; ++it) {
      const double f = jacobi_sweep(p, n, x)[n];
      const double df = dfac * jacobi_sweep(up, n - 1, x)[n - 1];
      if (df == 0.0 || !std::isfinite(f / df)) break;
      const double next = x - f / df;
      if (!(std::abs(next) < 1.0)) break;
      x = next;
    }
    rule.nodes[j] = x;
    const auto vals = jacobi_sweep(p, n - 1, x);
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += vals[k] * vals[k] / norms[k];
    rule.weights[j] = 1.0 / s;
  }
  for (int j = 0; j < n; ++j) {
    if (!(std::abs(rule.nodes[j]) < 1.0) || (j > 0 && !(rule.nodes[j] > rule.nodes[j - 1]))) {
      throw SolverFailure("gauss_jacobi: nodes not strictly increasing inside (-1,1)");
    }
  }
  return rule;
}

int default_node_count(int N) { return std::max(2 * N + 8, 32); }

TensorGrid::TensorGrid(std::vector<QuadRule1D> rules) : rules_(std::move(rules)) {
  if (rules_.empty()) throw std::invalid_argument("TensorGrid: no coordinates");
  for (const auto& r : rules_) size_ *= r.nodes.size();
}

TensorGrid TensorGrid::gauss(const ParamVector& p, int n) {
  std::vector<QuadRule1D> rules;
  for (int i = 0; i < p.dim(); ++i) rules.push_back(gauss_jacobi(p.pair(i), n));
  return TensorGrid(std::move(rules));
}

std::vector<std::size_t> TensorGrid::shape() const {
  std::vector<std::size_t> out;
  for (const auto& r : rules_) out.push_back(r.nodes.size());
  return out;
}

void TensorGrid::point(std::size_t j, std::span<double> x) const {
  for (int c = dim() - 1; c >= 0; --c) {
    const std::size_t n = rules_[c].nodes.size();
    x[c] = rules_[c].nodes[j % n];
    j /= n;
  }
}

std::vector<double> TensorGrid::point(std::size_t j) const {
  std::vector<double> x(dim());
  point(j, x);
  return x;
}

double TensorGrid::weight(std::size_t j) const {
  double w = 1.0;
  for (int c = dim() - 1; c >= 0; --c) {
    const std::size_t n = rules_[c].nodes.size();
    w *= rules_[c].weights[j % n];
    j /= n;
  }
  return w;
}

std::vector<double> TensorGrid::sample(const PointFunction& f) const {
  std::vector<double> out(size_);
  std::vector<double> x(dim());
  for (std::size_t j = 0; j < size_; ++j) {
    point(j, x);
    out[j] = f(x);
  }
  return out;
}

double TensorGrid::integrate(std::span<const double> values) const {
  if (values.size() != size_) throw std::invalid_argument("integrate: value count mismatch");
  double sum = 0.0;
  for (std::size_t j = 0; j < size_; ++j) sum += weight(j) * values[j];
  return sum;
}

TensorGrid TensorGrid::with_rule(int i, QuadRule1D rule) const {
  auto rules = rules_;
  rules.at(i) = std::move(rule);
  return TensorGrid(std::move(rules));
}

namespace {

/// Contracts one axis of a row-major tensor: out[pre, s, post] =
/// sum_r in[pre, r, post] * table[r * out_len + s].
std::vector<double> contract_axis(const std::vector<double>& in, std::vector<std::size_t>& shape,
                                  std::size_t axis, const std::vector<double>& table,
                                  std::size_t out_len) {
  const std::size_t in_len = shape[axis];
  std::size_t pre = 1;
  std::size_t post = 1;
  for (std::size_t a = 0; a < axis; ++a) pre *= shape[a];
  for (std::size_t a = axis + 1; a < shape.size(); ++a) post *= shape[a];
  std::vector<double> out(pre * out_len * post, 0.0);
  for (std::size_t p = 0; p < pre; ++p) {
    for (std::size_t r = 0; r < in_len; ++r) {
      const double* src = &in[(p * in_len + r) * post];
      for (std::size_t s = 0; s < out_len; ++s) {
        const double t = table[r * out_len + s];
        if (t == 0.0) continue;
        double* dst = &out[(p * out_len + s) * post];
        for (std::size_t q = 0; q < post; ++q) dst[q] += t * src[q];
      }
    }
  }
  shape[axis] = out_len;
  return out;
}

/// Per-coordinate tables basis_k(node j), layout k * n + j.
std::vector<std::vector<double>> basis_tables(const ParamVector& p, Basis b, int N,
                                              const TensorGrid& grid) {
  std::vector<std::vector<double>> tables(grid.dim());
  for (int c = 0; c < grid.dim(); ++c) {
    const auto& nodes = grid.rule(c).nodes;
    const std::size_t n = nodes.size();
    const bool shifted = b.shifted == c;
    const ParamPair pc = shifted ? p.pair(c).shifted() : p.pair(c);
    tables[c].assign((N + 1) * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const auto vals = jacobi_sweep(pc, N, nodes[j]);
      const double scale = shifted ? phi(nodes[j]) : 1.0;
      for (int k = 0; k <= N; ++k) tables[c][k * n + j] = scale * vals[k];
    }
  }
  return tables;
}

std::vector<double> dense_coefficients(const Expansion& f) {
  const int N = f.degree_cap();
  std::vector<double> dense(1, 0.0);
  std::size_t total = 1;
  for (int c = 0; c < f.dim(); ++c) total *= static_cast<std::size_t>(N + 1);
  dense.assign(total, 0.0);
  for (const auto& [k, v] : f.coeffs()) {
    std::size_t idx = 0;
    for (int c = 0; c < f.dim(); ++c) idx = idx * (N + 1) + k[c];
    dense[idx] = v;
  }
  return dense;
}

void check_resolution(const TensorGrid& grid, int N) {
  for (int c = 0; c < grid.dim(); ++c) {
    if (static_cast<int>(grid.rule(c).nodes.size()) < N + 1) {
      throw InsufficientResolution("grid has " + std::to_string(grid.rule(c).nodes.size()) +
                                   " nodes in coordinate " + std::to_string(c + 1) +
                                   ", degree cap " + std::to_string(N) + " needs at least " +
                                   std::to_string(N + 1));
    }
  }
}

Expansion analyse(std::span<const double> values, const ParamVector& p, Basis b, int N,
                  const TensorGrid& grid) {
  if (grid.dim() != p.dim()) throw std::invalid_argument("fourier_coefficients: dimension mismatch");
  if (values.size() != grid.size()) {
    throw std::invalid_argument("fourier_coefficients: value count mismatch");
  }
  check_resolution(grid, N);
  auto shape = grid.shape();
  std::vector<double> work(values.begin(), values.end());
  for (int c = 0; c < grid.dim(); ++c) {
    const auto& rule = grid.rule(c);
    const std::size_t n = rule.nodes.size();
    const bool shifted = b.shifted == c;
    const ParamPair pc = shifted ? p.pair(c).shifted() : p.pair(c);
    std::vector<double> table(n * (N + 1));
    for (std::size_t j = 0; j < n; ++j) {
      const auto vals = jacobi_sweep(pc, N, rule.nodes[j]);
      for (int k = 0; k <= N; ++k) {
        table[j * (N + 1) + k] = rule.weights[j] * vals[k] / squared_norm(pc, k);
      }
    }
    work = contract_axis(work, shape, c, table, N + 1);
  }
  Expansion out(p, b, N);
  const auto modes = box_modes(p.dim(), N);
  for (std::size_t m = 0; m < modes.size(); ++m) out.set(modes[m], work[m]);
  return out;
}

void check_rules_match(const ParamVector& p, const TensorGrid& grid) {
  if (grid.dim() != p.dim()) throw std::invalid_argument("grid dimension mismatch");
  for (int c = 0; c < p.dim(); ++c) {
    if (!(grid.rule(c).params == p.pair(c))) {
      throw BasisMismatch("grid rule in coordinate " + std::to_string(c + 1) +
                          " is not built for the expansion's parameters");
    }
  }
}

}  // namespace

std::vector<double> contract_to_grid(std::span<const double> coeffs, int N,
                                     const std::vector<std::vector<double>>& tables,
                                     const std::vector<std::size_t>& nodes_per_coord) {
  std::vector<std::size_t> shape(tables.size(), static_cast<std::size_t>(N + 1));
  std::vector<double> work(coeffs.begin(), coeffs.end());
  for (std::size_t c = 0; c < tables.size(); ++c) {
    work = contract_axis(work, shape, c, tables[c], nodes_per_coord[c]);
  }
  return work;
}

std::vector<double> synthesize_on(const Expansion& f, const TensorGrid& grid) {
  if (grid.dim() != f.dim()) throw std::invalid_argument("synthesize_on: dimension mismatch");
  const auto tables = basis_tables(f.params(), f.basis(), f.degree_cap(), grid);
  return contract_to_grid(dense_coefficients(f), f.degree_cap(), tables, grid.shape());
}

Expansion fourier_coefficients(const PointFunction& f, const ParamVector& p, int N,
                               const TensorGrid& grid) {
  check_rules_match(p, grid);
  check_resolution(grid, N);
  const auto values = grid.sample(f);
  return analyse(values, p, Basis::standard(), N, grid);
}

Expansion fourier_coefficients(std::span<const double> values, const ParamVector& p, int N,
                               const TensorGrid& grid) {
  check_rules_match(p, grid);
  return analyse(values, p, Basis::standard(), N, grid);
}

Expansion fourier_coefficients_shifted(int i, const PointFunction& f, const ParamVector& p, int N,
                                       const TensorGrid& grid) {
  check_rules_match(p, grid);
  check_resolution(grid, N);
  const int n = static_cast<int>(grid.rule(i).nodes.size());
  const TensorGrid folded = grid.with_rule(i, gauss_jacobi(p.pair(i).shifted(), n));
  const auto values = folded.sample([&](std::span<const double> x) { return f(x) / phi(x[i]); });
  return analyse(values, p, Basis::shifted_in(i), N, folded);
}

double lp_norm(std::span<const double> values, double p, const TensorGrid& grid) {
  if (!(p >= 1.0)) throw std::domain_error("lp_norm: p must be at least 1");
  if (values.size() != grid.size()) throw std::invalid_argument("lp_norm: value count mismatch");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    sum += grid.weight(j) * std::pow(std::abs(values[j]), p);
  }
  return std::pow(sum, 1.0 / p);
}

}  // namespace jacobi
