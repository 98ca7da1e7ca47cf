#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jacobi/quadrature.hpp"
#include "jacobi/spectral.hpp"

namespace jacobi {

namespace {

/// Multi-indices with |k| = s.
void shell_modes(int dim, int s, MultiIndex& k, int pos, std::vector<MultiIndex>& out) {
  if (pos == dim - 1) {
    k[pos] = s;
    out.push_back(k);
    return;
  }
  for (int v = 0; v <= s; ++v) {
    k[pos] = v;
    shell_modes(dim, s - v, k, pos + 1, out);
  }
}

std::vector<MultiIndex> shell(int dim, int s) {
  std::vector<MultiIndex> out;
  MultiIndex k(dim, 0);
  shell_modes(dim, s, k, 0, out);
  return out;
}

/// table[c][k][a] = factor_k(x_a[c]) / sqrt(norm_c(k)) for k <= K.
using NormalizedTables = std::vector<std::vector<std::vector<double>>>;

NormalizedTables normalized(const std::vector<ParamPair>& pairs, int shifted_coord,
                            const std::vector<std::vector<double>>& pts, int K) {
  NormalizedTables out(pairs.size());
  for (std::size_t c = 0; c < pairs.size(); ++c) {
    std::vector<double> inv_norm(K + 1);
    for (int k = 0; k <= K; ++k) inv_norm[k] = 1.0 / std::sqrt(squared_norm(pairs[c], k));
    out[c].assign(K + 1, std::vector<double>(pts.size()));
    for (std::size_t a = 0; a < pts.size(); ++a) {
      const double x = pts[a].at(c);
      if (!(std::abs(x) < 1.0)) throw std::domain_error("kernel table: point outside (-1,1)^d");
      const auto vals = jacobi_sweep(pairs[c], K, x);
      const double scale = static_cast<int>(c) == shifted_coord ? phi(x) : 1.0;
      for (int k = 0; k <= K; ++k) out[c][k][a] = scale * vals[k] * inv_norm[k];
    }
  }
  return out;
}

struct ShellSum {
  std::vector<double> values;
  int max_degree = 0;
  double residual = 0.0;
  bool converged = false;
};

/// sum over shells |k| = 0..K of exp(-t eigen(k)) u_k(x_a) u_k(y_b).
template <class Eigen>
ShellSum sum_shells(double t, int dim, const NormalizedTables& tx, const NormalizedTables& ty,
                    std::size_t nx, std::size_t ny, int K, Eigen eigen) {
  ShellSum out;
  out.values.assign(nx * ny, 0.0);
  std::vector<double> shell_values(nx * ny);
  std::vector<double> ux(nx);
  std::vector<double> uy(ny);
  double running_max = 0.0;
  int quiet_shells = 0;
  for (int s = 0; s <= K; ++s) {
    std::fill(shell_values.begin(), shell_values.end(), 0.0);
    for (const auto& k : shell(dim, s)) {
      const double m = std::exp(-t * eigen(k));
      if (m == 0.0) continue;
      std::fill(ux.begin(), ux.end(), m);
      std::fill(uy.begin(), uy.end(), 1.0);
      for (int c = 0; c < dim; ++c) {
        for (std::size_t a = 0; a < nx; ++a) ux[a] *= tx[c][k[c]][a];
        for (std::size_t b = 0; b < ny; ++b) uy[b] *= ty[c][k[c]][b];
      }
      for (std::size_t a = 0; a < nx; ++a)
        for (std::size_t b = 0; b < ny; ++b) shell_values[a * ny + b] += ux[a] * uy[b];
    }
    double shell_max = 0.0;
    for (std::size_t j = 0; j < out.values.size(); ++j) {
      out.values[j] += shell_values[j];
      shell_max = std::max(shell_max, std::abs(shell_values[j]));
      running_max = std::max(running_max, std::abs(out.values[j]));
    }
    out.max_degree = s;
    out.residual = shell_max;
    // Two consecutive negligible shells guard against a shell that vanishes by symmetry.
    quiet_shells = shell_max <= 1e-12 * running_max ? quiet_shells + 1 : 0;
    if (s >= 2 && quiet_shells >= 2) break;
  }
  out.converged = out.residual <= 1e-10 * running_max;
  return out;
}

std::vector<ParamPair> pairs_of(const ParamVector& p) {
  std::vector<ParamPair> out;
  for (int c = 0; c < p.dim(); ++c) out.push_back(p.pair(c));
  return out;
}

void check_points(const ParamVector& p, const std::vector<std::vector<double>>& pts) {
  for (const auto& x : pts) {
    if (static_cast<int>(x.size()) != p.dim()) {
      throw std::invalid_argument("kernel table: point dimension mismatch");
    }
  }
}

}  // namespace

std::vector<std::vector<double>> as_points(std::span<const double> xs) {
  std::vector<std::vector<double>> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back({x});
  return out;
}

std::vector<double> interior_points(int n) {
  if (n < 1) throw std::invalid_argument("interior_points: n must be positive");
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) out[j] = -1.0 + 2.0 * (j + 1) / (n + 1);
  return out;
}

KernelTable heat_kernel_table(double t, const ParamVector& p,
                              const std::vector<std::vector<double>>& xs,
                              const std::vector<std::vector<double>>& ys, int K) {
  if (!(t > 0.0)) throw std::domain_error("heat_kernel_table: t must be positive");
  check_points(p, xs);
  check_points(p, ys);
  const auto pairs = pairs_of(p);
  const auto tx = normalized(pairs, -1, xs, K);
  const auto ty = normalized(pairs, -1, ys, K);
  const auto sum = sum_shells(t, p.dim(), tx, ty, xs.size(), ys.size(), K,
                              [&](const MultiIndex& k) { return p.eigenvalue(k); });
  KernelTable out{.t = t, .params = p, .variant = KernelVariant::heat, .xs = xs, .ys = ys, .values = {}};
  out.values = sum.values;
  out.max_degree = sum.max_degree;
  out.residual = sum.residual;
  out.converged = sum.converged;
  return out;
}

KernelTable modified_kernel_table(int i, double t, const ParamVector& p,
                                  const std::vector<std::vector<double>>& xs,
                                  const std::vector<std::vector<double>>& ys, int K) {
  if (i < 0 || i >= p.dim()) throw std::invalid_argument("modified_kernel_table: bad coordinate");
  // Delegation: shifted-parameter heat kernel times the Phi factors.
  KernelTable out = heat_kernel_table(t, p.shifted(i), xs, ys, K);
  out.params = p;
  out.variant = KernelVariant::modified;
  out.modified_coord = i;
  const double damp = std::exp(-t * (p.alpha(i) + p.beta(i) + 2.0));
  for (std::size_t a = 0; a < xs.size(); ++a) {
    for (std::size_t b = 0; b < ys.size(); ++b) {
      out.values[a * ys.size() + b] *= damp * phi(xs[a][i]) * phi(ys[b][i]);
    }
  }
  // Direct series over the shifted basis with eigenvalues lambda_{k+e_i}.
  auto pairs = pairs_of(p);
  pairs[i] = pairs[i].shifted();
  const auto tx = normalized(pairs, i, xs, K);
  const auto ty = normalized(pairs, i, ys, K);
  const auto direct = sum_shells(t, p.dim(), tx, ty, xs.size(), ys.size(), K,
                                 [&](const MultiIndex& k) {
                                   MultiIndex up = k;
                                   ++up[i];
                                   return p.eigenvalue(up);
                                 });
  double worst = 0.0;
  for (std::size_t j = 0; j < out.values.size(); ++j) {
    worst = std::max(worst, std::abs(out.values[j] - direct.values[j]));
  }
  out.path_discrepancy = worst;
  out.converged = out.converged && direct.converged;
  return out;
}

KernelComparison compare_kernels(int i, double t, const ParamVector& p,
                                 const std::vector<std::vector<double>>& xs, int K) {
  const KernelTable plain = heat_kernel_table(t, p, xs, xs, K);
  const KernelTable modified = modified_kernel_table(i, t, p, xs, xs, K);
  KernelComparison out;
  out.t = t;
  out.converged = plain.converged && modified.converged;
  out.path_discrepancy = modified.path_discrepancy;
  out.max_excess = -INFINITY;
  for (std::size_t a = 0; a < xs.size(); ++a) {
    for (std::size_t b = 0; b < xs.size(); ++b) {
      const double excess = modified.at(a, b) - plain.at(a, b);
      if (excess > out.max_excess) {
        out.max_excess = excess;
        out.worst_point = xs[a];
        out.worst_point.insert(out.worst_point.end(), xs[b].begin(), xs[b].end());
      }
    }
  }
  return out;
}

ModifiedOnOne modified_semigroup_on_one(SemigroupKind kind, double t, const ParamPair& p,
                                        std::span<const double> xs, int max_terms) {
  if (!(t > 0.0)) throw std::domain_error("modified_semigroup_on_one: t must be positive");
  const ParamPair up = p.shifted();
  // Phi dmu_{(a,b)} = dmu_{(a+1/2,b+1/2)}, so c_k needs int P_k^{(a+1,b+1)} dmu_{(a+1/2,b+1/2)}.
  const ParamPair half(p.alpha() + 0.5, p.beta() + 0.5);
  const double ab2 = p.alpha() + p.beta() + 2.0;
  auto multiplier = [&](int k) {
    const double lambda = eigenvalue(up, k).lambda + ab2;
    return std::exp(-t * (kind == SemigroupKind::heat ? lambda : std::sqrt(lambda)));
  };
  // Truncate where the multiplier is negligible.
  int K = 0;
  while (K < max_terms && multiplier(K) > 1e-17) ++K;
  const QuadRule1D rule = gauss_jacobi(half, K / 2 + 2);
  std::vector<double> c(K + 1, 0.0);
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    const auto vals = jacobi_sweep(up, K, rule.nodes[j]);
    for (int k = 0; k <= K; ++k) c[k] += rule.weights[j] * vals[k];
  }
  for (int k = 0; k <= K; ++k) c[k] *= multiplier(k) / squared_norm(up, k);

  ModifiedOnOne out;
  out.xs.assign(xs.begin(), xs.end());
  out.terms = K + 1;
  out.max_value = -INFINITY;
  for (double x : xs) {
    if (!(std::abs(x) < 1.0)) throw std::domain_error("modified_semigroup_on_one: x outside (-1,1)");
    const auto vals = jacobi_sweep(up, K, x);
    double sum = 0.0;
    for (int k = 0; k <= K; ++k) sum += c[k] * vals[k];
    const double value = phi(x) * sum;
    out.values.push_back(value);
    if (value > out.max_value) {
      out.max_value = value;
      out.last_term = std::abs(phi(x) * c[K] * vals[K]);
    }
  }
  return out;
}

}  // namespace jacobi
