#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "jacobi/expansion.hpp"
#include "jacobi/polycore.hpp"

namespace jacobi {

/// n-point Gauss rule for d mu_{(alpha,beta)} = (1-x)^alpha (1+x)^beta dx.
struct QuadRule1D {
  ParamPair params;
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Golub-Welsch on the Jacobi matrix, followed by Newton polishing of the
/// nodes and Christoffel weights. Throws SolverFailure if the eigensolver fails.
QuadRule1D gauss_jacobi(const ParamPair& p, int n);

/// Default node count per coordinate for degree cap N: max(2N + 8, 32).
int default_node_count(int N);

using PointFunction = std::function<double(std::span<const double>)>;

/// Tensor product of one-dimensional rules, flattened row-major (last
/// coordinate fastest).
class TensorGrid {
 public:
  explicit TensorGrid(std::vector<QuadRule1D> rules);
  /// Gauss rules for every coordinate of p, n nodes each.
  static TensorGrid gauss(const ParamVector& p, int n);

  int dim() const noexcept { return static_cast<int>(rules_.size()); }
  const QuadRule1D& rule(int i) const { return rules_.at(i); }
  std::size_t size() const noexcept { return size_; }
  std::vector<std::size_t> shape() const;

  /// Coordinates of flat node j.
  void point(std::size_t j, std::span<double> x) const;
  std::vector<double> point(std::size_t j) const;
  double weight(std::size_t j) const;

  /// Values of f at every node, in flat order.
  std::vector<double> sample(const PointFunction& f) const;
  /// sum_j w_j v_j.
  double integrate(std::span<const double> values) const;

  /// Same grid with coordinate i's rule replaced by rule.
  TensorGrid with_rule(int i, QuadRule1D rule) const;

 private:
  std::vector<QuadRule1D> rules_;
  std::size_t size_ = 1;
};

/// Values of an expansion at every grid node by sum factorization.
std::vector<double> synthesize_on(const Expansion& f, const TensorGrid& grid);

/// Dense coefficient tensor over the box [0, N]^d (row-major) contracted
/// coordinate by coordinate with per-coordinate matrices
/// tables[c][k * n_c + j] = factor_c(k, node j). Result is in grid flat order.
std::vector<double> contract_to_grid(std::span<const double> coeffs, int N,
                                     const std::vector<std::vector<double>>& tables,
                                     const std::vector<std::size_t>& nodes_per_coord);

/// a_k(f) = <f, P_k> / ||P_k||^2 for k <= N componentwise. Requires at least
/// N + 1 nodes per coordinate (InsufficientResolution otherwise).
Expansion fourier_coefficients(const PointFunction& f, const ParamVector& p, int N,
                               const TensorGrid& grid);
/// Same, from values already sampled on the grid.
Expansion fourier_coefficients(std::span<const double> values, const ParamVector& p, int N,
                               const TensorGrid& grid);

/// Coefficients against Phi_i P_k^{(alpha+e_i,beta+e_i)}. One factor Phi_i^2
/// is folded into the weight: coordinate i is integrated with the Gauss rule
/// of mu_{(alpha_i+1,beta_i+1)} (same node count as grid.rule(i)) applied to
/// f / Phi_i, which is exact for Phi_i-carrying band-limited f.
Expansion fourier_coefficients_shifted(int i, const PointFunction& f, const ParamVector& p,
                                       int N, const TensorGrid& grid);

/// (sum_j w_j |f_j|^p)^{1/p}; the maximum over nodes when p is infinite.
/// The infinite case is a lower bound of the true supremum.
double lp_norm(std::span<const double> values, double p, const TensorGrid& grid);

}  // namespace jacobi
