#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jacobi/expansion.hpp"

namespace jacobi {

/// Operator under probe. Names: "riesz-<i>", "conjugate-poisson-<i>", "heat",
/// "poisson" and "riesz-vector" (|R f|_{l^2}, exploratory); i is 1-based.
struct ProbeOperator {
  enum class Kind { riesz, conjugate_poisson, heat, poisson, riesz_vector };
  Kind kind = Kind::poisson;
  int coord = 0;  // 0-based
  double t = 0.5;

  std::string name() const;
  /// Throws std::invalid_argument on an unknown name.
  static ProbeOperator parse(const std::string& name, double t = 0.5);
};

struct NormProbeReport {
  std::string op;
  double p = 2.0;
  int dim = 1;
  int degree_cap = 0;
  int samples = 0;
  double best_ratio = 0.0;  // lower bound for the operator norm on the truncated class
  std::uint64_t seed = 0;
  double t = 0.0;
};

/// Draws `samples` expansions with standard-normal coefficients on [0, N]^d and
/// records max ||T f||_p / ||f||_p, computed by Gauss quadrature with 2N + 4
/// nodes per coordinate. Sample j uses its own generator seeded from (seed, j),
/// so the result does not depend on the thread schedule. Requires 1 <= p < inf.
NormProbeReport probe_operator_norm(const ProbeOperator& op, double p, const ParamVector& params,
                                    int N, int samples, std::uint64_t seed);

/// probe_operator_norm for every (p, d) with alpha, beta repeated in each coordinate.
std::vector<NormProbeReport> dimension_sweep(const ProbeOperator& op, const std::vector<double>& ps,
                                             const std::vector<int>& dims, double alpha,
                                             double beta, int N, int samples, std::uint64_t seed);

}  // namespace jacobi
