#include "jacobi/polycore.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace jacobi {

ParamPair::ParamPair(double alpha, double beta)
    : alpha_(alpha), beta_(beta), in_half_range_(alpha >= -0.5 && beta >= -0.5) {
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw std::domain_error("Jacobi parameters must exceed -1 (got alpha=" +
                            std::to_string(alpha) + ", beta=" + std::to_string(beta) + ")");
  }
}

namespace {

void check_interior(double x) {
  if (!(std::abs(x) < 1.0)) {
    throw std::domain_error("Jacobi polynomial argument must lie in (-1, 1), got " +
                            std::to_string(x));
  }
}

void check_degree(int k) {
  if (k < 0) throw std::domain_error("negative Jacobi degree " + std::to_string(k));
}

}  // namespace

void jacobi_sweep(const ParamPair& p, int kmax, double x, std::span<double> out) {
  check_degree(kmax);
  if (out.size() < static_cast<std::size_t>(kmax) + 1) {
    throw std::invalid_argument("jacobi_sweep: output span too short");
  }
  const double a = p.alpha();
  const double b = p.beta();
  const double ab = a + b;
  out[0] = 1.0;
  if (kmax == 0) return;
  out[1] = 0.5 * ((ab + 2.0) * x + (a - b));
  if (kmax == 1) return;
  // Closed form at k = 2: the generic step k=1 -> 2 divides by (a+b), which
  // vanishes in the Chebyshev-like case a + b = 0 and degenerates for a + b = -1.
  const double xm = x - 1.0;
  out[2] = 0.125 * (4.0 * (a + 1.0) * (a + 2.0) + 4.0 * (ab + 3.0) * (a + 2.0) * xm +
                    (ab + 3.0) * (ab + 4.0) * xm * xm);
  for (int n = 3; n <= kmax; ++n) {
    const double nn = n;
    const double c = 2.0 * nn + ab;
    const double denom = 2.0 * nn * (nn + ab) * (c - 2.0);
    const double lin = (c - 1.0) * (c * (c - 2.0) * x + a * a - b * b);
    const double back = 2.0 * (nn + a - 1.0) * (nn + b - 1.0) * c;
    out[n] = (lin * out[n - 1] - back * out[n - 2]) / denom;
  }
}

std::vector<double> jacobi_sweep(const ParamPair& p, int kmax, double x) {
  std::vector<double> out(static_cast<std::size_t>(kmax) + 1);
  jacobi_sweep(p, kmax, x, out);
  return out;
}

double eval_jacobi(const ParamPair& p, int k, double x) {
  check_interior(x);
  check_degree(k);
  if (k == 0) return 1.0;
  return jacobi_sweep(p, k, x)[static_cast<std::size_t>(k)];
}

double eval_jacobi_derivative(const ParamPair& p, int k, double x) {
  check_interior(x);
  check_degree(k);
  if (k == 0) return 0.0;
  return 0.5 * (k + p.alpha() + p.beta() + 1.0) * eval_jacobi(p.shifted(), k - 1, x);
}

double eval_jacobi_second_derivative(const ParamPair& p, int k, double x) {
  check_interior(x);
  check_degree(k);
  if (k < 2) return 0.0;
  const double ab = p.alpha() + p.beta();
  return 0.25 * (k + ab + 1.0) * (k + ab + 2.0) *
         eval_jacobi(ParamPair(p.alpha() + 2.0, p.beta() + 2.0), k - 2, x);
}

SpectralMode1D eigenvalue(const ParamPair& p, int k) {
  check_degree(k);
  const double lambda = k * (k + p.alpha() + p.beta() + 1.0);
  return {k, lambda, std::sqrt(lambda)};
}

double squared_norm(const ParamPair& p, int k) {
  check_degree(k);
  const double a = p.alpha();
  const double b = p.beta();
  const double log2 = std::log(2.0);
  if (k == 0) {
    return std::exp((a + b + 1.0) * log2 + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                    std::lgamma(a + b + 2.0));
  }
  const double kk = k;
  const double log_value = (a + b + 1.0) * log2 + std::lgamma(kk + a + 1.0) +
                           std::lgamma(kk + b + 1.0) - std::log(2.0 * kk + a + b + 1.0) -
                           std::lgamma(kk + a + b + 1.0) - std::lgamma(kk + 1.0);
  return std::exp(log_value);
}

double total_mass(const ParamPair& p) { return squared_norm(p, 0); }

double phi(double x) {
  if (!(std::abs(x) <= 1.0)) {
    throw std::domain_error("phi: argument outside [-1, 1]: " + std::to_string(x));
  }
  return std::sqrt((1.0 - x) * (1.0 + x));
}

}  // namespace jacobi
