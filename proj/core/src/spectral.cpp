#include "jacobi/spectral.hpp"

#include <algorithm>
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

double rate(SemigroupKind kind, double lambda) {
  return kind == SemigroupKind::heat ? lambda : std::sqrt(lambda);
}

/// Multiplies each coefficient by (-m)^order exp(-t m) with m = rate(lambda_k).
template <class Eigen>
Expansion multiply(const Expansion& f, SemigroupKind kind, double t, int order, Eigen eigen) {
  Expansion out(f.params(), f.basis(), f.degree_cap());
  for (const auto& [k, v] : f.coeffs()) {
    const double m = rate(kind, eigen(k));
    double factor = std::exp(-t * m);
    for (int o = 0; o < order; ++o) factor *= -m;
    out.set(k, v * factor);
  }
  return out;
}

}  // namespace

Expansion apply_heat(double t, const Expansion& f) {
  return apply_semigroup(SemigroupKind::heat, t, f);
}

Expansion apply_poisson(double t, const Expansion& f) {
  return apply_semigroup(SemigroupKind::poisson, t, f);
}

Expansion apply_semigroup(SemigroupKind kind, double t, const Expansion& f) {
  return time_derivative(kind, t, f, 0);
}

Expansion time_derivative(SemigroupKind kind, double t, const Expansion& f, int order) {
  require_standard(f, "semigroup");
  const ParamVector& p = f.params();
  return multiply(f, kind, t, order, [&](const MultiIndex& k) { return p.eigenvalue(k); });
}

Expansion apply_modified(int i, SemigroupKind kind, double t, const Expansion& f) {
  return modified_time_derivative(i, kind, t, f, 0);
}

Expansion modified_time_derivative(int i, SemigroupKind kind, double t, const Expansion& f,
                                   int order) {
  require_shifted(f, i, "modified semigroup");
  const ParamVector& p = f.params();
  return multiply(f, kind, t, order, [&](const MultiIndex& k) {
    MultiIndex up = k;
    ++up[i];
    return p.eigenvalue(up);
  });
}

Expansion project_pi0(const Expansion& f) {
  require_standard(f, "project_pi0");
  Expansion out(f.params(), f.basis(), f.degree_cap());
  for (const auto& [k, v] : f.coeffs()) {
    if (std::all_of(k.begin(), k.end(), [](int c) { return c == 0; })) continue;
    out.set(k, v);
  }
  return out;
}

std::vector<double> log_time_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) throw std::invalid_argument("log_time_grid: bad range");
  std::vector<double> out(n);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int j = 0; j < n; ++j) out[j] = std::exp(a + (b - a) * j / (n - 1));
  return out;
}

double maximal_operator(SemigroupKind kind, const Expansion& f, std::span<const double> x,
                        std::span<const double> times) {
  require_standard(f, "maximal_operator");
  // Basis values do not depend on t; evaluate them once.
  std::vector<std::pair<double, double>> terms;  // (rate, coefficient * basis(x))
  for (const auto& [k, v] : f.coeffs()) {
    const Expansion single = Expansion::single_mode(f.params(), f.basis(), k, v, f.degree_cap());
    terms.emplace_back(rate(kind, f.params().eigenvalue(k)), single.synthesize(x));
  }
  double best = 0.0;
  for (double t : times) {
    double sum = 0.0;
    for (const auto& [m, b] : terms) sum += std::exp(-t * m) * b;
    best = std::max(best, std::abs(sum));
  }
  return best;
}

}  // namespace jacobi
