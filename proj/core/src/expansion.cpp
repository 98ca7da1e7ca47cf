#include "jacobi/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jacobi/errors.hpp"

namespace jacobi {

ParamVector::ParamVector(std::vector<double> alpha, std::vector<double> beta) {
  if (alpha.empty() || alpha.size() != beta.size()) {
    throw std::invalid_argument("ParamVector: alpha and beta must be nonempty and of equal length");
  }
  pairs_.reserve(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) pairs_.emplace_back(alpha[i], beta[i]);
}

ParamVector ParamVector::uniform(int dim, double alpha, double beta) {
  if (dim < 1) throw std::invalid_argument("ParamVector: dimension must be positive");
  return {std::vector<double>(dim, alpha), std::vector<double>(dim, beta)};
}

std::vector<double> ParamVector::alphas() const {
  std::vector<double> out;
  for (const auto& p : pairs_) out.push_back(p.alpha());
  return out;
}

std::vector<double> ParamVector::betas() const {
  std::vector<double> out;
  for (const auto& p : pairs_) out.push_back(p.beta());
  return out;
}

ParamVector ParamVector::shifted(int i) const {
  ParamVector out = *this;
  out.pairs_.at(i) = pairs_.at(i).shifted();
  return out;
}

bool ParamVector::in_half_range() const {
  return std::all_of(pairs_.begin(), pairs_.end(),
                     [](const ParamPair& p) { return p.in_half_range(); });
}

double ParamVector::eigenvalue(const MultiIndex& k) const {
  double sum = 0.0;
  for (int i = 0; i < dim(); ++i) sum += jacobi::eigenvalue(pairs_[i], k.at(i)).lambda;
  return sum;
}

SpectralMode ParamVector::mode(const MultiIndex& k) const {
  const double lambda = eigenvalue(k);
  return {k, lambda, std::sqrt(lambda)};
}

double ParamVector::squared_norm(const MultiIndex& k) const {
  double prod = 1.0;
  for (int i = 0; i < dim(); ++i) prod *= jacobi::squared_norm(pairs_[i], k.at(i));
  return prod;
}

double ParamVector::total_mass() const {
  double prod = 1.0;
  for (const auto& p : pairs_) prod *= jacobi::total_mass(p);
  return prod;
}

std::string Basis::to_string() const {
  return is_standard() ? "standard" : "shifted-" + std::to_string(shifted + 1);
}

double basis_squared_norm(const ParamVector& p, Basis b, const MultiIndex& k) {
  if (b.is_standard()) return p.squared_norm(k);
  return p.shifted(b.shifted).squared_norm(k);
}

double basis_factor(const ParamVector& p, Basis b, int coord, int k, double x) {
  if (b.shifted == coord) {
    if (std::abs(x) == 1.0) return 0.0;
    return phi(x) * eval_jacobi(p.pair(coord).shifted(), k, x);
  }
  return eval_jacobi(p.pair(coord), k, x);
}

Expansion::Expansion(ParamVector params, Basis basis, int degree_cap)
    : params_(std::move(params)), basis_(basis), degree_cap_(degree_cap) {
  if (degree_cap < 0) throw std::invalid_argument("Expansion: negative degree cap");
  if (basis.shifted >= params_.dim()) {
    throw std::invalid_argument("Expansion: shifted coordinate out of range");
  }
}

void Expansion::check_mode(const MultiIndex& k) const {
  if (static_cast<int>(k.size()) != dim()) {
    throw std::invalid_argument("Expansion: multi-index dimension mismatch");
  }
  for (int v : k) {
    if (v < 0 || v > degree_cap_) {
      throw std::out_of_range("Expansion: mode outside the box [0, N]^d");
    }
  }
}

double Expansion::coeff(const MultiIndex& k) const {
  const auto it = coeffs_.find(k);
  return it == coeffs_.end() ? 0.0 : it->second;
}

void Expansion::set(const MultiIndex& k, double value) {
  check_mode(k);
  coeffs_[k] = value;
}

void Expansion::add(const MultiIndex& k, double value) {
  check_mode(k);
  coeffs_[k] += value;
}

double Expansion::synthesize(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim()) {
    throw std::invalid_argument("synthesize: point dimension mismatch");
  }
  std::vector<std::vector<double>> tables(dim());
  for (int c = 0; c < dim(); ++c) {
    if (!(std::abs(x[c]) < 1.0)) throw std::domain_error("synthesize: point outside (-1,1)^d");
    const bool shifted = basis_.shifted == c;
    const ParamPair pc = shifted ? params_.pair(c).shifted() : params_.pair(c);
    tables[c] = jacobi_sweep(pc, degree_cap_, x[c]);
    if (shifted) {
      const double ph = phi(x[c]);
      for (double& v : tables[c]) v *= ph;
    }
  }
  double sum = 0.0;
  for (const auto& [k, v] : coeffs_) {
    double term = v;
    for (int c = 0; c < dim(); ++c) term *= tables[c][k[c]];
    sum += term;
  }
  return sum;
}

double Expansion::l2_norm_squared() const {
  double sum = 0.0;
  for (const auto& [k, v] : coeffs_) sum += v * v * basis_squared_norm(params_, basis_, k);
  return sum;
}

Expansion Expansion::single_mode(const ParamVector& p, Basis b, const MultiIndex& k, double value,
                                 int degree_cap) {
  Expansion out(p, b, degree_cap);
  out.set(k, value);
  return out;
}

Expansion Expansion::random(const ParamVector& p, Basis b, int degree_cap, std::mt19937_64& rng) {
  Expansion out(p, b, degree_cap);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (const auto& k : box_modes(p.dim(), degree_cap)) out.set(k, normal(rng));
  return out;
}

std::vector<MultiIndex> box_modes(int dim, int N) {
  std::vector<MultiIndex> out;
  MultiIndex k(dim, 0);
  while (true) {
    out.push_back(k);
    int pos = dim - 1;
    while (pos >= 0 && k[pos] == N) {
      k[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++k[pos];
  }
  return out;
}

double max_coeff_difference(const Expansion& a, const Expansion& b) {
  if (!(a.params() == b.params()) || !(a.basis() == b.basis())) {
    throw BasisMismatch("max_coeff_difference: parameters or basis differ");
  }
  double worst = 0.0;
  for (const auto& [k, v] : a.coeffs()) worst = std::max(worst, std::abs(v - b.coeff(k)));
  for (const auto& [k, v] : b.coeffs()) worst = std::max(worst, std::abs(v - a.coeff(k)));
  return worst;
}

}  // namespace jacobi
