#include "jacobi/exactalg.hpp"

#include <stdexcept>

#include "jacobi/errors.hpp"

namespace jacobi::exact {

RationalParamVector::RationalParamVector(std::vector<Rational> alpha, std::vector<Rational> beta)
    : alpha_(std::move(alpha)), beta_(std::move(beta)) {
  if (alpha_.empty() || alpha_.size() != beta_.size()) {
    throw std::invalid_argument("RationalParamVector: alpha and beta must be nonempty and match");
  }
  for (std::size_t i = 0; i < alpha_.size(); ++i) {
    if (alpha_[i] <= -1 || beta_[i] <= -1) {
      throw std::domain_error("RationalParamVector: parameters must exceed -1");
    }
  }
}

RationalParamVector RationalParamVector::uniform(int dim, const Rational& alpha,
                                                 const Rational& beta) {
  return {std::vector<Rational>(dim, alpha), std::vector<Rational>(dim, beta)};
}

RationalParamVector RationalParamVector::shifted(int i) const {
  RationalParamVector out = *this;
  out.alpha_.at(i) += 1;
  out.beta_.at(i) += 1;
  return out;
}

Rational RationalParamVector::eigenvalue_1d(int i, int k) const {
  return Rational(k) * (k + alpha_.at(i) + beta_.at(i) + 1);
}

Rational RationalParamVector::eigenvalue(const std::vector<int>& k) const {
  Rational sum(0);
  for (int i = 0; i < dim(); ++i) sum += eigenvalue_1d(i, k.at(i));
  return sum;
}

std::string RationalParamVector::to_string() const {
  std::string out = "alpha=(";
  for (std::size_t i = 0; i < alpha_.size(); ++i) out += (i ? "," : "") + alpha_[i].get_str();
  out += ") beta=(";
  for (std::size_t i = 0; i < beta_.size(); ++i) out += (i ? "," : "") + beta_[i].get_str();
  return out + ")";
}

namespace {

using Poly1 = std::vector<Rational>;

Poly1 poly_mul(const Poly1& a, const Poly1& b) {
  Poly1 out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Poly1 poly_pow(const Poly1& base, int n) {
  Poly1 out{Rational(1)};
  for (int i = 0; i < n; ++i) out = poly_mul(out, base);
  return out;
}

void trim(Poly1& p) {
  while (p.size() > 1 && sgn(p.back()) == 0) p.pop_back();
}

}  // namespace

std::vector<Rational> jacobi_coefficients(const Rational& alpha, const Rational& beta, int k,
                                          int cap) {
  if (k < 0) throw std::domain_error("negative degree");
  if (k > cap) {
    throw std::domain_error("jacobi_coefficients: degree " + std::to_string(k) +
                            " exceeds cap " + std::to_string(cap));
  }
  // d^k/dx^k [(1-x)^{a+k} (1+x)^{b+k}] by Leibniz; multiplied by
  // (1-x)^{-a} (1+x)^{-b} each term becomes a polynomial.
  const Poly1 one_minus{Rational(1), Rational(-1)};
  const Poly1 one_plus{Rational(1), Rational(1)};
  Poly1 sum(static_cast<std::size_t>(k) + 1);
  for (int j = 0; j <= k; ++j) {
    Rational c = binomial(k, j) * falling_factorial(alpha + k, j) *
                 falling_factorial(beta + k, k - j);
    if (j % 2 != 0) c = -c;
    const Poly1 term = poly_mul(poly_pow(one_minus, k - j), poly_pow(one_plus, j));
    for (std::size_t n = 0; n < term.size(); ++n) sum[n] += c * term[n];
  }
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(k));
  mpz_class two_k;
  mpz_ui_pow_ui(two_k.get_mpz_t(), 2, static_cast<unsigned long>(k));
  Rational scale(1, 1);
  scale /= Rational(fact * two_k);
  if (k % 2 != 0) scale = -scale;
  for (auto& c : sum) c *= scale;
  trim(sum);
  return sum;
}

std::vector<Rational> jacobi_coefficients_recurrence(const Rational& alpha, const Rational& beta,
                                                     int k) {
  if (k < 0) throw std::domain_error("negative degree");
  const Rational ab = alpha + beta;
  Poly1 prev{Rational(1)};
  if (k == 0) return prev;
  Poly1 cur{(alpha - beta) / 2, (ab + 2) / 2};
  for (int n = 2; n <= k; ++n) {
    const Rational c = 2 * n + ab;
    const Rational denom = 2 * n * (n + ab) * (c - 2);
    const Rational lin_x = (c - 1) * c * (c - 2);
    const Rational lin_0 = (c - 1) * (alpha * alpha - beta * beta);
    const Rational back = 2 * (n + alpha - 1) * (n + beta - 1) * c;
    Poly1 next(cur.size() + 1);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      next[i] += lin_0 * cur[i];
      next[i + 1] += lin_x * cur[i];
    }
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= back * prev[i];
    for (auto& v : next) v /= denom;
    prev = std::move(cur);
    cur = std::move(next);
  }
  trim(cur);
  return cur;
}

PhiPoly jacobi_exact(const RationalParamVector& p, int i, int k, int cap) {
  const auto coeffs = jacobi_coefficients(p.alpha(i), p.beta(i), k, cap);
  return PhiPoly::univariate(p.dim(), i, coeffs);
}

PhiPoly jacobi_exact(const RationalParamVector& p, const std::vector<int>& k, int cap) {
  if (static_cast<int>(k.size()) != p.dim()) {
    throw std::invalid_argument("jacobi_exact: multi-index dimension mismatch");
  }
  PhiPoly out = PhiPoly::constant(p.dim(), 1);
  for (int i = 0; i < p.dim(); ++i) {
    if (k[i] < 0) return PhiPoly(p.dim());
    if (k[i] > 0) out = out * jacobi_exact(p, i, k[i], cap);
  }
  return out;
}

PhiPoly shifted_basis_exact(const RationalParamVector& p, int i, const std::vector<int>& m,
                            int cap) {
  return PhiPoly::phi(p.dim(), i) * jacobi_exact(p.shifted(i), m, cap);
}

PhiPoly delta_raw(int i, const PhiPoly& f) { return f.raw_partial(i).times_phi_power(i, 1); }

PhiPoly apply_delta(int i, const PhiPoly& f) { return delta_raw(i, f).canonical(); }

PhiPoly delta_star_raw(int i, const RationalParamVector& p, const PhiPoly& f) {
  // sqrt((1+x)/(1-x)) = (1+x)/Phi and sqrt((1-x)/(1+x)) = (1-x)/Phi, so the
  // zero-order part is ((alpha-beta) + (alpha+beta+1) x) / Phi.
  const int d = p.dim();
  const PhiPoly linear = PhiPoly::constant(d, p.alpha(i) - p.beta(i)) +
                         PhiPoly::variable(d, i).scaled(p.alpha(i) + p.beta(i) + 1);
  PhiPoly out = -f.raw_partial(i).times_phi_power(i, 1);
  out += (linear * f).times_phi_power(i, -1);
  return out;
}

PhiPoly apply_delta_star(int i, const RationalParamVector& p, const PhiPoly& f) {
  return delta_star_raw(i, p, f).canonical();
}

PhiPoly jacobi_operator_raw(const RationalParamVector& p, const PhiPoly& f) {
  const int d = p.dim();
  PhiPoly out(d);
  for (int i = 0; i < d; ++i) {
    const PhiPoly first = f.raw_partial(i);
    const PhiPoly second = first.raw_partial(i);
    const PhiPoly drift = PhiPoly::constant(d, p.beta(i) - p.alpha(i)) +
                          PhiPoly::variable(d, i).scaled(-(p.alpha(i) + p.beta(i) + 2));
    out += -second.times_phi_power(i, 2);
    out += -(drift * first);
  }
  return out;
}

PhiPoly apply_jacobi_operator(const RationalParamVector& p, const PhiPoly& f) {
  return jacobi_operator_raw(p, f).canonical();
}

PhiPoly commutator_raw(int i, const RationalParamVector& p, const PhiPoly& f) {
  // (a+1/2)/(1-x) + (b+1/2)/(1+x) = ((a+b+1) + (a-b) x) / Phi^2
  const int d = p.dim();
  const PhiPoly numer = PhiPoly::constant(d, p.alpha(i) + p.beta(i) + 1) +
                        PhiPoly::variable(d, i).scaled(p.alpha(i) - p.beta(i));
  return (numer * f).times_phi_power(i, -2);
}

PhiPoly apply_modified_operator(int i, const RationalParamVector& p, const PhiPoly& f,
                                ModifiedPath path) {
  if (path == ModifiedPath::commutator) {
    return (jacobi_operator_raw(p, f) + commutator_raw(i, p, f)).canonical();
  }
  PhiPoly out = apply_delta(i, apply_delta_star(i, p, f));
  for (int j = 0; j < p.dim(); ++j) {
    if (j == i) continue;
    out += apply_delta_star(j, p, apply_delta(j, f));
  }
  return out;
}

std::vector<std::vector<int>> modes_up_to(int dim, int cap) {
  std::vector<std::vector<int>> out;
  std::vector<int> k(dim, 0);
  // Odometer over the box [0, cap]^dim, keeping |k| <= cap.
  while (true) {
    int total = 0;
    for (int v : k) total += v;
    if (total <= cap) out.push_back(k);
    int pos = dim - 1;
    while (pos >= 0 && k[pos] == cap) {
      k[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++k[pos];
  }
  return out;
}

}  // namespace jacobi::exact
