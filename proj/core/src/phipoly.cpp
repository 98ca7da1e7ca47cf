#include "jacobi/phipoly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jacobi/errors.hpp"

namespace jacobi::exact {

PhiPoly::PhiPoly(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("PhiPoly dimension must be positive");
}

PhiPoly PhiPoly::constant(int dim, const Rational& c) {
  PhiPoly out(dim);
  out.add_term({std::vector<int>(dim, 0), std::vector<int>(dim, 0)}, c);
  return out;
}

PhiPoly PhiPoly::variable(int dim, int i) {
  PhiPoly out(dim);
  PhiMonomial m{std::vector<int>(dim, 0), std::vector<int>(dim, 0)};
  m.x.at(i) = 1;
  out.add_term(m, 1);
  return out;
}

PhiPoly PhiPoly::phi(int dim, int i) {
  PhiPoly out(dim);
  PhiMonomial m{std::vector<int>(dim, 0), std::vector<int>(dim, 0)};
  m.phi.at(i) = 1;
  out.add_term(m, 1);
  return out;
}

PhiPoly PhiPoly::univariate(int dim, int i, std::span<const Rational> coeffs) {
  PhiPoly out(dim);
  PhiMonomial m{std::vector<int>(dim, 0), std::vector<int>(dim, 0)};
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    m.x.at(i) = static_cast<int>(j);
    out.add_term(m, coeffs[j]);
  }
  return out;
}

void PhiPoly::add_term(const PhiMonomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

bool PhiPoly::is_canonical() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) {
    return std::all_of(t.first.phi.begin(), t.first.phi.end(),
                       [](int s) { return s == 0 || s == 1; });
  });
}

bool PhiPoly::carries_phi(int i) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [i](const auto& t) { return t.first.phi[i] % 2 != 0; });
}

void PhiPoly::check_dim(const PhiPoly& o) const {
  if (o.dim_ != dim_) throw std::invalid_argument("PhiPoly dimension mismatch");
}

PhiPoly PhiPoly::operator+(const PhiPoly& o) const {
  PhiPoly out = *this;
  out += o;
  return out;
}

PhiPoly& PhiPoly::operator+=(const PhiPoly& o) {
  check_dim(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

PhiPoly PhiPoly::operator-() const { return scaled(-1); }

PhiPoly PhiPoly::operator-(const PhiPoly& o) const { return *this + (-o); }

PhiPoly PhiPoly::scaled(const Rational& c) const {
  PhiPoly out(dim_);
  if (sgn(c) == 0) return out;
  for (const auto& [m, v] : terms_) out.terms_.emplace(m, v * c);
  return out;
}

PhiPoly PhiPoly::operator*(const PhiPoly& o) const {
  check_dim(o);
  PhiPoly out(dim_);
  PhiMonomial m{std::vector<int>(dim_), std::vector<int>(dim_)};
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : o.terms_) {
      for (int i = 0; i < dim_; ++i) {
        m.x[i] = m1.x[i] + m2.x[i];
        m.phi[i] = m1.phi[i] + m2.phi[i];
      }
      out.add_term(m, c1 * c2);
    }
  }
  if (is_canonical() && o.is_canonical()) return out.canonical();
  return out;
}

PhiPoly PhiPoly::times_phi_power(int i, int power) const {
  PhiPoly out(dim_);
  for (const auto& [m, c] : terms_) {
    PhiMonomial shifted = m;
    shifted.phi.at(i) += power;
    out.terms_.emplace(std::move(shifted), c);
  }
  return out;
}

PhiPoly PhiPoly::raw_partial(int i) const {
  PhiPoly out(dim_);
  for (const auto& [m, c] : terms_) {
    const int a = m.x[i];
    const int b = m.phi[i];
    if (a > 0) {
      PhiMonomial d = m;
      d.x[i] = a - 1;
      out.add_term(d, c * a);
    }
    if (b != 0) {
      PhiMonomial d = m;
      d.x[i] = a + 1;
      d.phi[i] = b - 2;
      out.add_term(d, -c * b);
    }
  }
  return out;
}

PhiPoly PhiPoly::reduce_high_powers(int i) const {
  PhiPoly out(dim_);
  for (const auto& [m, c] : terms_) {
    const int e = m.phi[i];
    if (e == 0 || e == 1) {
      out.add_term(m, c);
      continue;
    }
    if (e < 0) throw std::logic_error("reduce_high_powers: negative Phi power");
    // Phi^e = Phi^{e mod 2} (1 - x^2)^{e / 2}
    const int q = e / 2;
    PhiMonomial r = m;
    r.phi[i] = e % 2;
    for (int j = 0; j <= q; ++j) {
      r.x[i] = m.x[i] + 2 * j;
      Rational coeff = c * binomial(q, j);
      if (j % 2 != 0) coeff = -coeff;
      out.add_term(r, coeff);
    }
  }
  return out;
}

PhiPoly PhiPoly::divide_by_phi(int i) const {
  PhiPoly out(dim_);
  // Phi-free part, grouped by everything except the power of x_i.
  std::map<PhiMonomial, std::map<int, Rational>> groups;
  for (const auto& [m, c] : terms_) {
    if (m.phi[i] == 1) {
      PhiMonomial d = m;
      d.phi[i] = 0;
      out.add_term(d, c);
    } else {
      PhiMonomial key = m;
      key.x[i] = 0;
      groups[key][m.x[i]] += c;
    }
  }
  for (auto& [key, sparse] : groups) {
    const int deg = sparse.rbegin()->first;
    std::vector<Rational> p(static_cast<std::size_t>(deg) + 1);
    for (const auto& [e, c] : sparse) p[e] = c;
    // p = (x^2 - 1) q + r; then p / Phi = -q Phi when r = 0.
    std::vector<Rational> q(p.size() > 2 ? p.size() - 2 : 0);
    for (int n = deg; n >= 2; --n) {
      q[n - 2] = p[n];
      p[n - 2] += p[n];
      p[n] = 0;
    }
    if (sgn(p[0]) != 0 || (deg >= 1 && sgn(p[1]) != 0)) {
      throw NonRepresentable("result is not in the Phi-weighted polynomial algebra: a Phi_" +
                             std::to_string(i + 1) + "-free part is not divisible by 1 - x_" +
                             std::to_string(i + 1) + "^2");
    }
    PhiMonomial m = key;
    m.phi[i] = 1;
    for (std::size_t n = 0; n < q.size(); ++n) {
      m.x[i] = static_cast<int>(n);
      out.add_term(m, -q[n]);
    }
  }
  return out;
}

PhiPoly PhiPoly::canonical() const {
  PhiPoly out = *this;
  for (int i = 0; i < dim_; ++i) {
    if (out.terms_.empty()) return out;
    int lowest = 0;
    for (const auto& [m, c] : out.terms_) lowest = std::min(lowest, m.phi[i]);
    if (lowest < 0) out = out.times_phi_power(i, -lowest);
    out = out.reduce_high_powers(i);
    for (int r = 0; r < -lowest; ++r) out = out.divide_by_phi(i);
  }
  return out;
}

bool operator==(const PhiPoly& f, const PhiPoly& g) {
  f.check_dim(g);
  return (f - g).canonical().is_zero();
}

double PhiPoly::evaluate(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(dim_)) {
    throw std::invalid_argument("PhiPoly::evaluate: point dimension mismatch");
  }
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    double term = c.get_d();
    for (int i = 0; i < dim_; ++i) {
      term *= std::pow(x[i], m.x[i]);
      if (m.phi[i] != 0) term *= std::pow(std::sqrt((1.0 - x[i]) * (1.0 + x[i])), m.phi[i]);
    }
    sum += term;
  }
  return sum;
}

std::vector<std::string> PhiPoly::term_strings() const {
  std::vector<std::string> out;
  out.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    std::string s = c.get_str();
    for (int i = 0; i < dim_; ++i) {
      const std::string idx = std::to_string(i + 1);
      if (m.x[i] == 1) s += "*x" + idx;
      if (m.x[i] > 1) s += "*x" + idx + "^" + std::to_string(m.x[i]);
      if (m.phi[i] == 1) s += "*Phi" + idx;
      if (m.phi[i] != 0 && m.phi[i] != 1) s += "*Phi" + idx + "^" + std::to_string(m.phi[i]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string PhiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : term_strings()) {
    if (!out.empty()) out += " + ";
    out += t;
  }
  return out;
}

}  // namespace jacobi::exact
