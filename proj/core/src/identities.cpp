#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "jacobi/errors.hpp"
#include "jacobi/exactalg.hpp"
#include "jacobi/parallel.hpp"

namespace jacobi::exact {

namespace {

constexpr std::pair<IdentityId, std::string_view> kNames[] = {
    {IdentityId::derivative, "derivative"},
    {IdentityId::adjoint, "adjoint"},
    {IdentityId::factorization, "factorization"},
    {IdentityId::commutator, "commutator"},
    {IdentityId::eigen_J, "eigen_J"},
    {IdentityId::eigen_M, "eigen_M"},
    {IdentityId::cr1, "cr1"},
    {IdentityId::cr2, "cr2"},
    {IdentityId::cr3, "cr3"},
    {IdentityId::cr5, "cr5"},
    {IdentityId::hh1, "hh1"},
    {IdentityId::hh2, "hh2"},
    {IdentityId::hh3, "hh3"},
    {IdentityId::sum_RbarR, "sum_RbarR"},
    {IdentityId::hh4, "hh4"},
    {IdentityId::spf2, "spf2"},
    {IdentityId::potential, "potential"},
};

/// An identity fails in a way that is not a plain nonzero residual.
struct Broken : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// exp(-rate * t * sqrt(mu)); rate 0 means time-independent.
struct ExpTag {
  int rate = 0;
  Rational mu{0};

  friend bool operator<(const ExpTag& a, const ExpTag& b) {
    if (a.rate != b.rate) return a.rate < b.rate;
    return a.mu < b.mu;
  }
};

/// Sum over tags of exp-factor * (rat + s * rad), with s^2 = lambda.
class TimeFn {
 public:
  struct Part {
    PhiPoly rat;
    PhiPoly rad;
  };

  TimeFn(int dim, Rational lambda) : dim_(dim), lambda_(std::move(lambda)) {}

  static TimeFn lift(const PhiPoly& f, const Rational& lambda) {
    TimeFn out(f.dim(), lambda);
    out.add({}, QuadExtScalar::rational(1, lambda), f);
    return out;
  }

  const Rational& lambda() const { return lambda_; }

  void add(const ExpTag& tag, const QuadExtScalar& c, const PhiPoly& f) {
    if (f.is_zero() || c.is_zero()) return;
    ExpTag key = tag;
    if (key.rate == 0 || sgn(key.mu) == 0) key = ExpTag{};
    auto& part = parts_.try_emplace(key, Part{PhiPoly(dim_), PhiPoly(dim_)}).first->second;
    part.rat += f.scaled(c.a());
    part.rad += f.scaled(c.b());
  }

  TimeFn map(const std::function<PhiPoly(const PhiPoly&)>& op) const {
    TimeFn out(dim_, lambda_);
    for (const auto& [tag, part] : parts_) {
      out.add(tag, one(), op(part.rat));
      out.add(tag, root(), op(part.rad));
    }
    return out;
  }

  TimeFn scaled(const QuadExtScalar& c) const {
    TimeFn out(dim_, lambda_);
    for (const auto& [tag, part] : parts_) {
      // (a + b s)(rat + s rad) = a rat + b lambda rad + s (b rat + a rad)
      out.add(tag, one(), part.rat.scaled(c.a()) + part.rad.scaled(c.b() * lambda_));
      out.add(tag, root(), part.rat.scaled(c.b()) + part.rad.scaled(c.a()));
    }
    return out;
  }

  TimeFn operator+(const TimeFn& o) const {
    TimeFn out = *this;
    for (const auto& [tag, part] : o.parts_) {
      out.add(tag, one(), part.rat);
      out.add(tag, root(), part.rad);
    }
    return out;
  }
  TimeFn operator-(const TimeFn& o) const {
    return *this + o.scaled(QuadExtScalar::rational(-1, lambda_));
  }

  /// d/dt; exp(-n t sqrt(mu)) differentiates into -n sqrt(mu), which is only
  /// expressible when mu equals the adjoined lambda.
  TimeFn d_dt() const {
    TimeFn out(dim_, lambda_);
    for (const auto& [tag, part] : parts_) {
      if (tag.rate == 0 || sgn(tag.mu) == 0) continue;
      if (tag.mu != lambda_) {
        throw Broken("time derivative of exp(-t sqrt(" + tag.mu.get_str() +
                     ")) is not expressible with s^2 = " + lambda_.get_str());
      }
      const QuadExtScalar factor(0, -tag.rate, lambda_);
      TimeFn single(dim_, lambda_);
      single.add(tag, one(), part.rat);
      single.add(tag, root(), part.rad);
      out = out + single.scaled(factor);
    }
    return out;
  }

  /// Applies exp(-t A^{1/2}) to each part, reading the eigenvalue of A from
  /// the symbolic action of `op`.
  TimeFn semigroup(const std::function<PhiPoly(const PhiPoly&)>& op) const {
    TimeFn out(dim_, lambda_);
    for (const auto& [tag, part] : parts_) {
      const PhiPoly* pieces[2] = {&part.rat, &part.rad};
      for (int r = 0; r < 2; ++r) {
        const PhiPoly& f = *pieces[r];
        if (f.is_zero()) continue;
        const Rational mu = eigen_ratio(op(f), f);
        ExpTag next = tag;
        if (sgn(mu) != 0) {
          if (tag.rate == 0 || sgn(tag.mu) == 0) {
            next = ExpTag{1, mu};
          } else if (tag.mu == mu) {
            next.rate += 1;
          } else {
            throw Broken("product of exponentials with rates sqrt(" + tag.mu.get_str() +
                         ") and sqrt(" + mu.get_str() + ")");
          }
        }
        out.add(next, r == 0 ? one() : root(), f);
      }
    }
    return out;
  }

  /// Applies A^{-1/2} restricted to the orthogonal complement of ker A.
  TimeFn inverse_sqrt(const std::function<PhiPoly(const PhiPoly&)>& op) const {
    TimeFn out(dim_, lambda_);
    for (const auto& [tag, part] : parts_) {
      const PhiPoly* pieces[2] = {&part.rat, &part.rad};
      for (int r = 0; r < 2; ++r) {
        const PhiPoly& f = *pieces[r];
        if (f.is_zero()) continue;
        const Rational mu = eigen_ratio(op(f), f);
        if (sgn(mu) == 0) continue;
        if (mu != lambda_) {
          throw Broken("inverse square root of eigenvalue " + mu.get_str() +
                       " is not expressible with s^2 = " + lambda_.get_str());
        }
        const QuadExtScalar c = (r == 0 ? one() : root()) * QuadExtScalar::inverse_root(lambda_);
        out.add(tag, c, f);
      }
    }
    return out;
  }

  /// Terms of the canonical form that remain; empty iff the function is zero.
  std::vector<std::string> residual() const {
    std::vector<std::string> out;
    for (const auto& [tag, part] : parts_) {
      const std::string prefix =
          tag.rate == 0 ? "" : "exp(-" + std::to_string(tag.rate) + "t*sqrt(" + tag.mu.get_str() + "))*";
      for (const auto& term : part.rat.canonical().term_strings()) out.push_back(prefix + term);
      for (const auto& term : part.rad.canonical().term_strings())
        out.push_back(prefix + "s*" + term);
    }
    return out;
  }

 private:
  QuadExtScalar one() const { return QuadExtScalar::rational(1, lambda_); }
  QuadExtScalar root() const { return QuadExtScalar::root(lambda_); }

  static Rational eigen_ratio(const PhiPoly& image, const PhiPoly& f) {
    const PhiPoly img = image.canonical();
    const PhiPoly base = f.canonical();
    const auto& [m, c] = *base.terms().begin();
    const auto it = img.terms().find(m);
    const Rational mu = it == img.terms().end() ? Rational(0) : Rational(it->second / c);
    if (!(img - base.scaled(mu)).is_zero()) {
      throw Broken("function is not an eigenfunction of the operator: " + base.to_string());
    }
    return mu;
  }

  int dim_;
  Rational lambda_;
  std::map<ExpTag, Part> parts_;
};

std::vector<int> minus_e(std::vector<int> k, int i) {
  --k[i];
  return k;
}

/// Everything needed to expand both sides for one mode k.
class ModeContext {
 public:
  ModeContext(const RationalParamVector& p, int cap, std::vector<int> k)
      : p_(p),
        cap_(std::max(cap, kDefaultExactDegreeCap)),
        k_(std::move(k)),
        lambda_(p.eigenvalue(k_)),
        pk_(jacobi_exact(p, k_, cap_)) {}

  int dim() const { return p_.dim(); }
  const std::vector<int>& k() const { return k_; }
  const PhiPoly& pk() const { return pk_; }
  const Rational& lambda() const { return lambda_; }

  TimeFn lift(const PhiPoly& f) const { return TimeFn::lift(f, lambda_); }
  TimeFn zero() const { return TimeFn(dim(), lambda_); }
  QuadExtScalar rational(const Rational& r) const { return QuadExtScalar::rational(r, lambda_); }

  /// Phi_i P^{(alpha+e_i,beta+e_i)}_{k-e_i}, or nothing when k_i = 0.
  std::optional<PhiPoly> shifted_partner(int i) const {
    if (k_[i] == 0) return std::nullopt;
    return shifted_basis_exact(p_, i, minus_e(k_, i), cap_);
  }
  PhiPoly shifted_same_index(int i) const { return shifted_basis_exact(p_, i, k_, cap_); }
  PhiPoly derivative_partner(int i) const { return jacobi_exact(p_.shifted(i), minus_e(k_, i), cap_); }

  auto delta(int j) const {
    return [j](const PhiPoly& f) { return apply_delta(j, f); };
  }
  auto delta_star(int j) const {
    return [this, j](const PhiPoly& f) { return apply_delta_star(j, p_, f); };
  }
  auto jacobi() const {
    return [this](const PhiPoly& f) { return apply_jacobi_operator(p_, f); };
  }
  auto modified(int j) const {
    return [this, j](const PhiPoly& f) { return apply_modified_operator(j, p_, f); };
  }

  TimeFn poisson(const TimeFn& f) const { return f.semigroup(jacobi()); }
  TimeFn modified_poisson(int j, const TimeFn& f) const { return f.semigroup(modified(j)); }
  TimeFn riesz(int j, const TimeFn& f) const { return f.inverse_sqrt(jacobi()).map(delta(j)); }
  TimeFn riesz_adjoint(int j, const TimeFn& g) const {
    return g.inverse_sqrt(modified(j)).map(delta_star(j));
  }
  TimeFn conj(int j, const TimeFn& f) const { return modified_poisson(j, riesz(j, f)); }
  TimeFn conj_adjoint(int j, const TimeFn& g) const { return poisson(riesz_adjoint(j, g)); }
  TimeFn pi0(const TimeFn& f) const {
    // Pi_0 removes the constant component; mode k is either constant or orthogonal to it.
    bool constant = std::all_of(k_.begin(), k_.end(), [](int v) { return v == 0; });
    return constant ? zero() : f;
  }

  const RationalParamVector& params() const { return p_; }

 private:
  const RationalParamVector& p_;
  int cap_;
  std::vector<int> k_;
  Rational lambda_;
  PhiPoly pk_;
};

struct Comparison {
  std::string label;
  TimeFn lhs;
  TimeFn rhs;
};

void compare(ModeCheck& check, const std::vector<Comparison>& items) {
  for (const auto& item : items) {
    const auto residual = (item.lhs - item.rhs).residual();
    if (residual.empty()) continue;
    check.status = CheckStatus::fail;
    if (!check.detail.empty()) check.detail += "; ";
    check.detail += item.label + " differs";
    for (const auto& r : residual) check.residual_terms.push_back(item.label + ": " + r);
  }
}

std::string coord(const char* what, int i) { return std::string(what) + std::to_string(i + 1); }

ModeCheck check_mode(IdentityId id, const ModeContext& c, bool extrapolate) {
  ModeCheck check;
  check.mode = c.k();
  const int d = c.dim();
  const auto& p = c.params();
  const TimeFn pk = c.lift(c.pk());
  std::vector<Comparison> items;

  switch (id) {
    case IdentityId::derivative:
      for (int i = 0; i < d; ++i) {
        TimeFn rhs = c.zero();
        if (c.k()[i] > 0) {
          const Rational factor = Rational(c.k()[i] + 1 + p.alpha(i) + p.beta(i)) / 2;
          rhs = c.lift(c.derivative_partner(i).scaled(factor));
        }
        items.push_back({coord("d/dx", i), c.lift(c.pk().raw_partial(i).canonical()), rhs});
      }
      break;

    case IdentityId::adjoint:
      for (int i = 0; i < d; ++i) {
        const auto g = c.shifted_partner(i);
        if (!g) continue;
        items.push_back({coord("delta*", i), c.lift(apply_delta_star(i, p, *g)),
                         c.lift(c.pk().scaled(2 * c.k()[i]))});
      }
      break;

    case IdentityId::factorization: {
      PhiPoly sum(d);
      for (int i = 0; i < d; ++i) sum += apply_delta_star(i, p, apply_delta(i, c.pk()));
      items.push_back({"J", c.lift(apply_jacobi_operator(p, c.pk())), c.lift(sum)});
      break;
    }

    case IdentityId::commutator:
      for (int i = 0; i < d; ++i) {
        for (const PhiPoly& g : {c.pk(), c.shifted_same_index(i)}) {
          const PhiPoly lhs = delta_raw(i, delta_star_raw(i, p, g)) -
                              delta_star_raw(i, p, delta_raw(i, g));
          // Difference of raw forms; canonicalization clears the Phi^{-2}.
          const PhiPoly diff = (lhs - commutator_raw(i, p, g)).canonical();
          items.push_back({coord("[delta,delta*]", i), c.lift(diff), c.zero()});
        }
      }
      break;

    case IdentityId::eigen_J:
      items.push_back({"J", c.lift(apply_jacobi_operator(p, c.pk())),
                       c.lift(c.pk().scaled(c.lambda()))});
      break;

    case IdentityId::eigen_M:
      for (int i = 0; i < d; ++i) {
        const PhiPoly g = c.shifted_same_index(i);
        std::vector<int> up = c.k();
        ++up[i];
        const Rational mu = p.eigenvalue(up);
        const TimeFn expected = c.lift(g.scaled(mu));
        items.push_back({coord("M", i) + " decomposition",
                         c.lift(apply_modified_operator(i, p, g, ModifiedPath::decomposition)),
                         expected});
        items.push_back({coord("M", i) + " commutator",
                         c.lift(apply_modified_operator(i, p, g, ModifiedPath::commutator)),
                         expected});
      }
      break;

    case IdentityId::cr1:
      for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
          items.push_back({"delta" + std::to_string(j + 1) + " U" + std::to_string(i + 1),
                           c.conj(i, pk).map(c.delta(j)), c.conj(j, pk).map(c.delta(i))});
        }
      }
      break;

    case IdentityId::cr2:
      for (int j = 0; j < d; ++j) {
        items.push_back({coord("delta", j), c.poisson(pk).map(c.delta(j)),
                         c.conj(j, pk).d_dt().scaled(c.rational(-1))});
      }
      break;

    case IdentityId::cr3: {
      TimeFn lhs = c.zero();
      for (int j = 0; j < d; ++j) lhs = lhs + c.conj(j, pk).map(c.delta_star(j));
      items.push_back({"sum delta*U", lhs, c.poisson(pk).d_dt().scaled(c.rational(-1))});
      break;
    }

    case IdentityId::cr5:
      for (int j = 0; j < d; ++j) {
        const TimeFn u = c.conj(j, pk);
        items.push_back({coord("U", j), u.d_dt().d_dt(), u.map(c.modified(j))});
      }
      break;

    case IdentityId::hh1:
      for (int j = 0; j < d; ++j) {
        const auto g = c.shifted_partner(j);
        if (!g) continue;
        const TimeFn gf = c.lift(*g);
        items.push_back({coord("delta*", j), c.modified_poisson(j, gf).map(c.delta_star(j)),
                         c.conj_adjoint(j, gf).d_dt().scaled(c.rational(-1))});
      }
      break;

    case IdentityId::hh2: {
      if (d != 1 && !extrapolate) {
        check.status = CheckStatus::skip;
        check.detail = "stated in one dimension only";
        return check;
      }
      for (int j = 0; j < d; ++j) {
        const auto g = c.shifted_partner(j);
        if (!g) continue;
        const TimeFn gf = c.lift(*g);
        items.push_back({coord("delta", j) + " Ubar", c.conj_adjoint(j, gf).map(c.delta(j)),
                         c.modified_poisson(j, gf).d_dt().scaled(c.rational(-1))});
      }
      break;
    }

    case IdentityId::hh3:
      for (int j = 0; j < d; ++j) {
        const auto g = c.shifted_partner(j);
        if (!g) continue;
        const TimeFn u = c.conj_adjoint(j, c.lift(*g));
        items.push_back({coord("Ubar", j), u.d_dt().d_dt(), u.map(c.jacobi())});
      }
      break;

    case IdentityId::sum_RbarR: {
      TimeFn lhs = c.zero();
      for (int j = 0; j < d; ++j) lhs = lhs + c.riesz_adjoint(j, c.riesz(j, pk));
      items.push_back({"sum RbarR", lhs, c.pi0(pk)});
      break;
    }

    case IdentityId::hh4: {
      TimeFn lhs = c.zero();
      for (int j = 0; j < d; ++j) lhs = lhs + c.conj_adjoint(j, c.conj(j, pk));
      items.push_back({"sum UbarU", lhs, c.poisson(c.poisson(c.pi0(pk)))});
      break;
    }

    case IdentityId::spf2:
      for (int j = 0; j < d; ++j) {
        items.push_back({coord("U", j), c.conj(j, pk), c.riesz(j, c.poisson(pk))});
      }
      break;

    case IdentityId::potential: {
      // F = J^{-1/2} P_t Pi_0 f
      const TimeFn f = c.poisson(c.pi0(pk)).inverse_sqrt(c.jacobi());
      items.push_back({"harmonic", f.d_dt().d_dt(), f.map(c.jacobi())});
      items.push_back({"d/dt", f.d_dt(), c.poisson(c.pi0(pk)).scaled(c.rational(-1))});
      for (int i = 0; i < d; ++i) {
        items.push_back({coord("delta", i), f.map(c.delta(i)), c.conj(i, pk)});
      }
      break;
    }
  }
  compare(check, items);
  return check;
}

}  // namespace

const std::vector<IdentityId>& all_identities() {
  static const std::vector<IdentityId> ids = [] {
    std::vector<IdentityId> out;
    for (const auto& [id, name] : kNames) out.push_back(id);
    return out;
  }();
  return ids;
}

std::string_view identity_name(IdentityId id) {
  for (const auto& [i, name] : kNames)
    if (i == id) return name;
  throw std::logic_error("unnamed identity");
}

std::optional<IdentityId> parse_identity(std::string_view name) {
  for (const auto& [id, n] : kNames)
    if (n == name) return id;
  return std::nullopt;
}

std::string_view status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "PASS";
    case CheckStatus::fail:
      return "FAIL";
    case CheckStatus::skip:
      return "SKIP";
  }
  return "?";
}

bool IdentityReport::passed() const { return failures() == 0; }

std::size_t IdentityReport::failures() const {
  return static_cast<std::size_t>(std::count_if(
      modes.begin(), modes.end(), [](const ModeCheck& m) { return m.status == CheckStatus::fail; }));
}

namespace {

IdentityReport run_identity(IdentityId id, const RationalParamVector& p, int degree_cap,
                            bool extrapolate) {
  if (degree_cap < 0) throw std::invalid_argument("verify_identity: negative degree cap");
  const auto modes = modes_up_to(p.dim(), degree_cap);
  IdentityReport report{id, p, degree_cap, std::vector<ModeCheck>(modes.size())};
  parallel_for(modes.size(), [&](std::size_t n) {
    ModeCheck& out = report.modes[n];
    try {
      const ModeContext ctx(p, degree_cap, modes[n]);
      out = check_mode(id, ctx, extrapolate);
    } catch (const Broken& e) {
      out = ModeCheck{modes[n], CheckStatus::fail, e.what(), {}};
    } catch (const NonRepresentable& e) {
      out = ModeCheck{modes[n], CheckStatus::fail, e.what(), {}};
    }
  });
  return report;
}

}  // namespace

IdentityReport verify_identity(IdentityId id, const RationalParamVector& p, int degree_cap) {
  return run_identity(id, p, degree_cap, false);
}

IdentityReport probe_hh2_multidim(const RationalParamVector& p, int degree_cap) {
  return run_identity(IdentityId::hh2, p, degree_cap, true);
}

}  // namespace jacobi::exact
