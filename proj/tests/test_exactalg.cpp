#include <doctest.h>

#include <random>
#include <stdexcept>

#include "jacobi/errors.hpp"
#include "jacobi/exactalg.hpp"
#include "jacobi/polycore.hpp"

using namespace jacobi::exact;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }

PhiPoly poly1(std::initializer_list<Rational> c) {
  const std::vector<Rational> v(c);
  return PhiPoly::univariate(1, 0, v);
}

/// Random canonical element: rational coefficients with denominators <= 16,
/// x-degrees <= 3 and Phi masks in {0, 1}.
PhiPoly random_phipoly(int dim, std::mt19937_64& rng, int terms = 4) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 16);
  std::uniform_int_distribution<int> deg(0, 3);
  std::uniform_int_distribution<int> bit(0, 1);
  PhiPoly f(dim);
  for (int t = 0; t < terms; ++t) {
    PhiMonomial m{std::vector<int>(dim), std::vector<int>(dim)};
    for (int i = 0; i < dim; ++i) {
      m.x[i] = deg(rng);
      m.phi[i] = bit(rng);
    }
    f.add_term(m, Rational(num(rng), den(rng)));
  }
  return f;
}

/// Random plain polynomial (no Phi factors).
PhiPoly random_polynomial(int dim, std::mt19937_64& rng) {
  PhiPoly f = random_phipoly(dim, rng, 5);
  PhiPoly out(dim);
  for (const auto& [m, c] : f.terms()) {
    PhiMonomial plain{m.x, std::vector<int>(dim)};
    out.add_term(plain, c);
  }
  return out;
}

const std::vector<Rational> kParamValues{q(-1, 2), q(0), q(1, 2), q(1), q(3, 2)};

}  // namespace

TEST_SUITE("exactalg") {

TEST_CASE("exact Jacobi polynomials") {
  const auto p00 = RationalParamVector::uniform(1, 0, 0);
  CHECK(jacobi_exact(p00, 0, 0) == PhiPoly::constant(1, 1));
  CHECK(jacobi_exact(p00, 0, 2) == poly1({q(-1, 2), 0, q(3, 2)}));
  const auto p11 = RationalParamVector::uniform(1, 1, 1);
  CHECK(jacobi_exact(p11, 0, 1) == poly1({0, 2}));
  CHECK_THROWS_AS(jacobi_coefficients(0, 0, 9), std::domain_error);
  CHECK_NOTHROW(jacobi_coefficients(0, 0, 9, 9));
}

TEST_CASE("exact polynomials evaluate to the floating recurrence") {
  for (const auto& a : kParamValues) {
    for (const auto& b : kParamValues) {
      const RationalParamVector p({a}, {b});
      for (int k = 0; k <= 8; ++k) {
        const PhiPoly f = jacobi_exact(p, 0, k);
        for (double x : {-0.7, 0.1, 0.55}) {
          const double ref = jacobi::eval_jacobi({a.get_d(), b.get_d()}, k, x);
          const std::vector<double> pt{x};
          CHECK(f.evaluate(pt) == doctest::Approx(ref).epsilon(1e-13));
        }
      }
    }
  }
}

TEST_CASE("delta") {
  CHECK(apply_delta(0, PhiPoly::constant(1, 5)).is_zero());
  CHECK(apply_delta(0, PhiPoly::variable(1, 0)) == PhiPoly::phi(1, 0));
  // delta P_{k+1} = (k + a + b + 2)/2 Phi P_k^{(a+1,b+1)}.
  for (const auto& a : kParamValues) {
    for (const auto& b : kParamValues) {
      const RationalParamVector pv({a}, {b});
      for (int k = 0; k <= 5; ++k) {
        const PhiPoly lhs = apply_delta(0, jacobi_exact(pv, 0, k + 1));
        const PhiPoly rhs =
            (PhiPoly::phi(1, 0) * jacobi_exact(pv.shifted(0), 0, k)).scaled((k + a + b + 2) / 2);
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("delta star") {
  const auto p00 = RationalParamVector::uniform(1, 0, 0);
  CHECK(apply_delta_star(0, p00, PhiPoly::phi(1, 0)) == poly1({0, 2}));
  CHECK_THROWS_AS(apply_delta_star(0, p00, PhiPoly::constant(1, 1)), jacobi::NonRepresentable);
  for (const auto& a : kParamValues) {
    for (const auto& b : kParamValues) {
      const RationalParamVector pv({a}, {b});
      for (int k = 1; k <= 6; ++k) {
        const PhiPoly arg = PhiPoly::phi(1, 0) * jacobi_exact(pv.shifted(0), 0, k - 1);
        CHECK(apply_delta_star(0, pv, arg) == jacobi_exact(pv, 0, k).scaled(2 * k));
      }
    }
  }
}

TEST_CASE("Jacobi operator") {
  const auto p00 = RationalParamVector::uniform(1, 0, 0);
  CHECK(apply_jacobi_operator(p00, PhiPoly::constant(1, 3)).is_zero());
  // -(1 - x^2) 2 + 2x 2x; also (2/3) 6 P_2 from x^2 = (2 P_2 + 1)/3.
  CHECK(apply_jacobi_operator(p00, poly1({0, 0, 1})) == poly1({-2, 0, 6}));
  for (int dim = 1; dim <= 2; ++dim) {
    const RationalParamVector pv = dim == 1 ? RationalParamVector({q(1, 2)}, {q(3, 2)})
                                            : RationalParamVector({q(-1, 2), q(1)}, {q(0), q(1, 2)});
    for (const auto& k : modes_up_to(dim, 6)) {
      const PhiPoly pk = jacobi_exact(pv, k);
      CHECK(apply_jacobi_operator(pv, pk) == pk.scaled(pv.eigenvalue(k)));
    }
  }
}

TEST_CASE("factorization J = sum of delta* delta on random polynomials") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const int dim = 1 + trial % 3;
    std::vector<Rational> a, b;
    for (int i = 0; i < dim; ++i) {
      a.push_back(kParamValues[rng() % 5]);
      b.push_back(kParamValues[rng() % 5]);
    }
    const RationalParamVector pv(a, b);
    const PhiPoly f = random_polynomial(dim, rng);
    PhiPoly sum(dim);
    for (int i = 0; i < dim; ++i) sum += apply_delta_star(i, pv, apply_delta(i, f));
    CHECK(apply_jacobi_operator(pv, f) == sum);
  }
}

TEST_CASE("modified operators") {
  const auto p00 = RationalParamVector::uniform(1, 0, 0);
  CHECK(apply_modified_operator(0, p00, PhiPoly::phi(1, 0)) == PhiPoly::phi(1, 0).scaled(2));
  for (const auto& a : kParamValues) {
    for (const auto& b : kParamValues) {
      const RationalParamVector pv({a, b}, {b, a});
      // k = (1,1): eigenvalue lambda_{k + e_1} = lambda_2 (coordinate 1) + lambda_1 (coordinate 2).
      const std::vector<int> m{1, 1};
      const PhiPoly f = shifted_basis_exact(pv, 0, m);
      const Rational lam = pv.eigenvalue({2, 1});
      CHECK(apply_modified_operator(0, pv, f, ModifiedPath::decomposition) == f.scaled(lam));
      CHECK(apply_modified_operator(0, pv, f, ModifiedPath::commutator) == f.scaled(lam));
    }
  }
}

TEST_CASE("canonical form is idempotent") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    PhiPoly raw(2);
    std::uniform_int_distribution<int> pw(0, 4);
    std::uniform_int_distribution<int> deg(0, 3);
    for (int t = 0; t < 5; ++t) {
      raw.add_term({{deg(rng), deg(rng)}, {pw(rng), pw(rng)}}, Rational(int(rng() % 17) - 8, 1 + int(rng() % 16)));
    }
    const PhiPoly once = raw.canonical();
    CHECK(once.is_canonical());
    CHECK(once.canonical().terms() == once.terms());
    // Same function before and after reduction.
    const std::vector<double> x{0.3, -0.45};
    CHECK(once.evaluate(x) == doctest::Approx(raw.evaluate(x)).epsilon(1e-12));
  }
}

TEST_CASE("ring axioms") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const int dim = 1 + trial % 2;
    const PhiPoly a = random_phipoly(dim, rng).canonical();
    const PhiPoly b = random_phipoly(dim, rng).canonical();
    const PhiPoly c = random_phipoly(dim, rng).canonical();
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("formal square roots") {
  const auto s = QuadExtScalar::root(6);
  CHECK(s * s == QuadExtScalar::rational(6, 6));
  CHECK(QuadExtScalar::inverse_root(6) * s == QuadExtScalar::rational(1, 6));
  CHECK(s.to_double() == doctest::Approx(std::sqrt(6.0)));
  CHECK_THROWS(s * QuadExtScalar::root(5));
  CHECK_THROWS_AS(QuadExtScalar::inverse_root(0), std::domain_error);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("0.75") == q(3, 4));
  CHECK(parse_rational("-1/2") == q(-1, 2));
  CHECK(parse_rational("3") == q(3));
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK(to_rational(0.5) == q(1, 2));
}

TEST_CASE("identity registry") {
  CHECK(all_identities().size() == 17);
  for (IdentityId id : all_identities()) CHECK(parse_identity(identity_name(id)) == id);
  CHECK_FALSE(parse_identity("nonsense").has_value());
}

TEST_CASE("small identity reports") {
  const auto p00 = RationalParamVector::uniform(2, 0, 0);
  const auto r = verify_identity(IdentityId::sum_RbarR, p00, 2);
  CHECK(r.passed());
  bool saw_11 = false;
  for (const auto& m : r.modes) saw_11 = saw_11 || m.mode == std::vector<int>{1, 1};
  CHECK(saw_11);

  const auto p1 = RationalParamVector::uniform(1, q(1, 2), 1);
  CHECK(verify_identity(IdentityId::cr2, p1, 4).passed());

  // Every identity holds at k = 0 alone.
  for (IdentityId id : all_identities()) {
    CHECK_MESSAGE(verify_identity(id, p1, 0).passed(), identity_name(id));
  }
}

TEST_CASE("every identity on one mixed parameter vector per dimension") {
  const std::vector<RationalParamVector> cases{
      RationalParamVector({q(-1, 2)}, {q(3, 2)}),
      RationalParamVector({q(0), q(1, 2)}, {q(1), q(-1, 2)}),
      RationalParamVector({q(3, 2), q(-1, 2), q(1)}, {q(0), q(1, 2), q(1, 2)}),
  };
  for (const auto& p : cases) {
    for (IdentityId id : all_identities()) {
      const auto r = verify_identity(id, p, 3);
      CHECK_MESSAGE(r.passed(), identity_name(id), " d=", p.dim());
    }
  }
}

TEST_CASE("hh2 has no coordinatewise analogue in two dimensions") {
  const auto r = probe_hh2_multidim(RationalParamVector::uniform(2, 0, 0), 2);
  CHECK(r.failures() > 0);
  const auto r1 = probe_hh2_multidim(RationalParamVector::uniform(1, 0, 0), 3);
  CHECK(r1.failures() == 0);
}

}  // TEST_SUITE
