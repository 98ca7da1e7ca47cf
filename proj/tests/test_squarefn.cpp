#include <doctest.h>

#include <cmath>
#include <random>

#include "jacobi/conjugacy.hpp"
#include "jacobi/polycore.hpp"
#include "jacobi/squarefn.hpp"
#include "oracles.hpp"

using namespace jacobi;

namespace {

ParamVector random_params(int d, std::mt19937_64& rng, double lo, double hi) {
  std::vector<double> a(d), b(d);
  for (int i = 0; i < d; ++i) {
    a[i] = oracle::uniform(rng, lo, hi);
    b[i] = oracle::uniform(rng, lo, hi);
  }
  return {a, b};
}

std::vector<double> random_point(int d, std::mt19937_64& rng) {
  std::vector<double> x(d);
  for (double& v : x) v = oracle::uniform(rng, -0.95, 0.95);
  return x;
}

}  // namespace

TEST_SUITE("squarefn") {

TEST_CASE("constants have zero square function") {
  const ParamVector p({0.5, -0.5}, {0.0, 1.0});
  const Expansion c = Expansion::single_mode(p, Basis::standard(), {0, 0}, 4.0, 3);
  const std::vector<double> x{0.1, -0.6};
  CHECK(g_function(c, x) == 0.0);
  CHECK(g_function(c, x, GVariant::vertical) == 0.0);
}

TEST_CASE("single mode closed form") {
  // P_t P_k = e^{-t sqrt(lambda)} P_k and int t e^{-2 t s} dt = 1 / (4 s^2).
  const ParamVector p({0.5, -0.5}, {1.5, 0.25});
  for (const MultiIndex& k : {MultiIndex{1, 0}, MultiIndex{2, 3}, MultiIndex{0, 4}}) {
    const Expansion f = Expansion::single_mode(p, Basis::standard(), k, 1.0, 4);
    const double lam = p.eigenvalue(k);
    for (const std::vector<double>& x : {std::vector<double>{0.3, -0.2}, std::vector<double>{-0.85, 0.7}}) {
      double P[2], dP[2];
      for (int i = 0; i < 2; ++i) {
        P[i] = eval_jacobi(p.pair(i), k[i], x[i]);
        dP[i] = phi(x[i]) * eval_jacobi_derivative(p.pair(i), k[i], x[i]);
      }
      const double v = P[0] * P[1];
      const double d0 = dP[0] * P[1];
      const double d1 = P[0] * dP[1];
      const double g2 = (lam * v * v + d0 * d0 + d1 * d1) / (4 * lam);
      CHECK(g_function(f, x) == doctest::Approx(std::sqrt(g2)).epsilon(1e-13));
      CHECK(g_function(f, x, GVariant::vertical) == doctest::Approx(std::abs(v) / 2).epsilon(1e-13));
    }
  }
}

TEST_CASE("gtilde of a single shifted mode is half its absolute value") {
  const ParamVector p({0.0, 1.0}, {0.5, -0.5});
  const std::vector<double> x{-0.4, 0.55};
  for (int i = 0; i < 2; ++i) {
    for (const MultiIndex& m : {MultiIndex{0, 0}, MultiIndex{2, 1}}) {
      const Expansion g = Expansion::single_mode(p, Basis::shifted_in(i), m, 1.0, 3);
      CHECK(g_tilde(i, g, x) == doctest::Approx(std::abs(g.synthesize(x)) / 2).epsilon(1e-13));
    }
  }
  // The constant shifted mode is Phi_i, which is not zero.
  const Expansion phi0 = Expansion::single_mode(p, Basis::shifted_in(0), {0, 0}, 1.0, 2);
  CHECK(g_tilde(0, phi0, x) > 0.1);
  CHECK(g_tilde(0, Expansion(p, Basis::shifted_in(0), 2), x) == 0.0);
}

TEST_CASE("closed form agrees with time quadrature") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 12; ++trial) {
    const int d = 1 + trial % 3;
    const ParamVector p = random_params(d, rng, -0.9, 2.0);
    const Expansion f = Expansion::random(p, Basis::standard(), 4, rng);
    const auto x = random_point(d, rng);
    for (GVariant v : {GVariant::full, GVariant::vertical}) {
      CHECK(std::abs(g_function(f, x, v) - g_function_quadrature(f, x, v)) <= 1e-7);
    }
    const int i = trial % d;
    const Expansion g = Expansion::random(p, Basis::shifted_in(i), 4, rng);
    CHECK(std::abs(g_tilde(i, g, x) - g_tilde_quadrature(i, g, x)) <= 1e-7);
  }
}

TEST_CASE("vertical part never exceeds the full function") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 1 + trial % 3;
    const Expansion f = Expansion::random(random_params(d, rng, -0.95, 2.0), Basis::standard(), 4, rng);
    const auto x = random_point(d, rng);
    CHECK(g_function(f, x, GVariant::vertical) <= g_function(f, x) * (1 + 1e-14));
  }
}

TEST_CASE("in one dimension gtilde(R f) is the horizontal part of g(f)") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const Expansion f = Expansion::random(random_params(1, rng, -0.9, 2.0), Basis::standard(), 6, rng);
    const auto x = random_point(1, rng);
    const double full = g_function(f, x);
    const double vert = g_function(f, x, GVariant::vertical);
    const double gt = g_tilde(0, riesz(0, f), x);
    CHECK(gt * gt == doctest::Approx(full * full - vert * vert).epsilon(1e-11));
  }
}

TEST_CASE("evaluate_square_function cross-validates") {
  const ParamVector p({0.5, 0.0}, {-0.5, 1.0});
  std::mt19937_64 rng(44);
  const Expansion f = Expansion::random(p, Basis::standard(), 3, rng);
  const std::vector<std::vector<double>> pts{{0.1, 0.2}, {-0.6, 0.9}, {0.0, -0.3}};
  const GFunctionResult r = evaluate_square_function(f, -1, GVariant::full, pts);
  REQUIRE(r.values.size() == pts.size());
  CHECK(r.cross_validated());
  for (std::size_t j = 0; j < pts.size(); ++j) CHECK(r.values[j] == g_function(f, pts[j]));
  const GFunctionResult q = evaluate_square_function(riesz(1, f), 1, GVariant::full, pts, GMethod::t_quadrature);
  CHECK(q.method == GMethod::t_quadrature);
  CHECK(q.cross_validated());
}

TEST_CASE("domination of gtilde(R_i f) by g(f)") {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 9; ++trial) {
    const int d = 1 + trial % 3;
    const ParamVector p = random_params(d, rng, -0.9, 2.0);
    const Expansion f = Expansion::random(p, Basis::standard(), 4, rng);
    const DominationReport r = verify_domination(f, TensorGrid::gauss(p, d == 3 ? 4 : 8));
    CHECK(r.holds());
    CHECK(r.max_excess <= 1e-10);
    CHECK(r.points_checked > 0);
  }
  // Constants: both sides vanish.
  const ParamVector p = ParamVector::uniform(1, 0.0, 0.0);
  const DominationReport c = verify_domination(Expansion::single_mode(p, Basis::standard(), {0}, 1.0, 2),
                                               TensorGrid::gauss(p, 6));
  CHECK(c.holds());
  CHECK(c.max_excess <= 0.0);
}

TEST_CASE("energy identity") {
  const ParamVector p1 = ParamVector::uniform(1, 0.0, 0.0);
  const TensorGrid g1 = TensorGrid::gauss(p1, 8);
  const EnergyReport one = verify_energy_identity(Expansion::single_mode(p1, Basis::standard(), {0}, 1.0, 2), g1);
  CHECK(std::abs(one.lhs) <= 1e-15);
  CHECK(std::abs(one.rhs) <= 1e-14);

  const EnergyReport lin = verify_energy_identity(Expansion::single_mode(p1, Basis::standard(), {1}, 1.0, 2), g1);
  CHECK(lin.rhs == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(lin.lhs == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  std::mt19937_64 rng(46);
  for (int trial = 0; trial < 6; ++trial) {
    const int d = 1 + trial % 2;
    const ParamVector p = random_params(d, rng, 0.0, 2.0);
    const Expansion f = Expansion::random(p, Basis::standard(), 4, rng);
    const EnergyReport r = verify_energy_identity(f, TensorGrid::gauss(p, 6));
    CHECK_MESSAGE(r.holds(), "rel err ", r.relative_error);
  }
}

}  // TEST_SUITE
