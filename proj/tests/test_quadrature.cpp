#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "jacobi/errors.hpp"
#include "jacobi/quadrature.hpp"
#include "oracles.hpp"

using namespace jacobi;

TEST_SUITE("quadrature") {

TEST_CASE("small rules") {
  const QuadRule1D r1 = gauss_jacobi({0, 0}, 1);
  REQUIRE(r1.nodes.size() == 1);
  CHECK(std::abs(r1.nodes[0]) <= 1e-15);
  CHECK(r1.weights[0] == doctest::Approx(2.0).epsilon(1e-15));

  const QuadRule1D r2 = gauss_jacobi({0, 0}, 2);
  double m2 = 0.0;
  for (int j = 0; j < 2; ++j) m2 += r2.weights[j] * r2.nodes[j] * r2.nodes[j];
  CHECK(m2 == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  const QuadRule1D r3 = gauss_jacobi({1, 0}, 3);
  double m0 = 0.0;
  for (double w : r3.weights) m0 += w;
  CHECK(m0 == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("rule structure") {
  for (auto [a, b] : {std::pair{-0.9, -0.9}, std::pair{-0.5, 0.0}, std::pair{1.0, 2.0}, std::pair{3.5, 0.25}}) {
    for (int n : {1, 5, 32, 100}) {
      const QuadRule1D r = gauss_jacobi({a, b}, n);
      REQUIRE(r.nodes.size() == static_cast<std::size_t>(n));
      CHECK(std::is_sorted(r.nodes.begin(), r.nodes.end()));
      CHECK(r.nodes.front() > -1.0);
      CHECK(r.nodes.back() < 1.0);
      double mass = 0.0;
      for (double w : r.weights) {
        CHECK(w > 0.0);
        mass += w;
      }
      CHECK(mass == doctest::Approx(total_mass({a, b})).epsilon(1e-12));
    }
  }
}

TEST_CASE("exact on polynomials of degree <= 2n - 1") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const double a = oracle::uniform(rng, -0.95, 3.0);
    const double b = oracle::uniform(rng, -0.95, 3.0);
    const int n = 1 + static_cast<int>(rng() % 8);
    const int deg = 2 * n - 1;
    std::vector<double> c(deg + 1);
    for (double& v : c) v = oracle::uniform(rng, -1.0, 1.0);
    long double ref = 0.0L;
    for (int m = 0; m <= deg; ++m) ref += c[m] * oracle::jacobi_moment(a, b, m);
    const QuadRule1D r = gauss_jacobi({a, b}, n);
    double got = 0.0;
    for (int j = 0; j < n; ++j) {
      double v = 0.0;
      for (int m = deg; m >= 0; --m) v = v * r.nodes[j] + c[m];
      got += r.weights[j] * v;
    }
    CHECK_MESSAGE(std::abs(got - static_cast<double>(ref)) <= 1e-12 * std::abs(static_cast<double>(ref)),
                  "a=" << a << " b=" << b << " n=" << n);
  }
}

TEST_CASE("default node count") {
  CHECK(default_node_count(0) == 32);
  CHECK(default_node_count(12) == 32);
  CHECK(default_node_count(20) == 48);
}

TEST_CASE("tensor grid") {
  const ParamVector p({0.0, 1.0}, {0.5, -0.5});
  const TensorGrid g = TensorGrid::gauss(p, 6);
  CHECK(g.size() == 36);
  CHECK(g.shape() == std::vector<std::size_t>{6, 6});
  double mass = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) mass += g.weight(j);
  CHECK(mass == doctest::Approx(p.total_mass()).epsilon(1e-13));
  // Last coordinate fastest.
  CHECK(g.point(1)[0] == g.point(0)[0]);
  CHECK(g.point(1)[1] == g.rule(1).nodes[1]);
  CHECK(g.point(6)[0] == g.rule(0).nodes[1]);
}

TEST_CASE("Fourier coefficients of simple functions") {
  const ParamVector p1 = ParamVector::uniform(1, 0, 0);
  const TensorGrid g1 = TensorGrid::gauss(p1, 8);
  const Expansion one = fourier_coefficients([](std::span<const double>) { return 1.0; }, p1, 4, g1);
  CHECK(one.coeff({0}) == doctest::Approx(1.0).epsilon(1e-14));
  for (int k = 1; k <= 4; ++k) CHECK(std::abs(one.coeff({k})) <= 1e-12);

  const Expansion x = fourier_coefficients([](std::span<const double> y) { return y[0]; }, p1, 4, g1);
  CHECK(x.coeff({1}) == doctest::Approx(1.0).epsilon(1e-14));
  for (int k : {0, 2, 3, 4}) CHECK(std::abs(x.coeff({k})) <= 1e-12);

  const ParamVector ph = ParamVector::uniform(1, 0.5, 0.5);
  const TensorGrid gh = TensorGrid::gauss(ph, 10);
  const Expansion p3 = fourier_coefficients(
      [&](std::span<const double> y) { return eval_jacobi(ph.pair(0), 3, y[0]); }, ph, 6, gh);
  CHECK(p3.coeff({3}) == doctest::Approx(1.0).epsilon(1e-12));
  for (int k : {0, 1, 2, 4, 5, 6}) CHECK(std::abs(p3.coeff({k})) <= 1e-11);

  CHECK_THROWS_AS(fourier_coefficients([](std::span<const double>) { return 1.0; }, p1, 8, g1),
                  InsufficientResolution);
}

TEST_CASE("shifted Fourier coefficients") {
  const ParamVector p({0.5, 0.0}, {1.0, -0.5});
  const TensorGrid g = TensorGrid::gauss(p, 10);
  const Expansion phi1 =
      fourier_coefficients_shifted(0, [](std::span<const double> y) { return phi(y[0]); }, p, 3, g);
  CHECK(phi1.basis() == Basis::shifted_in(0));
  CHECK(phi1.coeff({0, 0}) == doctest::Approx(1.0).epsilon(1e-13));
  for (const auto& [k, v] : phi1.coeffs()) {
    if (k != MultiIndex{0, 0}) CHECK(std::abs(v) <= 1e-12);
  }

  const ParamPair s = p.shifted(0).pair(0);
  const Expansion single = fourier_coefficients_shifted(
      0, [&](std::span<const double> y) { return phi(y[0]) * eval_jacobi(s, 2, y[0]); }, p, 4, g);
  CHECK(single.coeff({2, 0}) == doctest::Approx(1.0).epsilon(1e-12));

  // Mixed case: Phi_1 x_2 (1 + x_1 - x_2^2), resynthesized.
  auto mixed = [](std::span<const double> y) { return phi(y[0]) * y[1] * (1 + y[0] - y[1] * y[1]); };
  const Expansion m = fourier_coefficients_shifted(0, mixed, p, 4, g);
  for (double u : {-0.8, 0.0, 0.6}) {
    for (double v : {-0.5, 0.3, 0.9}) {
      const std::vector<double> x{u, v};
      CHECK(std::abs(m.synthesize(x) - mixed(x)) <= 1e-10);
    }
  }
}

TEST_CASE("analysis after synthesis is the identity") {
  std::mt19937_64 rng(5);
  for (int d = 1; d <= 3; ++d) {
    std::vector<double> a(d), b(d);
    for (int i = 0; i < d; ++i) {
      a[i] = oracle::uniform(rng, -0.9, 2.0);
      b[i] = oracle::uniform(rng, -0.9, 2.0);
    }
    const ParamVector p(a, b);
    const int N = 5;
    const TensorGrid grid = TensorGrid::gauss(p, default_node_count(N) / 2);
    const Expansion f = Expansion::random(p, Basis::standard(), N, rng);
    const Expansion back = fourier_coefficients(synthesize_on(f, grid), p, N, grid);
    CHECK(max_coeff_difference(f, back) <= 1e-11);

    // Grid synthesis equals pointwise synthesis.
    const auto vals = synthesize_on(f, grid);
    for (std::size_t j = 0; j < grid.size(); j += 37) {
      CHECK(vals[j] == doctest::Approx(f.synthesize(grid.point(j))).epsilon(1e-12));
    }
  }
}

TEST_CASE("Lp norms") {
  const ParamVector p1 = ParamVector::uniform(1, 0, 0);
  const TensorGrid g = TensorGrid::gauss(p1, 16);
  const std::vector<double> ones(g.size(), 1.0);
  CHECK(lp_norm(ones, 2.0, g) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

  const ParamVector p2({1.0, -0.5}, {0.5, 2.0});
  const TensorGrid g2 = TensorGrid::gauss(p2, 7);
  const std::vector<double> ones2(g2.size(), 1.0);
  for (double q : {1.0, 1.5, 3.0}) {
    CHECK(lp_norm(ones2, q, g2) == doctest::Approx(std::pow(p2.total_mass(), 1.0 / q)).epsilon(1e-13));
  }

  const TensorGrid g64 = TensorGrid::gauss(p1, 64);
  const Expansion p2mode = Expansion::single_mode(p1, Basis::standard(), {2}, 1.0, 2);
  const double inf_norm = lp_norm(synthesize_on(p2mode, g64), std::numeric_limits<double>::infinity(), g64);
  CHECK(inf_norm <= 1.0);
  CHECK(inf_norm > 0.99);

  std::mt19937_64 rng(1);
  std::vector<double> v(g2.size());
  for (double& x : v) x = oracle::uniform(rng, -2, 2);
  std::vector<double> scaled(v), bigger(v);
  for (std::size_t j = 0; j < v.size(); ++j) {
    scaled[j] = -3.5 * v[j];
    bigger[j] = v[j] + (v[j] >= 0 ? 0.1 : -0.1);
  }
  for (double q : {1.0, 1.5, 2.0, 4.0}) {
    CHECK(lp_norm(scaled, q, g2) == doctest::Approx(3.5 * lp_norm(v, q, g2)).epsilon(1e-14));
    CHECK(lp_norm(bigger, q, g2) >= lp_norm(v, q, g2));
  }
}

}  // TEST_SUITE
