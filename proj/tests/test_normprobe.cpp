#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "jacobi/normprobe.hpp"

using namespace jacobi;

TEST_SUITE("normprobe") {

TEST_CASE("operator names") {
  CHECK(ProbeOperator::parse("riesz-2").kind == ProbeOperator::Kind::riesz);
  CHECK(ProbeOperator::parse("riesz-2").coord == 1);
  CHECK(ProbeOperator::parse("conjugate-poisson-1", 0.3).coord == 0);
  CHECK(ProbeOperator::parse("heat", 1.0).name() == "heat");
  CHECK(ProbeOperator::parse("riesz-vector").kind == ProbeOperator::Kind::riesz_vector);
  for (const char* bad : {"riesz", "riesz-0", "riesz-x", "riesz-1a", "laplace", ""}) {
    CHECK_THROWS_AS(ProbeOperator::parse(bad), std::invalid_argument);
  }
  CHECK_THROWS_AS(ProbeOperator::parse("poisson", 0.0), std::invalid_argument);
  CHECK_NOTHROW(ProbeOperator::parse("riesz-1", 0.0));
}

TEST_CASE("contractive semigroups stay below one") {
  const ParamVector p({0.5, -0.5}, {0.0, 1.0});
  for (const char* name : {"poisson", "heat"}) {
    for (double q : {1.0, 1.5, 2.0, 4.0}) {
      const NormProbeReport r = probe_operator_norm(ProbeOperator::parse(name, 0.5), q, p, 4, 40, 7);
      CHECK_MESSAGE(r.best_ratio <= 1.0 + 1e-10, name, " p=", q);
      CHECK(r.best_ratio > 0.0);
    }
  }
}

TEST_CASE("Riesz transform at p = 2 is a contraction") {
  for (int d = 1; d <= 3; ++d) {
    const NormProbeReport r =
        probe_operator_norm(ProbeOperator::parse("riesz-1"), 2.0, ParamVector::uniform(d, 0.5, -0.25), 4, 30, 11);
    CHECK(r.best_ratio <= 1.0 + 1e-10);
    CHECK(r.best_ratio > 0.5);
  }
}

TEST_CASE("results are reproducible") {
  const ProbeOperator op = ProbeOperator::parse("riesz-1");
  const auto a = dimension_sweep(op, {1.5, 4.0}, {1, 2}, 0.0, 0.0, 4, 25, 42);
  const auto b = dimension_sweep(op, {1.5, 4.0}, {1, 2}, 0.0, 0.0, 4, 25, 42);
  REQUIRE(a.size() == 4);
  REQUIRE(b.size() == 4);
  for (std::size_t j = 0; j < a.size(); ++j) {
    CHECK(a[j].best_ratio == b[j].best_ratio);
    CHECK(std::isfinite(a[j].best_ratio));
    CHECK(a[j].seed == 42);
    CHECK(a[j].op == "riesz-1");
  }
  const auto c = dimension_sweep(op, {1.5}, {1}, 0.0, 0.0, 4, 25, 43);
  CHECK(c[0].best_ratio != a[0].best_ratio);
}

TEST_CASE("invalid arguments") {
  const ParamVector p = ParamVector::uniform(1, 0.0, 0.0);
  const ProbeOperator op = ProbeOperator::parse("riesz-1");
  CHECK_THROWS_AS(probe_operator_norm(op, 0.5, p, 4, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(probe_operator_norm(op, std::numeric_limits<double>::infinity(), p, 4, 10, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(probe_operator_norm(op, 2.0, p, 4, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(probe_operator_norm(ProbeOperator::parse("riesz-2"), 2.0, p, 4, 10, 1), std::invalid_argument);
}

}  // TEST_SUITE
