#include "jacobi/normprobe.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "jacobi/conjugacy.hpp"
#include "jacobi/parallel.hpp"
#include "jacobi/quadrature.hpp"
#include "jacobi/spectral.hpp"

namespace jacobi {

std::string ProbeOperator::name() const {
  switch (kind) {
    case Kind::riesz:
      return "riesz-" + std::to_string(coord + 1);
    case Kind::conjugate_poisson:
      return "conjugate-poisson-" + std::to_string(coord + 1);
    case Kind::heat:
      return "heat";
    case Kind::poisson:
      return "poisson";
    case Kind::riesz_vector:
      return "riesz-vector";
  }
  return "unknown";
}

ProbeOperator ProbeOperator::parse(const std::string& name, double t) {
  ProbeOperator op;
  op.t = t;
  auto coord_after = [&](const std::string& prefix) {
    const std::string rest = name.substr(prefix.size());
    std::size_t used = 0;
    int i = 0;
    try {
      i = std::stoi(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != rest.size() || rest.empty() || i < 1) {
      throw std::invalid_argument("unknown operator '" + name + "'");
    }
    return i - 1;
  };
  if (name == "heat") {
    op.kind = Kind::heat;
  } else if (name == "poisson") {
    op.kind = Kind::poisson;
  } else if (name == "riesz-vector") {
    op.kind = Kind::riesz_vector;
  } else if (name.rfind("conjugate-poisson-", 0) == 0) {
    op.kind = Kind::conjugate_poisson;
    op.coord = coord_after("conjugate-poisson-");
  } else if (name.rfind("riesz-", 0) == 0) {
    op.kind = Kind::riesz;
    op.coord = coord_after("riesz-");
  } else {
    throw std::invalid_argument("unknown operator '" + name + "'");
  }
  if ((op.kind == Kind::heat || op.kind == Kind::poisson || op.kind == Kind::conjugate_poisson) &&
      !(t > 0.0)) {
    throw std::invalid_argument("operator '" + name + "' needs t > 0");
  }
  return op;
}

namespace {

double lp_of(const std::vector<double>& v, double p, const TensorGrid& grid) {
  double sum = 0.0;
  for (std::size_t n = 0; n < v.size(); ++n) sum += grid.weight(n) * std::pow(std::abs(v[n]), p);
  return std::pow(sum, 1.0 / p);
}

std::vector<double> image_values(const ProbeOperator& op, const Expansion& f,
                                 const TensorGrid& grid) {
  using Kind = ProbeOperator::Kind;
  switch (op.kind) {
    case Kind::riesz:
      return synthesize_on(riesz(op.coord, f), grid);
    case Kind::conjugate_poisson:
      return synthesize_on(conjugate_poisson(op.coord, op.t, f), grid);
    case Kind::heat:
      return synthesize_on(apply_heat(op.t, f), grid);
    case Kind::poisson:
      return synthesize_on(apply_poisson(op.t, f), grid);
    case Kind::riesz_vector: {
      std::vector<double> sq(grid.size(), 0.0);
      for (int i = 0; i < f.dim(); ++i) {
        const auto v = synthesize_on(riesz(i, f), grid);
        for (std::size_t n = 0; n < v.size(); ++n) sq[n] += v[n] * v[n];
      }
      for (double& v : sq) v = std::sqrt(v);
      return sq;
    }
  }
  return {};
}

}  // namespace

NormProbeReport probe_operator_norm(const ProbeOperator& op, double p, const ParamVector& params,
                                    int N, int samples, std::uint64_t seed) {
  if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("norm probe: need 1 <= p < inf");
  if (samples < 1) throw std::invalid_argument("norm probe: samples must be positive");
  if (N < 0) throw std::invalid_argument("norm probe: degree cap must be nonnegative");
  if (op.kind == ProbeOperator::Kind::riesz || op.kind == ProbeOperator::Kind::conjugate_poisson) {
    if (op.coord >= params.dim()) throw std::invalid_argument("norm probe: coordinate out of range");
  }
  const TensorGrid grid = TensorGrid::gauss(params, 2 * N + 4);
  std::vector<double> ratios(samples, 0.0);
  parallel_for(samples, [&](std::size_t j) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(j >> 32)};
    std::mt19937_64 rng(seq);
    const Expansion f = Expansion::random(params, Basis::standard(), N, rng);
    const double denom = lp_of(synthesize_on(f, grid), p, grid);
    if (denom > 0.0) ratios[j] = lp_of(image_values(op, f, grid), p, grid) / denom;
  });
  NormProbeReport out;
  out.op = op.name();
  out.p = p;
  out.dim = params.dim();
  out.degree_cap = N;
  out.samples = samples;
  out.seed = seed;
  out.t = op.t;
  for (double r : ratios) out.best_ratio = std::max(out.best_ratio, r);
  return out;
}

std::vector<NormProbeReport> dimension_sweep(const ProbeOperator& op, const std::vector<double>& ps,
                                             const std::vector<int>& dims, double alpha,
                                             double beta, int N, int samples, std::uint64_t seed) {
  std::vector<NormProbeReport> out;
  for (double p : ps) {
    for (int d : dims) {
      out.push_back(probe_operator_norm(op, p, ParamVector::uniform(d, alpha, beta), N, samples, seed));
    }
  }
  return out;
}

}  // namespace jacobi
