#include "jacobi/cli/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <ostream>
#include <random>
#include <regex>
#include <sstream>

#include "jacobi/errors.hpp"
#include "jacobi/quadrature.hpp"

namespace jacobi::cli {

json RunConfig::to_json() const {
  return {{"command", command},   {"alpha", alpha},     {"beta", beta},
          {"dim", dims},          {"degree", degree},   {"grid", grid},
          {"t", ts},              {"p", ps},            {"samples", samples},
          {"seed", seed},         {"format", format},   {"out", out},
          {"expect_violation", expect_violation},       {"op", op},
          {"suite", suite},       {"spec", spec},       {"input", input},
          {"variant", variant}};
}

namespace {

template <class T>
T or_default(T value, T fallback) {
  return value < 0 ? fallback : value;
}

std::vector<double> times_or(const RunConfig& cfg, std::vector<double> fallback) {
  return cfg.ts.empty() ? fallback : cfg.ts;
}

std::vector<std::string> broadcast(const std::vector<std::string>& v, int dim, const char* name) {
  if (v.size() == 1) return std::vector<std::string>(dim, v.front());
  if (static_cast<int>(v.size()) != dim) {
    throw ConfigError(std::string("--") + name + " needs 1 or " + std::to_string(dim) + " values");
  }
  return v;
}

Rational rational_of(const std::string& s) {
  try {
    return exact::parse_rational(s);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + s + "'");
  }
}

void check_params(const std::vector<Rational>& v) {
  for (const auto& x : v) {
    if (!(x > -1)) throw ConfigError("parameters must exceed -1");
  }
}

// ---------------------------------------------------------------- output

void emit(const RunConfig& cfg, const std::string& content, std::ostream& out) {
  if (cfg.out.empty()) {
    out << content;
  } else {
    write_atomic(cfg.out, content);
  }
}

std::string json_document(const RunConfig& cfg, json body) {
  body["config"] = cfg.to_json();
  return body.dump(2) + "\n";
}

std::string csv_header(const RunConfig& cfg) { return "# config: " + cfg.to_json().dump() + "\n"; }

std::string csv_point(const std::vector<double>& x) {
  std::string s;
  for (double v : x) s += format_double(v) + ",";
  return s;
}

void check_format(const RunConfig& cfg) {
  if (cfg.format != "json" && cfg.format != "csv") throw ConfigError("--format must be json or csv");
}

// ---------------------------------------------------------------- expand

std::vector<double> parse_tuple(const std::string& text) {
  static const std::regex tuple(R"(\(\s*([^()]*)\s*\))");
  std::smatch m;
  if (!std::regex_match(text, m, tuple)) throw ConfigError("expected a tuple like (1,0), got '" + text + "'");
  std::vector<double> out;
  std::stringstream ss(m[1].str());
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("bad tuple entry '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) throw ConfigError("bad tuple entry '" + item + "'");
    out.push_back(v);
  }
  return out;
}

double parse_number(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("bad number '" + text + "'");
  }
  if (used != text.size()) throw ConfigError("bad number '" + text + "'");
  return v;
}

std::map<std::string, std::string> key_values(std::istringstream& in) {
  std::map<std::string, std::string> out;
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + token + "'");
    out[token.substr(0, eq)] = token.substr(eq + 1);
  }
  return out;
}

MultiIndex to_index(const std::vector<double>& v, int dim) {
  if (static_cast<int>(v.size()) != dim) throw ConfigError("tuple has wrong length for d=" + std::to_string(dim));
  MultiIndex k;
  for (double x : v) {
    if (x < 0 || x != std::floor(x)) throw ConfigError("indices must be nonnegative integers");
    k.push_back(static_cast<int>(x));
  }
  return k;
}

double bump(double u) { return std::abs(u) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - u * u)) : 0.0; }

}  // namespace

Expansion build_expansion(const std::string& spec, const ParamVector& p, int N) {
  std::istringstream in(spec);
  std::string kind;
  in >> kind;
  const int d = p.dim();
  if (kind == "mode") {
    auto kv = key_values(in);
    if (!kv.count("k")) throw ConfigError("mode spec needs k=(...)");
    const MultiIndex k = to_index(parse_tuple(kv["k"]), d);
    for (int c : k) {
      if (c > N) throw ConfigError("mode exceeds the degree cap");
    }
    const double v = kv.count("v") ? parse_number(kv["v"]) : 1.0;
    return Expansion::single_mode(p, Basis::standard(), k, v, N);
  }
  if (kind == "const") {
    auto kv = key_values(in);
    const double v = kv.count("v") ? parse_number(kv["v"]) : 1.0;
    return Expansion::single_mode(p, Basis::standard(), MultiIndex(d, 0), v, N);
  }
  const TensorGrid grid = TensorGrid::gauss(p, default_node_count(N));
  if (kind == "poly") {
    std::string rest;
    std::getline(in, rest);
    std::vector<std::pair<double, MultiIndex>> terms;
    std::stringstream ss(rest);
    std::string term;
    while (std::getline(ss, term, ';')) {
      const auto colon = term.find(':');
      if (colon == std::string::npos) throw ConfigError("poly term must look like c:(e1,...)");
      std::string c = term.substr(0, colon);
      c.erase(0, c.find_first_not_of(" \t"));
      std::string e = term.substr(colon + 1);
      e.erase(e.find_last_not_of(" \t") + 1);
      const MultiIndex exps = to_index(parse_tuple(e), d);
      int total = 0;
      for (int x : exps) total = std::max(total, x);
      if (total > N) throw ConfigError("monomial degree exceeds the degree cap");
      terms.emplace_back(parse_number(c), exps);
    }
    if (terms.empty()) throw ConfigError("poly spec has no terms");
    return fourier_coefficients(
        [&](std::span<const double> x) {
          double s = 0.0;
          for (const auto& [c, e] : terms) {
            double m = c;
            for (int i = 0; i < d; ++i) m *= std::pow(x[i], e[i]);
            s += m;
          }
          return s;
        },
        p, N, grid);
  }
  if (kind == "bump") {
    auto kv = key_values(in);
    const std::vector<double> center = kv.count("c") ? parse_tuple(kv["c"]) : std::vector<double>(d, 0.0);
    if (static_cast<int>(center.size()) != d) throw ConfigError("bump center has wrong length");
    const double r = kv.count("r") ? parse_number(kv["r"]) : 0.5;
    if (!(r > 0.0)) throw ConfigError("bump radius must be positive");
    return fourier_coefficients(
        [&](std::span<const double> x) {
          double v = 1.0;
          for (int i = 0; i < d; ++i) v *= bump((x[i] - center[i]) / r);
          return v;
        },
        p, N, grid);
  }
  throw ConfigError("unknown function spec '" + spec + "' (mode, const, poly, bump)");
}

ParamVector resolve_params(const RunConfig& cfg) { return resolve_params(cfg, cfg.dims.at(0)); }

ParamVector resolve_params(const RunConfig& cfg, int dim) {
  const RationalParamVector r = [&] {
    RunConfig c = cfg;
    c.dims = {dim};
    return resolve_rational_params(c);
  }();
  std::vector<double> a;
  std::vector<double> b;
  for (int i = 0; i < dim; ++i) {
    a.push_back(r.alpha(i).get_d());
    b.push_back(r.beta(i).get_d());
  }
  return ParamVector(a, b);
}

RationalParamVector resolve_rational_params(const RunConfig& cfg) {
  if (cfg.dims.empty()) throw ConfigError("--dim is empty");
  const int dim = cfg.dims.front();
  if (dim < 1) throw ConfigError("--dim must be positive");
  std::vector<Rational> a;
  std::vector<Rational> b;
  for (const auto& s : broadcast(cfg.alpha, dim, "alpha")) a.push_back(rational_of(s));
  for (const auto& s : broadcast(cfg.beta, dim, "beta")) b.push_back(rational_of(s));
  check_params(a);
  check_params(b);
  return RationalParamVector(a, b);
}

namespace {

Expansion load_input(const RunConfig& cfg) {
  if (cfg.input.empty()) throw ConfigError("--in is required");
  json j;
  try {
    j = json::parse(read_file(cfg.input));
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + cfg.input + "' is not valid JSON: " + e.what());
  }
  return expansion_from_json(j);
}

std::string expansion_document(const RunConfig& cfg, const Expansion& f) {
  if (cfg.format == "json") return json_document(cfg, expansion_to_json(f));
  std::string s = csv_header(cfg);
  for (int i = 0; i < f.dim(); ++i) s += "k" + std::to_string(i + 1) + ",";
  s += "v\n";
  for (const auto& [k, v] : f.coeffs()) {
    for (int c : k) s += std::to_string(c) + ",";
    s += format_double(v) + "\n";
  }
  return s;
}

int cmd_expand(const RunConfig& cfg, std::ostream& out) {
  if (cfg.spec.empty()) throw ConfigError("expand needs --spec");
  const Expansion f = build_expansion(cfg.spec, resolve_params(cfg), or_default(cfg.degree, 6));
  emit(cfg, expansion_document(cfg, f), out);
  return kExitOk;
}

// ---------------------------------------------------------------- apply

/// "name-<i>" -> i - 1, or -1 when name has no such suffix.
int coord_suffix(const std::string& op, const std::string& prefix) {
  if (op.rfind(prefix + "-", 0) != 0) return -1;
  const std::string rest = op.substr(prefix.size() + 1);
  if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos) return -1;
  return std::stoi(rest) - 1;
}

double first_time(const RunConfig& cfg) {
  if (cfg.ts.empty()) throw ConfigError("operator '" + cfg.op + "' needs --t");
  if (!(cfg.ts.front() >= 0.0)) throw ConfigError("--t must be nonnegative");
  return cfg.ts.front();
}

Expansion apply_operator(const RunConfig& cfg, const Expansion& f) {
  const std::string& op = cfg.op;
  auto coord = [&](const std::string& prefix) {
    const int i = coord_suffix(op, prefix);
    if (i < 0 || i >= f.dim()) throw ConfigError("coordinate out of range in '" + op + "'");
    return i;
  };
  if (op == "poisson") return apply_poisson(first_time(cfg), f);
  if (op == "heat") return apply_heat(first_time(cfg), f);
  if (op == "project-pi0") return project_pi0(f);
  if (op == "potential") return potential_expansion(f, first_time(cfg));
  // Longer prefixes first: "riesz-adjoint-1" must not parse as "riesz-...".
  if (coord_suffix(op, "riesz-adjoint") >= 0) return riesz_adjoint(coord("riesz-adjoint"), f);
  if (coord_suffix(op, "conjugate-poisson-adjoint") >= 0) {
    return conjugate_poisson_adjoint(coord("conjugate-poisson-adjoint"), first_time(cfg), f);
  }
  if (coord_suffix(op, "conjugate-poisson") >= 0) {
    return conjugate_poisson(coord("conjugate-poisson"), first_time(cfg), f);
  }
  if (coord_suffix(op, "riesz") >= 0) return riesz(coord("riesz"), f);
  if (coord_suffix(op, "modified-poisson") >= 0) {
    return apply_modified(coord("modified-poisson"), SemigroupKind::poisson, first_time(cfg), f);
  }
  if (coord_suffix(op, "modified-heat") >= 0) {
    return apply_modified(coord("modified-heat"), SemigroupKind::heat, first_time(cfg), f);
  }
  if (coord_suffix(op, "delta-star") >= 0) {
    return delta_apply(coord("delta-star"), f, DeltaDirection::delta_star);
  }
  if (coord_suffix(op, "delta") >= 0) return delta_apply(coord("delta"), f, DeltaDirection::delta);
  throw ConfigError("unknown operator '" + op + "'");
}

int cmd_apply(const RunConfig& cfg, std::ostream& out) {
  if (cfg.op.empty()) throw ConfigError("apply needs --op");
  const Expansion f = load_input(cfg);
  Expansion g = [&] {
    try {
      return apply_operator(cfg, f);
    } catch (const BasisMismatch& e) {
      throw ConfigError(e.what());
    }
  }();
  emit(cfg, expansion_document(cfg, g), out);
  return kExitOk;
}

// ---------------------------------------------------------------- verify

struct Check {
  std::string name;
  bool pass = false;
  json detail;
};

json suite_exact(const RunConfig& cfg, std::vector<Check>& checks) {
  const RationalParamVector p = resolve_rational_params(cfg);
  const int cap = or_default(cfg.degree, 4);
  for (exact::IdentityId id : exact::all_identities()) {
    const IdentityReport r = exact::verify_identity(id, p, cap);
    checks.push_back({std::string(exact::identity_name(id)), r.passed(), to_json(r)});
  }
  return {{"params", p.to_string()}, {"degree_cap", cap}};
}

json suite_numeric(const RunConfig& cfg, std::vector<Check>& checks) {
  const int N = or_default(cfg.degree, 5);
  json runs = json::array();
  for (int d : cfg.dims) {
    const ParamVector p = resolve_params(cfg, d);
    std::mt19937_64 rng(cfg.seed);
    const Expansion f = Expansion::random(p, Basis::standard(), N, rng);
    const TensorGrid grid = TensorGrid::gauss(p, or_default(cfg.grid, 2 * N + 4));
    for (double t : times_or(cfg, {0.25, 1.0})) {
      if (!(t > 0.0)) throw ConfigError("--t must be positive for the numeric suite");
      for (const auto& r : verify_cauchy_riemann(f, t, grid)) {
        checks.push_back({r.equation + " d=" + std::to_string(d) + " t=" + format_double(t),
                          r.max_residual <= 1e-8, to_json(r)});
      }
      const double hh4 = hh4_coefficient_error(f, t);
      checks.push_back({"hh4 d=" + std::to_string(d) + " t=" + format_double(t), hh4 <= 1e-13,
                        {{"max_coeff_error", hh4}}});
    }
  }
  return {{"degree_cap", N}, {"tolerance", 1e-8}, {"hh4_tolerance", 1e-13}};
}

std::vector<std::vector<double>> tensor_points(const std::vector<double>& axis, int d) {
  std::vector<std::vector<double>> out{{}};
  for (int c = 0; c < d; ++c) {
    std::vector<std::vector<double>> next;
    for (const auto& prefix : out) {
      for (double x : axis) {
        auto p = prefix;
        p.push_back(x);
        next.push_back(p);
      }
    }
    out = std::move(next);
  }
  return out;
}

json suite_kernels(const RunConfig& cfg, std::vector<Check>& checks) {
  const ParamVector p = resolve_params(cfg);
  const int n = or_default(cfg.grid, p.dim() == 1 ? 51 : 11);
  const auto pts = tensor_points(interior_points(n), p.dim());
  const int K = or_default(cfg.degree, kDefaultKernelDegreeCap);
  bool any_violation = false;
  for (double t : times_or(cfg, {0.1, 0.5, 1.0, 2.0})) {
    if (!(t > 0.0)) throw ConfigError("--t must be positive for the kernels suite");
    const KernelComparison c = compare_kernels(0, t, p, pts, K);
    const bool violation = c.converged && c.max_excess > 1e-10;
    any_violation = any_violation || violation;
    const bool pass = cfg.expect_violation ? true : (c.converged && !violation);
    checks.push_back({"kernel t=" + format_double(t), pass, to_json(c)});
  }
  if (cfg.expect_violation) {
    checks.push_back({"violation detected", any_violation, json::object()});
  }
  return {{"grid", n}, {"slack", 1e-10}, {"expect_violation", cfg.expect_violation}};
}

/// Nonnegative band-limited f = h^2 with h random of degree N / 2.
Expansion nonnegative_sample(const ParamVector& p, int N, std::mt19937_64& rng) {
  const Expansion h = Expansion::random(p, Basis::standard(), N / 2, rng);
  const TensorGrid grid = TensorGrid::gauss(p, N + 2);
  return fourier_coefficients(
      [&](std::span<const double> x) {
        const double v = h.synthesize(x);
        return v * v;
      },
      p, N, grid);
}

json suite_energy(const RunConfig& cfg, std::vector<Check>& checks) {
  const int N = or_default(cfg.degree, 6);
  for (int d : cfg.dims) {
    const ParamVector p = resolve_params(cfg, d);
    std::mt19937_64 rng(cfg.seed);
    const Expansion f = nonnegative_sample(p, N, rng);
    const TensorGrid grid = TensorGrid::gauss(p, or_default(cfg.grid, N + 2));
    const EnergyReport r = verify_energy_identity(f, grid);
    checks.push_back({"energy d=" + std::to_string(d), r.holds(1e-8), to_json(r)});
  }
  return {{"degree_cap", N}, {"tolerance", 1e-8}};
}

json suite_domination(const RunConfig& cfg, std::vector<Check>& checks) {
  const int N = or_default(cfg.degree, 5);
  for (int d : cfg.dims) {
    const ParamVector p = resolve_params(cfg, d);
    std::mt19937_64 rng(cfg.seed);
    const Expansion f = Expansion::random(p, Basis::standard(), N, rng);
    const TensorGrid grid = TensorGrid::gauss(p, or_default(cfg.grid, 2 * N + 4));
    const DominationReport r = verify_domination(f, grid);
    checks.push_back({"domination d=" + std::to_string(d), r.holds(), to_json(r)});
  }
  return {{"degree_cap", N}, {"slack", 1e-10}};
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<Check> checks;
  json info;
  if (cfg.suite == "exact") {
    info = suite_exact(cfg, checks);
  } else if (cfg.suite == "numeric") {
    info = suite_numeric(cfg, checks);
  } else if (cfg.suite == "kernels") {
    info = suite_kernels(cfg, checks);
  } else if (cfg.suite == "energy") {
    info = suite_energy(cfg, checks);
  } else if (cfg.suite == "domination") {
    info = suite_domination(cfg, checks);
  } else {
    throw ConfigError("unknown suite '" + cfg.suite + "' (exact, numeric, kernels, energy, domination)");
  }
  json rows = json::array();
  json failed = json::array();
  for (const auto& c : checks) {
    rows.push_back({{"name", c.name}, {"status", c.pass ? "PASS" : "FAIL"}, {"detail", c.detail}});
    if (!c.pass) failed.push_back(c.name);
  }
  const bool ok = failed.empty();
  std::string doc;
  if (cfg.format == "json") {
    doc = json_document(cfg, {{"suite", cfg.suite}, {"status", ok ? "PASS" : "FAIL"}, {"info", info},
                              {"checks", rows}, {"failed", failed}});
  } else {
    doc = csv_header(cfg) + "check,status\n";
    for (const auto& c : checks) doc += c.name + "," + (c.pass ? "PASS" : "FAIL") + "\n";
  }
  emit(cfg, doc, out);
  for (const auto& name : failed) err << "FAIL: " << name.get<std::string>() << "\n";
  return ok ? kExitOk : kExitFail;
}

// ---------------------------------------------------------------- kernels

int cmd_kernels(const RunConfig& cfg, std::ostream& out) {
  const ParamVector p = resolve_params(cfg);
  const int n = or_default(cfg.grid, p.dim() == 1 ? 51 : 11);
  const auto pts = tensor_points(interior_points(n), p.dim());
  const int K = or_default(cfg.degree, kDefaultKernelDegreeCap);
  const std::string op = cfg.op.empty() ? "heat" : cfg.op;
  const int modified = coord_suffix(op, "modified");
  if (op != "heat" && (modified < 0 || modified >= p.dim())) {
    throw ConfigError("kernels --op must be heat or modified-<i>");
  }
  std::vector<KernelTable> tables;
  for (double t : times_or(cfg, {0.5})) {
    if (!(t > 0.0)) throw ConfigError("--t must be positive");
    tables.push_back(op == "heat" ? heat_kernel_table(t, p, pts, pts, K)
                                  : modified_kernel_table(modified, t, p, pts, pts, K));
  }
  std::string doc;
  if (cfg.format == "json") {
    json list = json::array();
    for (const auto& tb : tables) {
      list.push_back({{"t", tb.t},
                      {"variant", op},
                      {"max_degree", tb.max_degree},
                      {"residual", tb.residual},
                      {"converged", tb.converged},
                      {"path_discrepancy", tb.path_discrepancy},
                      {"points", tb.xs},
                      {"values", tb.values}});
    }
    doc = json_document(cfg, {{"tables", list}});
  } else {
    doc = csv_header(cfg) + "t,";
    for (int i = 0; i < p.dim(); ++i) doc += "x" + std::to_string(i + 1) + ",";
    for (int i = 0; i < p.dim(); ++i) doc += "y" + std::to_string(i + 1) + ",";
    doc += "value,residual_flag\n";
    for (const auto& tb : tables) {
      const std::string flag = tb.converged ? "0" : "1";
      for (std::size_t a = 0; a < tb.xs.size(); ++a) {
        for (std::size_t b = 0; b < tb.ys.size(); ++b) {
          doc += format_double(tb.t) + "," + csv_point(tb.xs[a]) + csv_point(tb.ys[b]) +
                 format_double(tb.at(a, b)) + "," + flag + "\n";
        }
      }
    }
  }
  emit(cfg, doc, out);
  return kExitOk;
}

// ---------------------------------------------------------------- gfun

int cmd_gfun(const RunConfig& cfg, std::ostream& out) {
  const Expansion f = load_input(cfg);
  if (cfg.variant != "full" && cfg.variant != "vertical") throw ConfigError("--variant must be full or vertical");
  const GVariant variant = cfg.variant == "full" ? GVariant::full : GVariant::vertical;
  const TensorGrid grid = TensorGrid::gauss(f.params(), or_default(cfg.grid, 2 * f.degree_cap() + 4));
  std::vector<std::vector<double>> pts;
  for (std::size_t n = 0; n < grid.size(); ++n) pts.push_back(grid.point(n));
  const GFunctionResult r = evaluate_square_function(f, f.basis().shifted, variant, pts);
  std::string doc;
  if (cfg.format == "json") {
    json body = to_json(r);
    body["function"] = f.basis().is_standard() ? "g" : "g_tilde_" + std::to_string(f.basis().shifted + 1);
    doc = json_document(cfg, body);
  } else {
    doc = csv_header(cfg);
    for (int i = 0; i < f.dim(); ++i) doc += "x" + std::to_string(i + 1) + ",";
    doc += "value\n";
    for (std::size_t n = 0; n < pts.size(); ++n) doc += csv_point(pts[n]) + format_double(r.values[n]) + "\n";
  }
  emit(cfg, doc, out);
  return r.cross_validated() ? kExitOk : kExitFail;
}

// ---------------------------------------------------------------- normprobe

int cmd_normprobe(const RunConfig& cfg, std::ostream& out) {
  const std::vector<double> ps = cfg.ps.empty() ? std::vector<double>{2.0} : cfg.ps;
  for (double p : ps) {
    if (!(p >= 1.0) || std::isinf(p)) throw ConfigError("--p values must satisfy 1 <= p < inf");
  }
  const double t = cfg.ts.empty() ? 0.5 : cfg.ts.front();
  ProbeOperator op;
  try {
    op = ProbeOperator::parse(cfg.op.empty() ? "riesz-1" : cfg.op, t);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (cfg.samples < 1) throw ConfigError("--samples must be positive");
  const int N = or_default(cfg.degree, 6);
  std::vector<NormProbeReport> rows;
  for (double p : ps) {
    for (int d : cfg.dims) {
      if (op.coord >= d) throw ConfigError("operator coordinate exceeds --dim");
      rows.push_back(probe_operator_norm(op, p, resolve_params(cfg, d), N, cfg.samples, cfg.seed));
    }
  }
  std::string doc;
  if (cfg.format == "json") {
    json list = json::array();
    for (const auto& r : rows) list.push_back(to_json(r));
    doc = json_document(cfg, {{"rows", list}});
  } else {
    doc = csv_header(cfg) + "op,p,d,N,samples,seed,t,best_ratio\n";
    for (const auto& r : rows) {
      doc += r.op + "," + format_double(r.p) + "," + std::to_string(r.dim) + "," +
             std::to_string(r.degree_cap) + "," + std::to_string(r.samples) + "," +
             std::to_string(r.seed) + "," + format_double(r.t) + "," + format_double(r.best_ratio) + "\n";
    }
  }
  emit(cfg, doc, out);
  return kExitOk;
}

void add_common(CLI::App* app, RunConfig& cfg) {
  app->add_option("--alpha", cfg.alpha, "alpha per coordinate (one value is broadcast)")->delimiter(',');
  app->add_option("--beta", cfg.beta, "beta per coordinate (one value is broadcast)")->delimiter(',');
  app->add_option("--dim", cfg.dims, "dimension (normprobe, verify: list)")->delimiter(',');
  app->add_option("--degree", cfg.degree, "degree cap N");
  app->add_option("--t", cfg.ts, "time values")->delimiter(',');
  app->add_option("--p", cfg.ps, "Lp exponents")->delimiter(',');
  app->add_option("--grid", cfg.grid, "grid points per coordinate");
  app->add_option("--samples", cfg.samples, "random samples");
  app->add_option("--seed", cfg.seed, "random seed");
  app->add_option("--format", cfg.format, "json or csv");
  app->add_option("--out", cfg.out, "output file (default: standard output)");
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    check_format(cfg);
    if (cfg.command == "expand") return cmd_expand(cfg, out);
    if (cfg.command == "apply") return cmd_apply(cfg, out);
    if (cfg.command == "verify") return cmd_verify(cfg, out, err);
    if (cfg.command == "kernels") return cmd_kernels(cfg, out);
    if (cfg.command == "gfun") return cmd_gfun(cfg, out);
    if (cfg.command == "normprobe") return cmd_normprobe(cfg, out);
    throw ConfigError("unknown command '" + cfg.command + "'");
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BasisMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Jacobi expansions: spectral operators, Riesz transforms and square functions"};
  app.require_subcommand(1);
  auto* expand = app.add_subcommand("expand", "expand a builtin function into Jacobi coefficients");
  add_common(expand, cfg);
  expand->add_option("--spec", cfg.spec, "function spec (mode, const, poly, bump)")->required();

  auto* apply = app.add_subcommand("apply", "apply an operator to an expansion file");
  add_common(apply, cfg);
  apply->add_option("--op", cfg.op, "operator id")->required();
  apply->add_option("--in", cfg.input, "expansion file")->required();

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  add_common(verify, cfg);
  verify->add_option("suite", cfg.suite, "exact | numeric | kernels | energy | domination")->required();
  verify->add_flag("--expect-violation", cfg.expect_violation, "pass iff a kernel violation is found");

  auto* kernels = app.add_subcommand("kernels", "tabulate heat or modified heat kernels");
  add_common(kernels, cfg);
  kernels->add_option("--op", cfg.op, "heat | modified-<i>");

  auto* gfun = app.add_subcommand("gfun", "evaluate g (standard input) or g_tilde (shifted input)");
  add_common(gfun, cfg);
  gfun->add_option("--in", cfg.input, "expansion file")->required();
  gfun->add_option("--variant", cfg.variant, "full | vertical");

  auto* normprobe = app.add_subcommand("normprobe", "lower-bound Lp operator norms by sampling");
  add_common(normprobe, cfg);
  normprobe->add_option("--op", cfg.op, "riesz-<i> | conjugate-poisson-<i> | heat | poisson | riesz-vector");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  return run(cfg, out, err);
}

}  // namespace jacobi::cli
