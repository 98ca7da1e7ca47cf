#include "jacobi/cli/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace jacobi::cli {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

/// JSON has no inf/nan; keep them as strings.
json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

json point(const std::vector<double>& x) {
  json out = json::array();
  for (double v : x) out.push_back(number(v));
  return out;
}

}  // namespace

json expansion_to_json(const Expansion& f) {
  json coeffs = json::array();
  for (const auto& [k, v] : f.coeffs()) coeffs.push_back({{"k", k}, {"v", v}});
  json basis = f.basis().is_standard() ? json("standard") : json{{"shifted", f.basis().shifted + 1}};
  return {{"alpha", f.params().alphas()},
          {"beta", f.params().betas()},
          {"basis", basis},
          {"N", f.degree_cap()},
          {"coeffs", coeffs}};
}

Expansion expansion_from_json(const json& j) {
  try {
    if (!j.is_object()) throw ConfigError("expansion: top level must be an object");
    const auto alpha = j.at("alpha").get<std::vector<double>>();
    const auto beta = j.at("beta").get<std::vector<double>>();
    if (alpha.empty() || alpha.size() != beta.size()) {
      throw ConfigError("expansion: alpha and beta must be non-empty and of equal length");
    }
    const int dim = static_cast<int>(alpha.size());
    Basis basis = Basis::standard();
    const json& b = j.at("basis");
    if (b.is_object()) {
      const int i = b.at("shifted").get<int>();
      if (i < 1 || i > dim) throw ConfigError("expansion: shifted index must lie in 1..d");
      basis = Basis::shifted_in(i - 1);
    } else if (b.get<std::string>() != "standard") {
      throw ConfigError("expansion: basis must be \"standard\" or {\"shifted\": i}");
    }
    const int N = j.at("N").get<int>();
    if (N < 0) throw ConfigError("expansion: N must be nonnegative");
    Expansion f(ParamVector(alpha, beta), basis, N);
    for (const auto& c : j.at("coeffs")) {
      const auto k = c.at("k").get<std::vector<int>>();
      if (static_cast<int>(k.size()) != dim) throw ConfigError("expansion: mode of wrong length");
      for (int v : k) {
        if (v < 0 || v > N) throw ConfigError("expansion: mode outside [0, N]^d");
      }
      f.add(k, c.at("v").get<double>());
    }
    return f;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("expansion: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("expansion: ") + e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("expansion: ") + e.what());
  }
}

json to_json(const ParamVector& p) { return {{"alpha", p.alphas()}, {"beta", p.betas()}}; }

json to_json(const IdentityReport& r) {
  json failures = json::array();
  std::size_t skipped = 0;
  for (const auto& m : r.modes) {
    if (m.status == exact::CheckStatus::skip) ++skipped;
    if (m.status != exact::CheckStatus::fail) continue;
    failures.push_back({{"k", m.mode}, {"detail", m.detail}, {"residual", m.residual_terms}});
  }
  json alpha = json::array();
  json beta = json::array();
  for (int i = 0; i < r.params.dim(); ++i) {
    alpha.push_back(exact::to_string(r.params.alpha(i)));
    beta.push_back(exact::to_string(r.params.beta(i)));
  }
  return {{"identity", std::string(exact::identity_name(r.identity))},
          {"alpha", alpha},
          {"beta", beta},
          {"degree_cap", r.degree_cap},
          {"modes", r.modes.size()},
          {"skipped", skipped},
          {"status", r.passed() ? "PASS" : "FAIL"},
          {"failures", failures}};
}

json to_json(const ResidualReport& r) {
  return {{"equation", r.equation},
          {"t", r.t},
          {"params", to_json(r.params)},
          {"max_residual", number(r.max_residual)},
          {"grid_spec", r.grid_spec}};
}

json to_json(const KernelComparison& r) {
  return {{"t", r.t},
          {"max_excess", number(r.max_excess)},
          {"worst_point", point(r.worst_point)},
          {"converged", r.converged},
          {"path_discrepancy", number(r.path_discrepancy)}};
}

json to_json(const DominationReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) {
    violations.push_back(
        {{"coord", v.coord + 1}, {"point", point(v.point)}, {"g_tilde", v.g_tilde}, {"g", v.g}});
  }
  return {{"params", to_json(r.params)},
          {"points_checked", r.points_checked},
          {"max_excess", number(r.max_excess)},
          {"violations", violations}};
}

json to_json(const EnergyReport& r) {
  return {{"params", to_json(r.params)},
          {"lhs", r.lhs},
          {"rhs", r.rhs},
          {"relative_error", number(r.relative_error)}};
}

json to_json(const GFunctionResult& r) {
  json rows = json::array();
  for (std::size_t n = 0; n < r.points.size(); ++n) {
    rows.push_back({{"x", point(r.points[n])}, {"value", r.values[n]}});
  }
  return {{"method", to_string(r.method)}, {"cross_residual", number(r.cross_residual)}, {"values", rows}};
}

json to_json(const NormProbeReport& r) {
  return {{"op", r.op},       {"p", r.p},
          {"d", r.dim},       {"N", r.degree_cap},
          {"samples", r.samples}, {"best_ratio", number(r.best_ratio)},
          {"seed", r.seed},   {"t", r.t}};
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw ConfigError("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw ConfigError("cannot move output into '" + path + "': " + ec.message());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace jacobi::cli
