#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "jacobi/cli/serialize.hpp"

namespace jacobi::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr std::uint64_t kDefaultSeed = 42;

/// Everything a command needs. Unset numeric fields (-1 / empty) take
/// command-specific defaults when the command runs.
struct RunConfig {
  std::string command;
  std::vector<std::string> alpha{"0"};  // rationals or decimals; one value is broadcast
  std::vector<std::string> beta{"0"};
  std::vector<int> dims{1};
  int degree = -1;
  int grid = -1;
  std::vector<double> ts;
  std::vector<double> ps;
  int samples = 200;
  std::uint64_t seed = kDefaultSeed;
  std::string format = "json";
  std::string out;  // empty: standard output
  bool expect_violation = false;
  std::string op;
  std::string suite;
  std::string spec;
  std::string input;
  std::string variant = "full";

  json to_json() const;
};

/// Parses argv and runs the selected command. Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// Runs an already-parsed configuration. Never throws.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parameters of the first entry of cfg.dims (alpha/beta broadcast if single).
ParamVector resolve_params(const RunConfig& cfg);
ParamVector resolve_params(const RunConfig& cfg, int dim);
RationalParamVector resolve_rational_params(const RunConfig& cfg);

/// Builtin function specs:
///   "mode k=(1,0) [v=2.5]"         one coefficient
///   "const v=3"                     constant
///   "poly 1:(1,1);-0.5:(0,2)"       sum of c * x^e monomials
///   "bump c=(0,0) r=0.5"            product of smooth bumps exp(1 - 1/(1-u^2)), u = (x-c)/r
/// Throws ConfigError on a malformed spec.
Expansion build_expansion(const std::string& spec, const ParamVector& p, int N);

}  // namespace jacobi::cli
