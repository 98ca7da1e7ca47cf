#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>

#include "jacobi/conjugacy.hpp"
#include "jacobi/exactalg.hpp"
#include "jacobi/expansion.hpp"
#include "jacobi/normprobe.hpp"
#include "jacobi/spectral.hpp"
#include "jacobi/squarefn.hpp"

namespace jacobi::cli {

using exact::IdentityReport;
using exact::RationalParamVector;
using exact::Rational;

using nlohmann::json;

/// Bad user input: malformed files, unknown names, out-of-range flags.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// %.17g: enough digits to reload a double exactly.
std::string format_double(double v);

/// Expansion file layout (see tools/schema/expansion.schema.json). Shifted
/// coordinates are 1-based in the file and 0-based in memory.
json expansion_to_json(const Expansion& f);
/// Throws ConfigError on any schema violation.
Expansion expansion_from_json(const json& j);

json to_json(const ParamVector& p);
json to_json(const IdentityReport& r);
json to_json(const ResidualReport& r);
json to_json(const KernelComparison& r);
json to_json(const DominationReport& r);
json to_json(const EnergyReport& r);
json to_json(const GFunctionResult& r);
json to_json(const NormProbeReport& r);

/// Writes to a sibling temporary file, then renames over `path`.
void write_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace jacobi::cli
