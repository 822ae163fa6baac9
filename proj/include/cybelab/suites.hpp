#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cybelab/catalog.hpp"
#include "cybelab/report.hpp"

namespace cybelab {

/// Suite configuration. Unset fields take the suite's default.
struct SuiteConfig {
  std::optional<int> window;
  std::optional<PencilCoeffs> pencil;  // symbolic coefficients allowed where the suite supports them
  std::uint64_t seed = 20240601;
  std::string format = "text";  // text | machine
  std::string out;              // empty: standard output
  std::string expr;             // optional DSL expression for the cybe suite
  std::optional<std::pair<Scalar, Scalar>> z;  // explore-z points

  /// Echo of the effective settings recorded in the report header.
  std::map<std::string, std::string> echo() const;
};

const std::vector<std::string>& suite_names();

/// key = value lines, '#' comments. Keys: window, pencil, seed, format, out, expr, z.
/// Throws ConfigError.
std::map<std::string, std::string> parse_config_text(const std::string& text);
/// Applies one key; throws ConfigError on malformed values or unknown keys.
void apply_config(SuiteConfig& cfg, const std::string& key, const std::string& value);

/// "a1,a2,a3" with rationals, or "symbolic".
PencilCoeffs parse_pencil(const std::string& text);

/// Throws UnknownName for an unknown suite. Check errors are embedded as failing records.
/// The timing field is filled in.
Report run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace cybelab
