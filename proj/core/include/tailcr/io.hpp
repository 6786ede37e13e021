#ifndef TAILCR_IO_HPP
#define TAILCR_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "tailcr/montecarlo.hpp"
#include "tailcr/sample.hpp"

namespace tailcr {

/// Provenance footer embedded in every report so outputs are
/// self-describing. The timestamp honors SOURCE_DATE_EPOCH when set and
/// otherwise stays at the epoch, keeping identical runs byte-identical.
struct RunManifest {
  std::string tool_version;
  std::uint64_t master_seed = 0;
  std::string scenario_hash;
  std::string timestamp;

  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

RunManifest make_manifest(const ScenarioConfig& config);
std::string make_timestamp();

/// FNV-1a 64-bit hash of the canonical config serialization, as 16 hex
/// digits.
std::string scenario_hash(const ScenarioConfig& config);

// Dataset CSV: header "z,delta,cause", one observation per row, cause empty
// or 0 on censored rows. Parse failures throw io_error with the offending
// line number.
CompetingRisksSample read_dataset(std::istream& in, const std::string& source_name);
CompetingRisksSample read_dataset_file(const std::string& path);
std::string serialize_dataset(const CompetingRisksSample& sample);

// Scenario config JSON. Serialization is canonical (sorted keys, fixed
// layout), so serialize(parse(serialize(c))) == serialize(c) byte for byte.
std::string serialize_config(const ScenarioConfig& config);
ScenarioConfig parse_config(const std::string& json_text, const std::string& source_name);
ScenarioConfig read_config_file(const std::string& path);

// Report CSV: header "kn,estimator,median_bias,mse,mean,sd,failures", one
// row per cell (absent aggregates stay empty), then the manifest as '#'
// comment lines. Numbers use 17 significant digits so doubles round-trip
// exactly.
std::string serialize_report(const MonteCarloReport& report, const RunManifest& manifest);
struct ParsedReport {
  MonteCarloReport report;
  RunManifest manifest;
};
ParsedReport parse_report(const std::string& text, const std::string& source_name);

/// Locale-independent shortest-exact double formatting (17 significant
/// digits via to_chars).
std::string format_double(double value);

/// Writes content to path atomically (temp file in the same directory, then
/// rename), so an interrupted run never leaves a partial file.
void atomic_write_file(const std::string& path, const std::string& content);

}  // namespace tailcr

#endif  // TAILCR_IO_HPP
