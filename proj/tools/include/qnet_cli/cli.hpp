#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qnet/repeater/repeater.hpp"

// Batch front-end: parses and validates a JSON run configuration, dispatches
// to the simulation modules, and renders CSV or JSON output. Kept as a
// library so validation and rendering are unit-testable.
namespace qnet::cli {

using Json = nlohmann::ordered_json;

struct SweepAxis {
  std::string parameter;  // dotted path into the payload, or the virtual
                          // knob "emitter.beta"
  std::vector<double> values;
};

struct RunConfig {
  std::string command;  // interface-report, bsa-bench, cluster-gen,
                        // repeater-2way, repeater-1way, sweep
  uint64_t seed = 0;
  uint64_t trials = 1000;
  std::string output_path;  // empty -> stdout
  std::string output_format = "csv";
  std::optional<SweepAxis> sweep_axis;
  Json payload;  // defaulted, validated payload
};

struct ParseOutcome {
  std::optional<RunConfig> config;
  std::vector<std::string> diagnostics;  // field-path messages, empty iff valid
};

/// Parse and fully validate a raw JSON document. Every violated invariant is
/// reported with its field path; a config is returned only when the
/// diagnostics list is empty.
ParseOutcome validate_config(const std::string& raw_text);

/// Canonical serialized form of a validated config (defaults materialized,
/// fixed key order); parse -> serialize is idempotent.
std::string serialize_config(const RunConfig& cfg);

/// Execute the configured command, writing the artifact to `out`.
/// Returns 0 on success, 2 on runtime failure (message goes to `err`).
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err, int workers);

/// Worker count from the QNET_WORKERS environment variable (default 1).
int workers_from_env();

}  // namespace qnet::cli
