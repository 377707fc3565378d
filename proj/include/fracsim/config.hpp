#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fracsim {

inline constexpr const char* kToolkitVersion = "0.1.0";

enum class Command { Sample, Walk, Solve, Rheology, Verify };

// Parsed and validated experiment configuration. `params` holds the
// command-specific section verbatim (already schema-checked).
struct ExperimentConfig {
  Command command = Command::Sample;
  std::uint64_t seed = 0;
  std::string output_dir = ".";
  std::string params_json;     // canonical serialized section
  std::string canonical_json;  // canonical serialized full config (hash input)
};

// Collects every violation instead of stopping at the first. `errors` entries
// carry the offending key path (e.g. "sample.alpha").
struct ConfigValidation {
  bool ok = false;
  ExperimentConfig config;
  std::vector<std::string> errors;
};

// Parses and schema-validates a JSON config document. Parse failures are
// reported with line/column; schema failures with key paths. Never throws.
ConfigValidation validate_config(const std::string& doc_text);

// Executes a validated config: writes CSV artifacts plus manifest.json into
// output_dir. Returns the process exit status (0 ok, 2 verification failed).
// Throws on runtime errors (caller maps to exit 1).
int run_experiment(const ExperimentConfig& config);

}  // namespace fracsim
