#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dsmkit/lti.hpp"

namespace dsmkit::cli {

// Exit-code contract, stable for scripting.
inline constexpr int kExitOk = 0;             // also: certificate applicable
inline constexpr int kExitError = 1;          // runtime failure, failed verdict
inline constexpr int kExitNotApplicable = 2;  // certificate conditions not met
inline constexpr int kExitUsage = 64;         // bad flags or malformed config

/// One member of the input ensemble, parsed from the [ensemble] section.
struct EnsembleSpec {
  enum class Kind { IidUniform, Constant, Sinusoid, Adversarial };

  Kind kind;
  bool seed_from_run = false;  // iid_uniform = auto: take the [run]/--seed value
  std::uint64_t seed = 0;      // iid_uniform
  double value = 0.0;          // constant
  double amplitude = 0.0;      // sinusoid
  double frequency = 0.0;      // sinusoid, cycles per sample
};

/// Everything a run needs, straight from the key = value config file.
/// Flag overrides (--seed, --horizon, --target) are applied on top by
/// run_main before dispatch.
struct ExperimentConfig {
  // [filter]: a preset name or explicit matrices (a/b/c keys)
  std::string preset;
  std::optional<StateSpace> matrices;

  // [quantizer]
  double delta = 0.0;  // required; 0 means "not set"
  long long m = 0;     // required unless m_unbounded
  bool m_unbounded = false;

  // [phi]
  std::string phi_kind = "abs";  // abs | square

  // [run]
  long long horizon = 100000;
  long long window = 0;  // 0 = auto (horizon/10)
  std::uint64_t seed = 1;
  std::string adc = "greedy";  // model driven by cmd_simulate

  // [ensemble]
  std::vector<EnsembleSpec> ensemble;

  // [attack]
  std::string target = "greedy";

  // [sweep]
  std::string sweep_param;  // "delta" | "m"
  std::vector<double> sweep_values;

  // [output]; paths resolve against --out unless absolute
  std::string trace_path;
  std::string report_path;

  /// Preset or explicit matrices. Throws ConfigError when neither or both
  /// are given, or the preset name is unknown.
  StateSpace resolve_filter() const;
};

/// Parses the config file. Unknown sections or keys, duplicate scalars and
/// malformed numbers all throw ConfigError with a line-numbered message.
ExperimentConfig load_config(const std::string& path);

// Each command prints a short human summary to stdout, writes the files
// named in [output], and returns its exit code.
int cmd_certify(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);
int cmd_simulate(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);
int cmd_attack(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);
int cmd_sweep(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

/// Full front end: subcommands certify | simulate | attack | sweep with
/// flags --config PATH, --out DIR, --seed U64, --horizon N, --target NAME.
/// Maps ConfigError and usage problems to 64 and other failures to 1.
int run_main(int argc, const char* const* argv);

}  // namespace dsmkit::cli
