#pragma once

// speedup-lab: batch front-end over the speeduplab library.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "speeduplab/analysis.hpp"
#include "speeduplab/io.hpp"
#include "speeduplab/odometer.hpp"
#include "speeduplab/subshift.hpp"

namespace speeduplab::cli {

/// Exit codes: definitive verdict, error, inconclusive verdict.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInconclusive = 2;

/// Parses `args` (without the program name) and runs one subcommand.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// A parsed job document.
struct JobConfig {
  enum class Kind { Substitution, Odometer, Exammeas };

  Kind kind = Kind::Substitution;
  std::string name;
  std::optional<Substitution> substitution;
  std::optional<JumpFunction> jump;
  std::optional<OdometerSpec> odometer;
  std::optional<OdometerJumpSpec> odometer_jump;
  std::vector<std::uint64_t> exammeas_n;
  std::size_t exammeas_levels = 0;
  /// Free-form action parameters; command-line flags take precedence.
  Json params = Json::object();
};

/// FormatError naming the offending field.
JobConfig parse_job(const Json& doc);
JobConfig load_job(const std::string& path);

/// Resolves a config argument: as given, then under the bundled config
/// directory, then with ".json" appended there.
std::string resolve_config(const std::string& path, const std::string& config_dir);

/// Bundled config directory, overridable with SPEEDUPLAB_CONFIG_DIR.
std::string default_config_dir();

/// Limits with SPEEDUPLAB_MAX_PREFIX applied.
Limits limits_from_env();

/// Report body plus the exit code implied by its verdict.
struct Outcome {
  Json report = Json::object();
  int exit_code = kExitOk;
};

/// Numeric action parameters resolved from flags, config params and defaults.
struct Params {
  Limits limits;
  std::optional<std::size_t> horizon;
  std::optional<std::size_t> steps;
  std::optional<std::size_t> levels;
  std::optional<std::size_t> depth;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> c;
  std::optional<std::size_t> n;
  std::optional<std::string> checkpoints;
  std::optional<std::string> side;
  bool scob = false;
  /// odo construct on <2,3,4,5,...> instead of the configured odometer.
  bool universal = false;
};

Outcome sub_analyze(const JobConfig& job, const Params& params);
Outcome sub_minimal(const JobConfig& job, const Params& params);
Outcome sub_sigma(const JobConfig& job, const Params& params);
Outcome sub_selfinduce(const JobConfig& job, const Params& params);
Outcome odo_check(const JobConfig& job, const Params& params);
Outcome odo_construct(const JobConfig& job, const Params& params);
Outcome odo_tower(const JobConfig& job, const Params& params);
Outcome odo_verify_sameodom(const JobConfig& job, const Params& params);
Outcome cobound(const JobConfig& job, const Params& params, std::string* trace_csv_out);
Outcome entropy(const JobConfig& job, const Params& params);
Outcome exammeas(const JobConfig& job, const Params& params);

/// Every bundled example as PASS / FAIL / INCONCLUSIVE rows.
Outcome reproduce_paper(const std::string& config_dir, const Params& params);

/// "key: value" rendering of a report; arrays of strings go one per line.
std::string render_text(const Json& report);

}  // namespace speeduplab::cli
