#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "speeduplab/error.hpp"

namespace speeduplab::cli {

namespace {

struct Options {
  std::string config;
  std::string config_dir;
  std::string output;
  std::string format = "json";
  std::string trace_csv;
  std::string walk;
  bool no_meta = false;
  std::size_t max_prefix = 0;
  unsigned max_level = 0;
  std::size_t horizon = 0;
  std::size_t steps = 0;
  std::size_t levels = 0;
  std::size_t depth = 0;
  std::size_t samples = 0;
  std::uint64_t c = 0;
  std::size_t n = 0;
  std::string checkpoints;
  std::string side;
  bool scob = false;
  bool universal = false;
};

enum Extra : unsigned {
  kHorizon = 1u << 0,
  kSteps = 1u << 1,
  kLevels = 1u << 2,
  kDepth = 1u << 3,
  kSamples = 1u << 4,
  kC = 1u << 5,
  kN = 1u << 6,
  kCobound = 1u << 7,
  kUniversal = 1u << 8,
  kWalk = 1u << 9,
};

CLI::App* leaf(CLI::App& parent, const std::string& name, const std::string& description,
               Options& o, unsigned extras, bool needs_config = true) {
  CLI::App* app = parent.add_subcommand(name, description);
  auto* config = app->add_option("--config", o.config, "Job config (path or bundled name)");
  if (needs_config && (extras & kUniversal) == 0) config->required();
  app->add_option("--config-dir", o.config_dir, "Directory of bundled configs");
  app->add_option("--output,-o", o.output, "Write the report to a file");
  app->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  app->add_flag("--no-meta", o.no_meta, "Omit tool version and timestamp");
  app->add_option("--max-prefix", o.max_prefix, "Cap on fixed-point prefix length")
      ->check(CLI::PositiveNumber);
  app->add_option("--max-level", o.max_level, "Cap on the KR level search")
      ->check(CLI::PositiveNumber);
  if (extras & kHorizon) app->add_option("--horizon", o.horizon, "Orbit horizon in steps");
  if (extras & kSteps) app->add_option("--steps", o.steps, "Number of S-steps");
  if (extras & kLevels) app->add_option("--levels", o.levels, "Number of levels");
  if (extras & kDepth) app->add_option("--depth", o.depth, "Number of tower levels");
  if (extras & kSamples) app->add_option("--samples", o.samples, "Sampled S-steps");
  if (extras & (kC | kUniversal)) {
    app->add_option("--c", o.c, "Orbit number")->check(CLI::PositiveNumber);
  }
  if (extras & kN) app->add_option("--n", o.n, "Largest word length")->check(CLI::PositiveNumber);
  if (extras & kCobound) {
    app->add_option("--side", o.side, "Sum along T or S")->check(CLI::IsMember({"T", "S"}));
    app->add_option("--checkpoints", o.checkpoints, "auto or comma-separated step counts");
    app->add_flag("--scob", o.scob, "Also search for a window-determined transfer function");
    app->add_option("--trace-csv", o.trace_csv, "Write the partial sums as n,sum lines");
  }
  if (extras & kUniversal) {
    app->add_flag("--universal", o.universal, "Use the odometer <2,3,4,5,...>");
  }
  if (extras & kWalk) {
    app->add_option("--walk", o.walk, "Write the S-walk of the fixed point as step,position,jump");
  }
  return app;
}

template <class T>
std::optional<T> given(const CLI::App* app, const std::string& flag, T value) {
  try {
    if (app->count(flag) > 0) return value;
  } catch (const CLI::OptionNotFound&) {
  }
  return std::nullopt;
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::ostringstream out;
  out << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FormatError("output: cannot write '" + path + "'");
  f << contents;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounded speedups of substitution subshifts and odometers", "speedup-lab"};
  app.require_subcommand(1);
  Options o;

  CLI::App* sub = app.add_subcommand("sub", "Speedups of substitution subshifts");
  sub->require_subcommand(1);
  leaf(*sub, "analyze", "Full pipeline with every intermediate", o, kHorizon | kSteps | kWalk);
  leaf(*sub, "minimal", "Minimality verdict and σ table", o, 0);
  leaf(*sub, "sigma", "The symbol-label substitution σ", o, 0);
  leaf(*sub, "selfinduce", "Self-induced floor map and its intertwining check", o, kSteps);

  CLI::App* odo = app.add_subcommand("odo", "Speedups of odometers");
  odo->require_subcommand(1);
  leaf(*odo, "check", "Three-condition minimality check of a jump vector", o, 0);
  leaf(*odo, "construct", "Minimal speedup with a given orbit number, or impossibility", o,
       kC | kUniversal);
  leaf(*odo, "tower", "Exit permutations across levels", o, kDepth);
  leaf(*odo, "verify-sameodom", "Cycles, conjugacy and coboundary checks of a minimal speedup",
       o, kLevels | kHorizon);

  leaf(app, "cobound", "Partial sums of p - c along T or S", o, kHorizon | kSamples | kC | kCobound);
  leaf(app, "entropy", "Block-counting entropy estimates", o, kN);
  leaf(app, "exammeas", "Word construction with average jump above 2", o, kLevels);
  leaf(app, "reproduce-paper", "Every bundled worked example as a pass/fail table", o, kHorizon,
       false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  const CLI::App* group = app.get_subcommands().front();
  const CLI::App* chosen = group->get_subcommands().empty() ? group : group->get_subcommands().front();
  const std::string command =
      chosen == group ? group->get_name() : group->get_name() + " " + chosen->get_name();

  try {
    Params params;
    params.limits = limits_from_env();
    if (o.max_prefix > 0) params.limits.max_prefix = o.max_prefix;
    if (o.max_level > 0) params.limits.max_level = o.max_level;
    params.horizon = given(chosen, "--horizon", o.horizon);
    params.steps = given(chosen, "--steps", o.steps);
    params.levels = given(chosen, "--levels", o.levels);
    params.depth = given(chosen, "--depth", o.depth);
    params.samples = given(chosen, "--samples", o.samples);
    params.c = given(chosen, "--c", o.c);
    params.n = given(chosen, "--n", o.n);
    params.checkpoints = given(chosen, "--checkpoints", o.checkpoints);
    params.side = given(chosen, "--side", o.side);
    params.scob = o.scob;
    params.universal = o.universal;
    const std::string config_dir = o.config_dir.empty() ? default_config_dir() : o.config_dir;

    Outcome outcome;
    std::string system;
    std::string trace;
    std::string walk;
    if (command == "reproduce-paper") {
      outcome = reproduce_paper(config_dir, params);
    } else {
      JobConfig job;
      if (!o.config.empty()) {
        job = load_job(resolve_config(o.config, config_dir));
        system = job.name;
      }
      using Handler = std::function<Outcome(const JobConfig&, const Params&)>;
      const std::vector<std::pair<std::string, Handler>> handlers = {
          {"sub analyze", sub_analyze},
          {"sub minimal", sub_minimal},
          {"sub sigma", sub_sigma},
          {"sub selfinduce", sub_selfinduce},
          {"odo check", odo_check},
          {"odo construct", odo_construct},
          {"odo tower", odo_tower},
          {"odo verify-sameodom", odo_verify_sameodom},
          {"cobound", [&trace](const JobConfig& j, const Params& p) { return cobound(j, p, &trace); }},
          {"entropy", entropy},
          {"exammeas", exammeas},
      };
      const auto it = std::find_if(handlers.begin(), handlers.end(),
                                   [&](const auto& h) { return h.first == command; });
      outcome = it->second(job, params);
      if (command == "sub analyze" && !o.walk.empty()) {
        const FixedPointSource src = proper_fixed_point(*job.substitution);
        walk = walk_records(speedup_walk(src.step, *job.jump, src.seed,
                                         params.steps.value_or(200), params.limits));
      }
    }

    Json report;
    report["command"] = command;
    if (!system.empty()) report["system"] = system;
    for (auto& [key, value] : outcome.report.items()) report[key] = value;
    report["limits"] = Json{{"max_prefix", params.limits.max_prefix},
                            {"max_level", params.limits.max_level}};
    if (!o.no_meta) {
      report["meta"] = Json{{"tool", "speedup-lab"},
                            {"version", SPEEDUPLAB_VERSION},
                            {"generated", timestamp()}};
    }
    const std::string text = o.format == "text" ? render_text(report) : report.dump(2) + "\n";
    if (o.output.empty()) {
      out << text;
    } else {
      write_file(o.output, text);
    }
    if (!o.trace_csv.empty()) write_file(o.trace_csv, trace);
    if (!o.walk.empty()) write_file(o.walk, walk);
    return outcome.exit_code;
  } catch (const InconclusiveError& e) {
    err << "inconclusive: " << e.what() << '\n';
    return kExitInconclusive;
  } catch (const HorizonError& e) {
    err << "error: horizon exhausted after " << e.achieved() << " steps: " << e.what()
        << "\n  hint: raise --max-prefix or SPEEDUPLAB_MAX_PREFIX\n";
    return kExitError;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace speeduplab::cli
