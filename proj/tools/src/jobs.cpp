#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "cli.hpp"
#include "speeduplab/error.hpp"
#include "speeduplab/speedup.hpp"

namespace speeduplab::cli {

namespace {

std::size_t resolve(const std::optional<std::size_t>& flag, const Json& params, const char* key,
                    std::size_t fallback) {
  if (flag) return *flag;
  if (auto it = params.find(key); it != params.end()) {
    if (!it->is_number_unsigned()) {
      throw FormatError(std::string("params.") + key + ": expected a nonnegative integer");
    }
    return it->get<std::size_t>();
  }
  return fallback;
}

const Substitution& need_substitution(const JobConfig& job) {
  if (!job.substitution) throw FormatError("substitution: required for this command");
  return *job.substitution;
}

const JumpFunction& need_jump(const JobConfig& job) {
  if (!job.jump) throw FormatError("jump: required for this command");
  return *job.jump;
}

const OdometerSpec& need_odometer(const JobConfig& job) {
  if (!job.odometer) throw FormatError("odometer: required for this command");
  return *job.odometer;
}

const OdometerJumpSpec& need_odometer_jump(const JobConfig& job) {
  if (!job.odometer_jump) throw FormatError("odometer_jump: required for this command");
  return *job.odometer_jump;
}

Json primitivity_json(const PrimitivityResult& r) {
  Json out{{"primitive", r.primitive}, {"power", r.power}};
  switch (r.failure) {
    case PrimitivityResult::Failure::None:
      break;
    case PrimitivityResult::Failure::Unreachable:
      out["failure"] = "symbol " + std::to_string(r.to) + " never occurs in the images of " +
                       std::to_string(r.from);
      break;
    case PrimitivityResult::Failure::Imprimitive:
      out["failure"] = "irreducible with period " + std::to_string(r.period);
      break;
    case PrimitivityResult::Failure::NoGrowth:
      out["failure"] = "images of " + std::to_string(r.from) + " never grow";
      break;
  }
  return out;
}

Json sequence_json(const PermutationIteration& it) {
  Json seq = Json::array();
  for (const auto& t : it.sequence) seq.push_back(t.to_string());
  return Json{{"preperiod", it.preperiod},
              {"period", it.period},
              {"stable", it.stable},
              {"stabilized", it.stabilized.to_string()},
              {"sequence", std::move(seq)}};
}

Json sigma_block(const SpeedupAnalysis& a) {
  return Json{{"level", a.sigma_level},
              {"power", a.sigma_power},
              {"permutations", a.sigma_pi.to_string()},
              {"table", a.sigma.render()},
              {"primitivity", primitivity_json(a.sigma_primitivity)}};
}

std::string minimal_verdict(bool minimal) { return minimal ? "MINIMAL" : "NOT_MINIMAL"; }

Json trace_summary(const CoboundaryResult& r) {
  Json out = to_json(r.trace);
  out["bound"] = r.bound ? Json(*r.bound) : Json(nullptr);
  out["policy"] = r.policy;
  return out;
}

Json scob_json(const ScobReport& r) {
  Json out{{"status", to_string(r.status)},
           {"max_window", r.max_window},
           {"samples", r.samples},
           {"identity_passed", r.identity_passed},
           {"intertwining_passed", r.intertwining_passed},
           {"detail", r.detail}};
  if (r.window) out["window"] = Json::array({r.window->first, r.window->second});
  return out;
}

Json entropy_json(const std::vector<std::size_t>& counts) {
  const EntropySummary e = entropy_estimates(counts);
  return Json{{"counts", counts},
              {"estimates", e.values},
              {"last", e.last},
              {"nonincreasing_tail", e.nonincreasing_tail}};
}

std::vector<std::size_t> parse_checkpoints(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoull(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw FormatError("checkpoints: '" + item + "' is not a step count");
    }
  }
  return out;
}

std::uint64_t substitution_orbit_number(const Substitution& theta, const JumpFunction& p,
                                        const Params& params, const Json& cfg) {
  if (params.c) return *params.c;
  if (auto it = cfg.find("c"); it != cfg.end() && it->is_number_unsigned()) {
    return it->get<std::uint64_t>();
  }
  const FixedPointSource src = proper_fixed_point(theta);
  const std::size_t horizon =
      std::max<std::size_t>(4000, 8 * static_cast<std::size_t>(p.max_jump()));
  return orbit_number(src.step, p, src.seed, horizon, params.limits).c;
}

}  // namespace

JobConfig parse_job(const Json& doc) {
  if (!doc.is_object()) throw FormatError("config: expected an object");
  JobConfig job;
  const auto kind_it = doc.find("kind");
  if (kind_it == doc.end() || !kind_it->is_string()) {
    throw FormatError("kind: expected one of substitution, odometer, exammeas");
  }
  const std::string kind = kind_it->get<std::string>();
  if (kind == "substitution") {
    job.kind = JobConfig::Kind::Substitution;
  } else if (kind == "odometer") {
    job.kind = JobConfig::Kind::Odometer;
  } else if (kind == "exammeas") {
    job.kind = JobConfig::Kind::Exammeas;
  } else {
    throw FormatError("kind: unknown system kind '" + kind + "'");
  }
  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) throw FormatError("name: expected a string");
    job.name = it->get<std::string>();
  }
  if (auto it = doc.find("params"); it != doc.end()) {
    if (!it->is_object()) throw FormatError("params: expected an object");
    job.params = *it;
  }
  switch (job.kind) {
    case JobConfig::Kind::Substitution: {
      const auto it = doc.find("substitution");
      if (it == doc.end()) throw FormatError("substitution: missing for kind substitution");
      job.substitution = substitution_from_json(*it);
      if (auto jt = doc.find("jump"); jt != doc.end()) {
        job.jump = jump_from_json(*jt, &*job.substitution);
      }
      break;
    }
    case JobConfig::Kind::Odometer: {
      const auto it = doc.find("odometer");
      if (it == doc.end()) throw FormatError("odometer: missing for kind odometer");
      job.odometer = odometer_from_json(*it);
      if (auto jt = doc.find("odometer_jump"); jt != doc.end()) {
        job.odometer_jump = odometer_jump_from_json(*jt);
      }
      break;
    }
    case JobConfig::Kind::Exammeas: {
      const auto it = doc.find("exammeas");
      if (it == doc.end() || !it->is_object()) {
        throw FormatError("exammeas: missing for kind exammeas");
      }
      const auto nt = it->find("n");
      if (nt == it->end() || !nt->is_array()) throw FormatError("exammeas.n: expected an array");
      for (std::size_t i = 0; i < nt->size(); ++i) {
        if (!(*nt)[i].is_number_unsigned()) {
          throw FormatError("exammeas.n[" + std::to_string(i) + "]: expected a positive integer");
        }
        job.exammeas_n.push_back((*nt)[i].get<std::uint64_t>());
      }
      const auto lt = it->find("levels");
      if (lt == it->end() || !lt->is_number_unsigned() || lt->get<std::size_t>() == 0) {
        throw FormatError("exammeas.levels: expected a positive integer");
      }
      job.exammeas_levels = lt->get<std::size_t>();
      break;
    }
  }
  return job;
}

JobConfig load_job(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("config: cannot open '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError("config: '" + path + "' is not valid JSON (" + e.what() + ")");
  }
  JobConfig job = parse_job(doc);
  if (job.name.empty()) job.name = std::filesystem::path(path).stem().string();
  return job;
}

std::string resolve_config(const std::string& path, const std::string& config_dir) {
  namespace fs = std::filesystem;
  if (fs::exists(path)) return path;
  const fs::path dir(config_dir);
  if (fs::exists(dir / path)) return (dir / path).string();
  if (fs::exists(dir / (path + ".json"))) return (dir / (path + ".json")).string();
  return path;
}

std::string default_config_dir() {
  if (const char* env = std::getenv("SPEEDUPLAB_CONFIG_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return SPEEDUPLAB_CONFIG_DIR;
}

Limits limits_from_env() {
  Limits limits;
  if (const char* env = std::getenv("SPEEDUPLAB_MAX_PREFIX"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const std::string text(env);
      const unsigned long long v = std::stoull(text, &used);
      if (used != text.size() || v == 0) throw std::invalid_argument(text);
      limits.max_prefix = static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      throw FormatError(std::string("SPEEDUPLAB_MAX_PREFIX: '") + env +
                        "' is not a positive integer");
    }
  }
  return limits;
}

Outcome sub_analyze(const JobConfig& job, const Params& params) {
  const Substitution& theta = need_substitution(job);
  const JumpFunction& p = need_jump(job);
  const std::size_t aperiodic_horizon = resolve(std::nullopt, job.params, "aperiodicity_horizon", 30);
  const std::size_t horizon = resolve(params.horizon, job.params, "orbit_horizon", 4000);

  const PrimitivityResult prim = is_primitive(theta);
  const ProperResult proper = is_proper(theta);
  const SpeedupAnalysis a = analyze_speedup(theta, p, params.limits, aperiodic_horizon);
  const OrbitNumberResult orbits = orbit_number(a.step, p, a.seed, horizon, params.limits);
  if (orbits.c != a.c) {
    throw InconsistencyError("orbit number " + std::to_string(orbits.c) +
                             " by reachability but " + std::to_string(a.c) + " by labeling");
  }

  Json conditions = Json::array();
  for (const auto& c : a.normalized.checked) {
    conditions.push_back(Json{{"level", c.level},
                              {"boundary_agrees", c.boundary_agrees},
                              {"tall_enough", c.tall_enough},
                              {"low_floors_agree", c.low_floors_agree}});
  }
  Outcome out;
  out.report["substitution"] = to_json(theta);
  out.report["jump"] = to_json(p);
  out.report["symbols"] = Json{{"primitivity", primitivity_json(prim)},
                               {"proper", proper.proper},
                               {"left", proper.left},
                               {"right", proper.right},
                               {"proper_power", proper.power},
                               {"aperiodicity_horizon", a.aperiodicity_horizon}};
  out.report["fixed_point"] = Json{{"step_power", a.proper_power}, {"seed", a.seed}};
  out.report["normalize"] = Json{{"level", a.normalized.level}, {"conditions", std::move(conditions)}};
  out.report["labeling"] = labeling_table(a.labeling);
  out.report["permutations"] = a.pi.to_string();
  out.report["iteration"] = sequence_json(a.iteration);
  out.report["orbit_number"] = Json{{"reachability", orbits.c},
                                    {"labeling", a.c},
                                    {"horizon", orbits.horizon},
                                    {"windows_checked", orbits.windows_checked}};
  out.report["sigma"] = sigma_block(a);
  out.report["verdict"] = minimal_verdict(a.minimal);
  return out;
}

Outcome sub_minimal(const JobConfig& job, const Params& params) {
  const SpeedupAnalysis a = analyze_speedup(need_substitution(job), need_jump(job), params.limits);
  Outcome out;
  out.report["c"] = a.c;
  out.report["normalized_level"] = a.normalized.level;
  out.report["permutations"] = a.pi.to_string();
  out.report["sigma"] = sigma_block(a);
  out.report["verdict"] = minimal_verdict(a.minimal);
  return out;
}

Outcome sub_sigma(const JobConfig& job, const Params& params) {
  const SpeedupAnalysis a = analyze_speedup(need_substitution(job), need_jump(job), params.limits);
  Outcome out;
  out.report["level"] = a.sigma_level;
  out.report["power"] = a.sigma_power;
  out.report["permutations"] = a.sigma_pi.to_string();
  out.report["sigma"] = to_json(a.sigma);
  out.report["verdict"] = minimal_verdict(a.minimal);
  return out;
}

Outcome sub_selfinduce(const JobConfig& job, const Params& params) {
  const SpeedupAnalysis a = analyze_speedup(need_substitution(job), need_jump(job), params.limits);
  const std::size_t steps = resolve(params.steps, job.params, "steps", 200);
  const SelfInduceResult r = self_induce_map(a, steps, params.limits);
  Outcome out;
  out.report["theta_power"] = r.map.theta_power;
  out.report["target"] = r.map.target;
  out.report["sub_block_starts"] = r.map.sub_block_starts;
  out.report["steps_requested"] = r.steps_requested;
  out.report["steps_passed"] = r.steps_passed;
  out.report["first_failure"] = r.first_failure ? Json(*r.first_failure) : Json(nullptr);
  out.report["prefix_used"] = r.prefix_used;
  out.report["verdict"] = r.ok() ? "VERIFIED" : "FAILED";
  return out;
}

Outcome odo_check(const JobConfig& job, const Params&) {
  const OdometerSpec& alpha = need_odometer(job);
  const OdometerJumpSpec& jump = need_odometer_jump(job);
  const JumpVerdict v = check_jump_function(alpha, jump);
  Outcome out;
  out.report["odometer"] = alpha.to_string();
  out.report["supernatural"] = supernatural(alpha).to_string();
  out.report["jump"] = to_json(jump);
  out.report["c"] = v.c;
  out.report["failed_conditions"] = v.failed;
  out.report["witness"] = v.witness;
  out.report["floor_cycle"] = v.cycle.cycle;
  out.report["gcd_index"] = v.gcd_index ? Json(*v.gcd_index) : Json(nullptr);
  out.report["verdict"] = v.minimal ? "MINIMAL(c=" + std::to_string(v.c) + ")"
                                    : "FAILS(" + std::to_string(v.first_failure()) + ")";
  return out;
}

Outcome odo_construct(const JobConfig& job, const Params& params) {
  std::uint64_t c = 0;
  if (params.c) {
    c = *params.c;
  } else if (auto it = job.params.find("c"); it != job.params.end() && it->is_number_unsigned()) {
    c = it->get<std::uint64_t>();
  } else {
    throw FormatError("c: required for odo construct (flag --c or params.c)");
  }
  Outcome out;
  out.report["c"] = c;
  if (params.universal) {
    const ImpossibilityCertificate cert = universal_odometer_obstruction(c);
    out.report["odometer"] = "<2,3,4,5,...>";
    out.report["prime"] = cert.prime;
    out.report["indices"] = cert.indices;
    out.report["verdict"] = "IMPOSSIBLE";
    return out;
  }
  const OdometerSpec& alpha = need_odometer(job);
  const SpeedupConstruction s = construct_speedup(alpha, c);
  out.report["odometer"] = alpha.to_string();
  if (s.impossible) {
    out.report["prime"] = s.impossible->prime;
    out.report["cycle_positions"] = s.impossible->cycle_positions;
    out.report["indices"] = s.impossible->indices;
    out.report["verdict"] = "IMPOSSIBLE";
    return out;
  }
  out.report["n"] = s.n;
  out.report["m"] = s.m;
  out.report["g"] = s.g;
  out.report["beta"] = to_json(*s.beta);
  out.report["beta_rendered"] = s.beta->to_string();
  out.report["jump"] = to_json(*s.jump);
  out.report["check"] = s.verdict->minimal ? "MINIMAL(c=" + std::to_string(s.verdict->c) + ")"
                                           : "FAILS(" + std::to_string(s.verdict->first_failure()) + ")";
  out.report["verdict"] = "CONSTRUCTED";
  return out;
}

Outcome odo_tower(const JobConfig& job, const Params& params) {
  const std::size_t depth = resolve(params.depth, job.params, "depth", 4);
  const PermutationTower t =
      odometer_permutation_tower(need_odometer(job), need_odometer_jump(job), depth);
  Json levels = Json::array();
  for (std::size_t i = 0; i < t.levels.size(); ++i) {
    levels.push_back(Json{{"level", t.first_level + i},
                          {"permutation", t.levels[i].to_string()},
                          {"cyclic", static_cast<bool>(t.cyclic[i])}});
  }
  Outcome out;
  out.report["first_level"] = t.first_level;
  out.report["c"] = t.c;
  out.report["levels"] = std::move(levels);
  out.report["cyclic_forever"] = t.cyclic_forever;
  out.report["verdict"] = t.cyclic_forever ? "CYCLIC_FOREVER" : "NOT_CYCLIC";
  return out;
}

Outcome odo_verify_sameodom(const JobConfig& job, const Params& params) {
  const std::size_t levels = resolve(params.levels, job.params, "levels", 5);
  const std::size_t horizon = resolve(params.horizon, job.params, "horizon", 10000);
  const SameOdometerReport r =
      verify_sameodom(need_odometer(job), need_odometer_jump(job), levels, horizon);
  Outcome out;
  out.report["cycles"] = Json{{"levels", r.levels_checked}, {"pass", r.cycles_ok}};
  out.report["conjugacy"] = Json{{"s_odometer", r.s_odometer.to_string()},
                                 {"supernatural", supernatural(r.s_odometer).to_string()},
                                 {"pass", r.conjugate}};
  out.report["coboundary"] = Json{{"horizon", r.horizon},
                                  {"min_sum", r.min_sum},
                                  {"max_sum", r.max_sum},
                                  {"bound", r.bound},
                                  {"pass", r.bounded}};
  out.report["verdict"] = r.ok() ? "PASS" : "FAIL";
  return out;
}

Outcome cobound(const JobConfig& job, const Params& params, std::string* trace_csv_out) {
  std::string side = params.side.value_or("");
  if (side.empty()) {
    auto it = job.params.find("side");
    side = (it != job.params.end() && it->is_string()) ? it->get<std::string>() : "T";
  }
  if (side != "T" && side != "S") throw FormatError("side: expected T or S, got '" + side + "'");
  const std::size_t horizon = resolve(params.horizon, job.params, "horizon", 10000);
  const std::size_t samples = resolve(params.samples, job.params, "samples", 2000);

  CoboundaryResult r;
  std::optional<ScobReport> scob;
  std::uint64_t c = 0;
  if (job.kind == JobConfig::Kind::Odometer) {
    const OdometerSpec& alpha = need_odometer(job);
    const OdometerJumpSpec& jump = need_odometer_jump(job);
    r = side == "T" ? t_coboundary_trace(alpha, jump, horizon)
                    : s_coboundary_trace(alpha, jump, horizon);
    c = check_jump_function(alpha, jump).c;
    if (params.scob && side == "S") scob = scob_verify(alpha, jump, samples);
  } else if (job.kind == JobConfig::Kind::Substitution) {
    const Substitution& theta = need_substitution(job);
    const JumpFunction& p = need_jump(job);
    c = substitution_orbit_number(theta, p, params, job.params);
    if (side == "T") {
      r = t_coboundary_trace(theta, p, c, horizon, params.limits);
    } else {
      std::string checkpoint_arg = params.checkpoints.value_or("");
      if (checkpoint_arg.empty()) {
        auto it = job.params.find("checkpoints");
        checkpoint_arg = (it != job.params.end() && it->is_string()) ? it->get<std::string>() : "auto";
      }
      std::vector<std::size_t> checkpoints = checkpoint_arg == "auto"
                                                 ? block_checkpoints(theta, p, horizon, params.limits)
                                                 : parse_checkpoints(checkpoint_arg);
      r = s_coboundary_trace(theta, p, c, horizon, std::move(checkpoints), params.limits);
      if (params.scob) scob = scob_verify(theta, p, c, samples, 12, params.limits);
    }
  } else {
    throw FormatError("kind: cobound needs a substitution or odometer system");
  }
  if (trace_csv_out != nullptr) *trace_csv_out = trace_csv(r.trace);
  Outcome out;
  out.report["side"] = side;
  out.report["c"] = c;
  out.report["trace"] = trace_summary(r);
  if (scob) out.report["scob"] = scob_json(*scob);
  out.report["verdict"] = to_string(r.verdict);
  out.exit_code = r.verdict == TraceVerdict::Inconclusive ? kExitInconclusive : kExitOk;
  return out;
}

Outcome entropy(const JobConfig& job, const Params& params) {
  const Substitution& theta = need_substitution(job);
  const std::size_t n = resolve(params.n, job.params, "n", 40);
  if (n == 0) throw FormatError("n: must be positive");
  Outcome out;
  out.report["n"] = n;
  out.report["theta"] = entropy_json(word_complexity(theta, n));
  if (job.jump) {
    const SpeedupAnalysis a = analyze_speedup(theta, *job.jump, params.limits);
    if (a.minimal) {
      out.report["sigma"] = entropy_json(word_complexity(a.sigma.sigma, n));
    } else {
      out.report["sigma"] = "not primitive; σ language counts skipped";
    }
  }
  return out;
}

Outcome exammeas(const JobConfig& job, const Params& params) {
  if (job.kind != JobConfig::Kind::Exammeas) throw FormatError("kind: expected exammeas");
  const std::size_t levels = resolve(params.levels, job.params, "levels", job.exammeas_levels);
  const ExammeasSystem system = exammeas_build(job.exammeas_n, levels);
  const ExammeasReport r = exammeas_check(system, levels);
  Json rows = Json::array();
  for (const auto& l : r.levels) {
    rows.push_back(Json{{"k", l.k},
                        {"length", l.length},
                        {"s_simulated", l.s_simulated},
                        {"s_recursion", l.s_recursion},
                        {"sum_simulated", l.sum_simulated},
                        {"sum_recursion", l.sum_recursion},
                        {"average", static_cast<double>(l.sum_simulated) /
                                        static_cast<double>(l.s_simulated)},
                        {"above_two", l.above_two}});
  }
  Outcome out;
  out.report["n"] = system.n;
  out.report["w1_0"] = to_string(system.w0.front());
  out.report["w1_1"] = to_string(system.w1.front());
  out.report["levels"] = std::move(rows);
  out.report["consistent"] = r.consistent;
  out.report["all_above_two"] = r.all_above_two;
  out.report["verdict"] = r.consistent ? "CONSISTENT" : "INCONSISTENT";
  return out;
}

std::string render_text(const Json& report) {
  std::ostringstream out;
  for (const auto& [key, value] : report.items()) {
    const bool lines = value.is_array() && !value.empty() &&
                       std::all_of(value.begin(), value.end(), [](const Json& v) { return v.is_string(); });
    const bool records = value.is_array() && !value.empty() &&
                         std::all_of(value.begin(), value.end(), [](const Json& v) { return v.is_object(); });
    if (lines) {
      out << key << ":\n";
      for (const auto& v : value) out << "  " << v.get<std::string>() << '\n';
    } else if (records) {
      out << key << ":\n";
      for (const auto& v : value) {
        out << " ";
        for (const auto& [k, x] : v.items()) out << ' ' << k << '=' << (x.is_string() ? x.get<std::string>() : x.dump());
        out << '\n';
      }
    } else if (value.is_object()) {
      out << key << ":\n";
      std::istringstream nested(render_text(value));
      for (std::string line; std::getline(nested, line);) out << "  " << line << '\n';
    } else if (value.is_string()) {
      out << key << ": " << value.get<std::string>() << '\n';
    } else {
      out << key << ": " << value.dump() << '\n';
    }
  }
  return out.str();
}

}  // namespace speeduplab::cli
