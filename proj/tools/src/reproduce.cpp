#include <filesystem>
#include <future>
#include <sstream>

#include "cli.hpp"
#include "speeduplab/error.hpp"
#include "speeduplab/speedup.hpp"

namespace speeduplab::cli {

namespace {

enum class Status { Pass, Fail, Inconclusive };

struct Row {
  std::string key;
  Status status = Status::Fail;
  std::string expected;
  std::string observed;
};

std::string status_name(Status s) {
  switch (s) {
    case Status::Pass:
      return "PASS";
    case Status::Fail:
      return "FAIL";
    case Status::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "FAIL";
}

Row compare(std::string key, const std::string& expected, const std::string& observed) {
  return Row{std::move(key), expected == observed ? Status::Pass : Status::Fail, expected, observed};
}

template <class T>
std::string join(const std::vector<T>& v, const char* sep = ",") {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? sep : "") << v[i];
  return out.str();
}

JobConfig load(const std::string& dir, const std::string& name) {
  return load_job((std::filesystem::path(dir) / (name + ".json")).string());
}

std::string structure(const Substitution& theta) {
  const PrimitivityResult prim = is_primitive(theta);
  const ProperResult proper = is_proper(theta);
  const AperiodicityVerdict aper = is_aperiodic_up_to(theta, 30);
  std::ostringstream out;
  out << "primitive=" << prim.primitive << " proper=" << proper.proper << " left=" << proper.left
      << " right=" << proper.right << " aperiodic="
      << (aper.kind == AperiodicityVerdict::Kind::AperiodicCertified);
  return out.str();
}

Row trace_row(std::string key, TraceVerdict expected, const CoboundaryResult& r,
              std::optional<std::int64_t> max_abs) {
  Row row{std::move(key), Status::Fail, to_string(expected), to_string(r.verdict)};
  row.observed += " max_abs=" + std::to_string(r.trace.max_abs);
  if (max_abs) row.expected += " max_abs<=" + std::to_string(*max_abs);
  if (r.verdict == TraceVerdict::Inconclusive) {
    row.status = Status::Inconclusive;
  } else if (r.verdict == expected && (!max_abs || r.trace.max_abs <= *max_abs)) {
    row.status = Status::Pass;
  }
  return row;
}

std::vector<Row> substitution_rows(const JobConfig& job, const std::vector<std::string>& table,
                                   const Params& params) {
  const Substitution& theta = *job.substitution;
  const JumpFunction& p = *job.jump;
  const std::string& k = job.name;
  std::vector<Row> rows;
  rows.push_back(compare(k + ".structure", "primitive=1 proper=1 left=0 right=1 aperiodic=1",
                         structure(theta)));
  rows.push_back(compare(k + ".sigma_table", join(table, " | "),
                         join(build_sigma(theta, PermutationTuple{{Permutation::identity(2),
                                                                   Permutation::transposition(2, 0, 1)}})
                                  .render(),
                              " | ")));
  const SpeedupAnalysis a = analyze_speedup(theta, p, params.limits);
  rows.push_back(compare(k + ".permutations", "<id, (0 1)>", a.pi.to_string()));
  rows.push_back(compare(k + ".pipeline_sigma", join(table, " | "), join(a.sigma.render(), " | ")));
  const OrbitNumberResult orbits = orbit_number(a.step, p, a.seed, 4000, params.limits);
  rows.push_back(compare(k + ".orbit_number", "2 2",
                         std::to_string(orbits.c) + " " + std::to_string(a.c)));
  rows.push_back(compare(k + ".minimal", "MINIMAL", a.minimal ? "MINIMAL" : "NOT_MINIMAL"));
  return rows;
}

std::vector<Row> ex431_rows(const std::string& dir, const Params& params, std::size_t horizon) {
  const JobConfig job = load(dir, "ex431");
  std::vector<Row> rows = substitution_rows(
      job,
      {"σ:(0,0) ↦ (0,0)(0,0)(1,0)(1,1)", "σ:(0,1) ↦ (0,1)(0,1)(1,1)(1,0)",
       "σ:(1,0) ↦ (0,0)(0,0)(1,0)(0,1)(1,1)(1,0)", "σ:(1,1) ↦ (0,1)(0,1)(1,1)(0,0)(1,0)(1,1)"},
      params);
  const bool two = is_minimal_speedup(*job.substitution, JumpFunction::constant(2), params.limits);
  rows.push_back(compare(job.name + ".constant_jump_two", "NOT_MINIMAL", two ? "MINIMAL" : "NOT_MINIMAL"));
  rows.push_back(trace_row(job.name + ".t_coboundary", TraceVerdict::Bounded,
                           t_coboundary_trace(*job.substitution, *job.jump, 2, horizon, params.limits),
                           1));
  return rows;
}

std::vector<Row> ex44_rows(const std::string& dir, const Params& params, std::size_t horizon) {
  const JobConfig job = load(dir, "ex44");
  const Substitution& theta = *job.substitution;
  const JumpFunction& p = *job.jump;
  std::vector<Row> rows = substitution_rows(
      job,
      {"σ:(0,0) ↦ (0,0)(0,0)(0,0)(1,0)(1,1)", "σ:(0,1) ↦ (0,1)(0,1)(0,1)(1,1)(1,0)",
       "σ:(1,0) ↦ (0,0)(0,0)(1,0)", "σ:(1,1) ↦ (0,1)(0,1)(1,1)"},
      params);
  const WalkTrace walk = speedup_walk(theta, p, 0, 2, params.limits);
  rows.push_back(compare(job.name + ".walk", "0,3,5", join(walk.positions)));
  std::vector<std::size_t> lk = block_checkpoints(theta, p, 100, params.limits);
  lk.resize(std::min<std::size_t>(lk.size(), 3));
  rows.push_back(compare(job.name + ".block_steps", "2,9,40", join(lk)));
  const CoboundaryResult sums = s_coboundary_trace(theta, p, 2, 100, lk, params.limits);
  rows.push_back(compare(job.name + ".checkpoint_sums", "1,3,9", join(sums.trace.checkpoint_sums)));
  rows.push_back(trace_row(job.name + ".s_coboundary", TraceVerdict::Divergent,
                           s_coboundary_trace(theta, p, 2, horizon,
                                              block_checkpoints(theta, p, horizon, params.limits),
                                              params.limits),
                           std::nullopt));
  return rows;
}

std::vector<Row> remex_rows(const std::string& dir, const Params&, std::size_t) {
  const JobConfig job = load(dir, "remex");
  const OdometerSpec& alpha = *job.odometer;
  std::vector<Row> rows;
  rows.push_back(compare(job.name + ".odometer", "<4,3,3,...>", alpha.to_string()));
  rows.push_back(compare(job.name + ".supernatural", "2^2 * 3^inf", supernatural(alpha).to_string()));
  const JumpVerdict v = check_jump_function(alpha, *job.odometer_jump);
  rows.push_back(compare(job.name + ".check", "MINIMAL(c=2)",
                         v.minimal ? "MINIMAL(c=" + std::to_string(v.c) + ")"
                                   : "FAILS(" + std::to_string(v.first_failure()) + ")"));
  const JumpVerdict twice = check_jump_function(alpha, OdometerJumpSpec{1, {2, 2, 2, 2}});
  rows.push_back(compare(job.name + ".constant_jump_two", "FAILS(2)",
                         twice.minimal ? "MINIMAL" : "FAILS(" + std::to_string(twice.first_failure()) + ")"));
  return rows;
}

std::vector<Row> exammeas_rows(const std::string& dir, const Params&, std::size_t) {
  const JobConfig job = load(dir, "exammeas");
  const ExammeasSystem system = exammeas_build(job.exammeas_n, job.exammeas_levels);
  const ExammeasReport r = exammeas_check(system, job.exammeas_levels);
  std::vector<Row> rows;
  rows.push_back(compare(job.name + ".words", "000001 0000011",
                         to_string(system.w0.front()) + " " + to_string(system.w1.front())));
  const WalkTrace walk = speedup_walk(system.point, system.jump, 0, 2);
  rows.push_back(compare(job.name + ".walk", "0,4,6", join(walk.positions)));
  const ExammeasLevel& first = r.levels.front();
  rows.push_back(compare(job.name + ".first_level", "s=2 sum=6 average=3",
                         "s=" + std::to_string(first.s_simulated) + " sum=" +
                             std::to_string(first.sum_simulated) + " average=" +
                             (first.sum_simulated % first.s_simulated == 0
                                  ? std::to_string(first.sum_simulated / first.s_simulated)
                                  : "non-integral")));
  rows.push_back(compare(job.name + ".above_two", "1", std::to_string(r.all_above_two)));
  return rows;
}

}  // namespace

Outcome reproduce_paper(const std::string& config_dir, const Params& params) {
  const std::size_t horizon = params.horizon.value_or(10000);
  using Group = std::vector<Row> (*)(const std::string&, const Params&, std::size_t);
  const std::vector<std::pair<std::string, Group>> groups = {
      {"ex431", ex431_rows}, {"ex44", ex44_rows}, {"remex", remex_rows}, {"exammeas", exammeas_rows}};
  std::vector<std::future<std::vector<Row>>> jobs;
  for (const auto& [name, group] : groups) {
    jobs.push_back(std::async(std::launch::async, [&, name = name, group = group] {
      try {
        return group(config_dir, params, horizon);
      } catch (const std::exception& e) {
        return std::vector<Row>{Row{name + ".error", Status::Fail, "no error", e.what()}};
      }
    }));
  }
  Json rows = Json::array();
  bool failed = false;
  bool inconclusive = false;
  for (auto& job : jobs) {
    for (const Row& row : job.get()) {
      failed = failed || row.status == Status::Fail;
      inconclusive = inconclusive || row.status == Status::Inconclusive;
      rows.push_back(Json{{"example", row.key},
                          {"status", status_name(row.status)},
                          {"expected", row.expected},
                          {"observed", row.observed}});
    }
  }
  Outcome out;
  out.report["horizon"] = horizon;
  out.report["rows"] = std::move(rows);
  out.report["verdict"] = failed ? "FAIL" : inconclusive ? "INCONCLUSIVE" : "PASS";
  out.exit_code = failed ? kExitError : inconclusive ? kExitInconclusive : kExitOk;
  return out;
}

}  // namespace speeduplab::cli
