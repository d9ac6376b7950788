#include "speeduplab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>

#include "speeduplab/error.hpp"

namespace speeduplab {

std::string to_string(TraceVerdict v) {
  switch (v) {
    case TraceVerdict::Bounded:
      return "BOUNDED";
    case TraceVerdict::Divergent:
      return "DIVERGENT";
    case TraceVerdict::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

std::string to_string(ScobReport::Status s) {
  switch (s) {
    case ScobReport::Status::Verified:
      return "VERIFIED";
    case ScobReport::Status::NotCoboundaryAtWindow:
      return "NOT_COBOUNDARY_AT_WINDOW";
    case ScobReport::Status::Failed:
      return "FAILED";
  }
  return "FAILED";
}

std::string TracePolicy::describe() const {
  return "bounded: running max of |sum| flat over the final half of the horizon (and <= bound "
         "when given); divergent: |sum| grows by a factor >= " +
         std::to_string(growth_factor).substr(0, 4) + " across the last " +
         std::to_string(growth_run) + " checkpoints; otherwise inconclusive";
}

PartialSumTrace partial_sums(std::span<const std::int64_t> values,
                             std::vector<std::size_t> checkpoints) {
  PartialSumTrace out;
  out.horizon = values.size();
  out.sums.reserve(values.size() + 1);
  out.sums.push_back(0);
  std::int64_t s = 0;
  for (std::int64_t v : values) {
    s += v;
    out.sums.push_back(s);
    out.max_abs = std::max(out.max_abs, s < 0 ? -s : s);
  }
  for (std::size_t cp : checkpoints) {
    if (cp > out.horizon) continue;
    out.checkpoints.push_back(cp);
    out.checkpoint_sums.push_back(out.sums[cp]);
  }
  return out;
}

TraceVerdict classify(const PartialSumTrace& trace, std::optional<std::int64_t> bound,
                      const TracePolicy& policy) {
  const auto& cs = trace.checkpoint_sums;
  if (policy.growth_run >= 2 && cs.size() >= policy.growth_run) {
    bool growing = true;
    for (std::size_t i = cs.size() - policy.growth_run; i + 1 < cs.size(); ++i) {
      const double a = std::abs(static_cast<double>(cs[i]));
      const double b = std::abs(static_cast<double>(cs[i + 1]));
      if (a == 0.0 || b < policy.growth_factor * a) growing = false;
    }
    if (growing) return TraceVerdict::Divergent;
  }
  std::int64_t half_max = 0;
  for (std::size_t n = 0; n <= trace.horizon / 2; ++n) {
    half_max = std::max(half_max, std::abs(trace.sums[n]));
  }
  const bool flat = half_max == trace.max_abs;
  if (flat && (!bound || trace.max_abs <= *bound)) return TraceVerdict::Bounded;
  return TraceVerdict::Inconclusive;
}

CoboundaryResult t_coboundary_trace(const Substitution& theta, const JumpFunction& p,
                                    std::uint64_t c, std::size_t horizon, const Limits& limits) {
  const FixedPointSource src = proper_fixed_point(theta);
  std::vector<std::int64_t> values = with_fixed_point(
      src.step, src.seed, p.left(), horizon + p.right() + 1, limits, [&](const OrbitPrefix& x) {
        std::vector<std::int64_t> v(horizon);
        for (std::size_t j = 0; j < horizon; ++j) {
          v[j] = static_cast<std::int64_t>(evaluate_jump(p, x, static_cast<std::int64_t>(j))) -
                 static_cast<std::int64_t>(c);
        }
        return v;
      });
  CoboundaryResult out;
  out.trace = partial_sums(values);
  out.bound = static_cast<std::int64_t>(c) * p.max_jump();
  out.verdict = classify(out.trace, out.bound);
  out.policy = TracePolicy{}.describe();
  return out;
}

CoboundaryResult t_coboundary_trace(const OdometerSpec& alpha, const OdometerJumpSpec& jump,
                                    std::size_t horizon) {
  const JumpVerdict verdict = check_jump_function(alpha, jump);
  if (verdict.c == 0) throw PreconditionError("jump vector has no integral orbit number");
  const auto c = static_cast<std::int64_t>(verdict.c);
  std::vector<std::int64_t> values(horizon);
  for (std::size_t j = 0; j < horizon; ++j) {
    values[j] = static_cast<std::int64_t>(jump.q[j % jump.q.size()]) - c;
  }
  CoboundaryResult out;
  out.trace = partial_sums(values);
  out.bound = c * *std::max_element(jump.q.begin(), jump.q.end());
  out.verdict = classify(out.trace, out.bound);
  out.policy = TracePolicy{}.describe();
  return out;
}

CoboundaryResult s_coboundary_trace(const OdometerSpec& alpha, const OdometerJumpSpec& jump,
                                    std::size_t horizon, const TracePolicy& policy) {
  const JumpVerdict verdict = check_jump_function(alpha, jump);
  if (verdict.c == 0) throw PreconditionError("jump vector has no integral orbit number");
  const auto c = static_cast<std::int64_t>(verdict.c);
  const std::uint64_t mi = jump.q.size();
  std::vector<std::int64_t> values(horizon);
  std::uint64_t t = 0;
  for (std::size_t j = 0; j < horizon; ++j) {
    const std::uint32_t q = jump.q[t];
    values[j] = static_cast<std::int64_t>(q) - c;
    t = (t + q) % mi;
  }
  std::vector<std::size_t> checkpoints;
  for (std::size_t k = jump.level;; ++k) {
    std::uint64_t mk = 0;
    try {
      mk = alpha.m(k);
    } catch (const DomainError&) {
      break;
    }
    if (mk > horizon) break;
    checkpoints.push_back(static_cast<std::size_t>(mk));
  }
  CoboundaryResult out;
  out.trace = partial_sums(values, std::move(checkpoints));
  out.bound = c * *std::max_element(jump.q.begin(), jump.q.end());
  out.verdict = classify(out.trace, out.bound, policy);
  out.policy = policy.describe();
  return out;
}

std::vector<std::size_t> block_checkpoints(const Substitution& theta, const JumpFunction& p,
                                           std::size_t horizon, const Limits& limits) {
  const FixedPointSource src = proper_fixed_point(theta);
  const WalkTrace walk = speedup_walk(src.step, p, src.seed, horizon, limits);
  std::vector<std::size_t> out;
  for (unsigned k = 1;; ++k) {
    const std::uint64_t len = src.step.image_lengths(k)[src.seed];
    const auto it = std::lower_bound(walk.positions.begin(), walk.positions.end(),
                                     static_cast<std::int64_t>(len));
    if (it == walk.positions.end()) break;
    out.push_back(static_cast<std::size_t>(it - walk.positions.begin()));
  }
  return out;
}

CoboundaryResult s_coboundary_trace(const Substitution& theta, const JumpFunction& p,
                                    std::uint64_t c, std::size_t horizon,
                                    std::vector<std::size_t> checkpoints, const Limits& limits,
                                    const TracePolicy& policy) {
  const FixedPointSource src = proper_fixed_point(theta);
  const WalkTrace walk = speedup_walk(src.step, p, src.seed, horizon, limits);
  std::vector<std::int64_t> values(horizon);
  for (std::size_t j = 0; j < horizon; ++j) {
    values[j] = static_cast<std::int64_t>(walk.jumps[j]) - static_cast<std::int64_t>(c);
  }
  CoboundaryResult out;
  out.trace = partial_sums(values, std::move(checkpoints));
  out.verdict = classify(out.trace, std::nullopt, policy);
  out.policy = policy.describe();
  return out;
}

ScobReport scob_verify(const Substitution& theta, const JumpFunction& p, std::uint64_t c,
                       std::size_t samples, unsigned max_window, const Limits& limits) {
  if (samples < 2) throw PreconditionError("scob verification needs at least 2 samples");
  const FixedPointSource src = proper_fixed_point(theta);
  const std::size_t guess = (samples + 1) * p.max_jump() + std::max<std::size_t>(p.right(), max_window) + 1;
  return with_fixed_point(
      src.step, src.seed, std::max<std::size_t>(p.left(), max_window), guess, limits,
      [&](const OrbitPrefix& x) {
        ScobReport out;
        out.samples = samples;
        out.max_window = max_window;
        const WalkTrace walk = speedup_walk(x, p, 0, samples);
        std::vector<std::int64_t> g_values(samples + 1, 0);
        for (std::size_t n = 0; n < samples; ++n) {
          g_values[n + 1] = g_values[n] + static_cast<std::int64_t>(walk.jumps[n]) -
                            static_cast<std::int64_t>(c);
        }
        const std::size_t fit = std::max<std::size_t>(samples / 2, 1);
        const auto ci = static_cast<std::int64_t>(c);
        for (unsigned width = 1; width <= max_window; ++width) {
          for (unsigned left = 0; left < width; ++left) {
            const unsigned right = width - 1 - left;
            CylinderTable table;
            bool consistent = true;
            for (std::size_t n = 0; n < fit && consistent; ++n) {
              const auto w = x.window(walk.positions[n], left, right);
              auto [it, inserted] = table.emplace(Word(w.begin(), w.end()), g_values[n]);
              if (!inserted && it->second != g_values[n]) consistent = false;
            }
            if (!consistent) continue;
            const CylinderFunction g(left, right, std::move(table), std::nullopt);
            std::size_t identity = 0;
            std::size_t intertwining = 0;
            for (std::size_t n = 0; n < samples; ++n) {
              const auto& tbl = g.table();
              const auto a = tbl.find(x.window(walk.positions[n], left, right));
              const auto b = tbl.find(x.window(walk.positions[n + 1], left, right));
              if (a == tbl.end() || b == tbl.end()) continue;
              if (static_cast<std::int64_t>(walk.jumps[n]) == ci + b->second - a->second) {
                ++identity;
              }
              if (walk.positions[n + 1] - b->second == walk.positions[n] - a->second + ci) {
                ++intertwining;
              }
            }
            if (identity == samples && intertwining == samples) {
              out.status = ScobReport::Status::Verified;
              out.window = std::make_pair(left, right);
              out.g = g;
              out.identity_passed = identity;
              out.intertwining_passed = intertwining;
              out.detail = "g is a cylinder function on [-" + std::to_string(left) + ", " +
                           std::to_string(right) + "]";
              return out;
            }
          }
        }
        out.status = ScobReport::Status::NotCoboundaryAtWindow;
        out.detail = "no window of length <= " + std::to_string(max_window) +
                     " determines the S partial sums (max |sum| " +
                     std::to_string(*std::max_element(g_values.begin(), g_values.end())) +
                     " over " + std::to_string(samples) + " steps)";
        return out;
      });
}

ScobReport scob_verify(const OdometerSpec& alpha, const OdometerJumpSpec& jump,
                       std::size_t samples, std::optional<std::size_t> level) {
  const JumpVerdict verdict = check_jump_function(alpha, jump);
  if (verdict.c == 0) throw PreconditionError("jump vector has no integral orbit number");
  const std::size_t k = level.value_or(jump.level);
  if (k < jump.level) throw DomainError("level below the jump level");
  const std::uint64_t m = alpha.m(k);
  const std::uint64_t mi = jump.q.size();
  const auto c = static_cast<std::int64_t>(verdict.c);

  ScobReport out;
  out.samples = samples;
  out.max_window = 1;
  std::vector<std::optional<std::int64_t>> g(m);
  std::uint64_t j = 0;
  std::int64_t sum = 0;
  for (std::uint64_t step = 0; step < m; ++step) {
    if (g[j]) {
      out.status = ScobReport::Status::Failed;
      out.detail = "S returns to floor " + std::to_string(j) + " of P(" + std::to_string(k) +
                   ") after " + std::to_string(step) + " steps";
      return out;
    }
    g[j] = sum;
    const std::uint32_t q = jump.q[j % mi];
    sum += static_cast<std::int64_t>(q) - c;
    j = (j + q) % m;
  }
  if (j != 0 || sum != 0) {
    out.status = ScobReport::Status::Failed;
    out.detail = "S-cycle on P(" + std::to_string(k) + ") does not close with zero sum";
    return out;
  }
  CylinderTable table;
  for (std::uint64_t f = 0; f < m; ++f) table.emplace(Word{static_cast<Symbol>(f)}, *g[f]);
  out.g = CylinderFunction(0, 0, std::move(table), std::nullopt);
  out.window = std::make_pair(0u, 0u);

  std::uint64_t t = 0;
  for (std::size_t n = 0; n < samples; ++n) {
    const std::uint32_t q = jump.q[t % mi];
    const std::uint64_t next = t + q;
    const std::int64_t ga = *g[t % m];
    const std::int64_t gb = *g[next % m];
    if (static_cast<std::int64_t>(q) == c + gb - ga) ++out.identity_passed;
    if (static_cast<std::int64_t>(next) - gb == static_cast<std::int64_t>(t) - ga + c) {
      ++out.intertwining_passed;
    }
    t = next;
  }
  const bool ok = out.identity_passed == samples && out.intertwining_passed == samples;
  out.status = ok ? ScobReport::Status::Verified : ScobReport::Status::Failed;
  out.detail = "g read off the S-cycle partial sums on P(" + std::to_string(k) + ")";
  return out;
}

EntropySummary entropy_estimates(std::span<const std::size_t> word_counts) {
  EntropySummary out;
  for (std::size_t n = 1; n <= word_counts.size(); ++n) {
    if (word_counts[n - 1] == 0) throw DomainError("word count 0 at length " + std::to_string(n));
    out.values.push_back(std::log(static_cast<double>(word_counts[n - 1])) /
                         static_cast<double>(n));
  }
  out.nonincreasing_tail = true;
  for (std::size_t i = std::max<std::size_t>(out.values.size() / 2, 1); i < out.values.size(); ++i) {
    if (out.values[i] > out.values[i - 1] + 1e-12) out.nonincreasing_tail = false;
  }
  out.last = out.values.empty() ? 0.0 : out.values.back();
  return out;
}

ExammeasSystem exammeas_build(std::span<const std::uint64_t> n_sequence, std::size_t levels) {
  if (levels == 0) throw PreconditionError("exammeas needs at least one level");
  if (n_sequence.size() + 1 < levels) {
    throw PreconditionError(std::to_string(levels) + " levels need " +
                            std::to_string(levels - 1) + " entries n_2, n_3, ...");
  }
  for (std::size_t i = 0; i < n_sequence.size(); ++i) {
    if (i == 0 && n_sequence[0] <= 6) throw PreconditionError("n_2 must exceed 6");
    if (i > 0 && n_sequence[i] <= n_sequence[i - 1]) {
      throw PreconditionError("n sequence must be strictly increasing");
    }
  }
  std::vector<Word> w0{{0, 0, 0, 0, 0, 1}};
  std::vector<Word> w1{{0, 0, 0, 0, 0, 1, 1}};
  for (std::size_t k = 2; k <= levels; ++k) {
    const Word& a = w0.back();
    const Word& b = w1.back();
    Word head;
    for (std::uint64_t r = 0; r < n_sequence[k - 2] + 1; ++r) head.insert(head.end(), a.begin(), a.end());
    head.insert(head.end(), b.begin(), b.end());
    head.insert(head.end(), a.begin(), a.end());
    head.insert(head.end(), b.begin(), b.end());
    Word next1 = head;
    next1.insert(next1.end(), b.begin(), b.end());
    w0.push_back(std::move(head));
    w1.push_back(std::move(next1));
  }

  OrbitPrefix point;
  point.symbols = w1.front();
  point.origin = point.symbols.size();
  for (int rep = 0; rep < 2; ++rep) {
    point.symbols.insert(point.symbols.end(), w0.back().begin(), w0.back().end());
  }
  point.provenance = "w_1(1) . w_" + std::to_string(levels) + "(0) w_" + std::to_string(levels) + "(0)";

  const Word a_word{0, 0, 0, 0, 0, 1};
  const std::vector<CylinderRule> rules{{0, a_word, 4}, {-1, a_word, 1}, {-2, a_word, 1}};
  std::set<Word, WordLess> domain;
  const std::size_t m = 8;
  for (std::size_t i = 0; i + m <= point.symbols.size(); ++i) {
    domain.emplace(point.symbols.begin() + static_cast<long>(i),
                   point.symbols.begin() + static_cast<long>(i + m));
  }
  const std::vector<Word> words(domain.begin(), domain.end());
  JumpFunction jump(compile_rules(rules, 2, words, 2, 5));

  return ExammeasSystem{{n_sequence.begin(), n_sequence.begin() + static_cast<long>(levels - 1)},
                        std::move(w0), std::move(w1), std::move(jump), std::move(point)};
}

ExammeasReport exammeas_check(const ExammeasSystem& system, std::size_t levels) {
  if (levels == 0 || levels > system.levels()) {
    throw PreconditionError("exammeas check levels must be in 1.." +
                            std::to_string(system.levels()));
  }
  ExammeasReport out;
  out.consistent = true;
  out.all_above_two = true;
  std::uint64_t s_rec = 2;
  std::uint64_t sum_rec = 6;
  for (std::size_t k = 1; k <= levels; ++k) {
    if (k >= 2) {
      const std::uint64_t nk = system.n[k - 2];
      const std::uint64_t a = system.w0[k - 2].size();
      const std::uint64_t b = system.w1[k - 2].size();
      s_rec = nk * s_rec + a + b;
      sum_rec = nk * sum_rec + 2 * a + 2 * b;
    }
    ExammeasLevel row;
    row.k = k;
    row.length = system.w0[k - 1].size();
    const WalkTrace walk =
        speedup_walk_to(system.point, system.jump, 0, static_cast<std::int64_t>(row.length));
    row.s_simulated = walk.jumps.size();
    row.sum_simulated = static_cast<std::uint64_t>(walk.positions.back());
    row.s_recursion = s_rec;
    row.sum_recursion = sum_rec;
    row.above_two = row.sum_simulated > 2 * row.s_simulated;
    if (row.s_simulated != s_rec || row.sum_simulated != sum_rec) {
      throw InconsistencyError("exammeas level " + std::to_string(k) + ": simulation gives s = " +
                               std::to_string(row.s_simulated) + ", sum = " +
                               std::to_string(row.sum_simulated) + "; recursion gives s = " +
                               std::to_string(s_rec) + ", sum = " + std::to_string(sum_rec));
    }
    out.all_above_two = out.all_above_two && row.above_two;
    out.levels.push_back(row);
  }
  return out;
}

}  // namespace speeduplab
