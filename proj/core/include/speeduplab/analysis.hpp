#pragma once

// Finite-horizon coboundary detection, the factor-map verification for
// S-coboundaries, block-counting entropy estimates, and the exammeas
// construction.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "speeduplab/odometer.hpp"
#include "speeduplab/subshift.hpp"
#include "speeduplab/symbols.hpp"

namespace speeduplab {

enum class TraceVerdict { Bounded, Divergent, Inconclusive };

std::string to_string(TraceVerdict v);

struct PartialSumTrace {
  std::size_t horizon = 0;
  /// sums[n] = Σ_{j<n} f(orbit_j); sums[0] = 0, size horizon + 1.
  std::vector<std::int64_t> sums;
  std::int64_t max_abs = 0;
  std::vector<std::size_t> checkpoints;
  std::vector<std::int64_t> checkpoint_sums;
};

/// Bounded: running max of |sum| flat over the final half (and within the
/// bound, if one is given). Divergent: |sum| grows by `growth_factor` or more
/// across the final `growth_run` checkpoints.
struct TracePolicy {
  double growth_factor = 2.0;
  std::size_t growth_run = 3;

  std::string describe() const;
};

PartialSumTrace partial_sums(std::span<const std::int64_t> values,
                             std::vector<std::size_t> checkpoints = {});

TraceVerdict classify(const PartialSumTrace& trace, std::optional<std::int64_t> bound,
                      const TracePolicy& policy = {});

struct CoboundaryResult {
  PartialSumTrace trace;
  TraceVerdict verdict = TraceVerdict::Inconclusive;
  /// c · max p for T-traces.
  std::optional<std::int64_t> bound;
  std::string policy;
};

/// Σ_{j<n} (p(T^j z) - c) along the fixed point.
CoboundaryResult t_coboundary_trace(const Substitution& theta, const JumpFunction& p,
                                    std::uint64_t c, std::size_t horizon,
                                    const Limits& limits = {});

/// Σ_{j<n} (q_{j mod m_I} - c) along the T-orbit of 0.
CoboundaryResult t_coboundary_trace(const OdometerSpec& alpha, const OdometerJumpSpec& jump,
                                    std::size_t horizon);

/// Number of S-steps needed to cover θ^k(seed) of the proper power of θ,
/// for k = 1, 2, ... while it stays within `horizon` steps.
std::vector<std::size_t> block_checkpoints(const Substitution& theta, const JumpFunction& p,
                                           std::size_t horizon, const Limits& limits = {});

/// Σ_{j<n} (p(S^j z) - c) along the S-orbit of the fixed point.
CoboundaryResult s_coboundary_trace(const Substitution& theta, const JumpFunction& p,
                                    std::uint64_t c, std::size_t horizon,
                                    std::vector<std::size_t> checkpoints,
                                    const Limits& limits = {}, const TracePolicy& policy = {});

/// Σ_{j<n} (p(S^j 0) - c) along the S-orbit of 0, with checkpoints at the
/// S-cycle lengths m_k of P(k), k >= I, inside the horizon.
CoboundaryResult s_coboundary_trace(const OdometerSpec& alpha, const OdometerJumpSpec& jump,
                                    std::size_t horizon, const TracePolicy& policy = {});

struct ScobReport {
  enum class Status { Verified, NotCoboundaryAtWindow, Failed };

  Status status = Status::Failed;
  /// Largest window length scanned.
  unsigned max_window = 0;
  /// Window [-left, right] on which g was found.
  std::optional<std::pair<unsigned, unsigned>> window;
  std::optional<CylinderFunction> g;
  std::size_t samples = 0;
  /// Samples with p(x) = c + g(Sx) - g(x).
  std::size_t identity_passed = 0;
  /// Samples with h(Sx) = T^c h(x), h(x) = T^{-g(x)} x.
  std::size_t intertwining_passed = 0;
  std::string detail;
};

std::string to_string(ScobReport::Status s);

/// Reads g off the S partial sums on the first half of `samples` S-steps,
/// looks for the smallest window on which it is a cylinder function, and
/// checks both identities on all samples.
ScobReport scob_verify(const Substitution& theta, const JumpFunction& p, std::uint64_t c,
                       std::size_t samples, unsigned max_window = 12, const Limits& limits = {});

/// g on the floors of P(level) from the S-cycle partial sums; the identities
/// are checked along `samples` S-steps from 0.
ScobReport scob_verify(const OdometerSpec& alpha, const OdometerJumpSpec& jump,
                       std::size_t samples, std::optional<std::size_t> level = std::nullopt);

struct EntropySummary {
  /// values[n-1] = ln |W_n| / n.
  std::vector<double> values;
  /// No increase over the second half of the sequence.
  bool nonincreasing_tail = false;
  double last = 0.0;
};

EntropySummary entropy_estimates(std::span<const std::size_t> word_counts);

struct ExammeasSystem {
  /// n[0] = n_2, n[1] = n_3, ...
  std::vector<std::uint64_t> n;
  /// w0[k-1] = w_k(0), w1[k-1] = w_k(1).
  std::vector<Word> w0;
  std::vector<Word> w1;
  /// 4 on A = [000001], 1 on TA and T^2 A, 2 elsewhere.
  JumpFunction jump;
  /// w_1(1) w_L(0) w_L(0) with coordinate 0 at the start of w_L(0).
  OrbitPrefix point;

  std::size_t levels() const noexcept { return w0.size(); }
};

/// PreconditionError unless n is increasing with n_2 > 6 and has at least
/// levels - 1 entries.
ExammeasSystem exammeas_build(std::span<const std::uint64_t> n_sequence, std::size_t levels);

struct ExammeasLevel {
  std::size_t k = 0;
  std::uint64_t length = 0;
  std::uint64_t s_simulated = 0;
  std::uint64_t s_recursion = 0;
  std::uint64_t sum_simulated = 0;
  std::uint64_t sum_recursion = 0;
  bool above_two = false;
};

struct ExammeasReport {
  std::vector<ExammeasLevel> levels;
  bool consistent = false;
  bool all_above_two = false;
};

/// InconsistencyError if simulation and recursion disagree.
ExammeasReport exammeas_check(const ExammeasSystem& system, std::size_t levels);

}  // namespace speeduplab
