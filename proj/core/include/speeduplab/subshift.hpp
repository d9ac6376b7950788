#pragma once

// Points, cylinder functions, jump functions and orbit-level operations on
// subshifts generated by substitutions.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "speeduplab/error.hpp"
#include "speeduplab/symbols.hpp"

namespace speeduplab {

using CylinderTable = std::map<Word, std::int64_t, WordLess>;

/// An integer-valued function of the window x[-left, right] of a point.
/// Words absent from the table take the fallback value, if any.
class CylinderFunction {
 public:
  CylinderFunction(unsigned left, unsigned right, CylinderTable table,
                   std::optional<std::int64_t> fallback);

  static CylinderFunction constant(std::int64_t value);

  unsigned left() const noexcept { return left_; }
  unsigned right() const noexcept { return right_; }
  std::size_t window_length() const noexcept { return std::size_t{left_} + right_ + 1; }
  const CylinderTable& table() const noexcept { return table_; }
  std::optional<std::int64_t> fallback() const noexcept { return fallback_; }

  /// Value on a window word of length window_length(). DomainError if the
  /// word is unlisted and there is no fallback.
  std::int64_t operator()(std::span<const Symbol> window) const;

  std::int64_t max_value() const;
  std::int64_t min_value() const;

 private:
  unsigned left_;
  unsigned right_;
  CylinderTable table_;
  std::optional<std::int64_t> fallback_;
};

/// "x[offset, offset+|word|) == word  =>  value"; the first matching rule wins.
struct CylinderRule {
  int offset = 0;
  Word word;
  std::int64_t value = 0;
};

/// Smallest window [-left, right] containing every rule (and coordinate 0).
std::pair<unsigned, unsigned> rule_window(std::span<const CylinderRule> rules);

/// Evaluates first-match rules on each word of `domain` (all of length
/// left+right+1) and stores the non-fallback values.
CylinderFunction compile_rules(std::span<const CylinderRule> rules, std::int64_t fallback,
                               std::span<const Word> domain, unsigned left, unsigned right);

/// Same, with domain = the language of X^θ at the rules' window length.
CylinderFunction compile_rules(const Substitution& theta, std::span<const CylinderRule> rules,
                               std::int64_t fallback);

/// A bounded jump function p: every value is a positive integer.
class JumpFunction {
 public:
  /// Throws DomainError if any listed value or the fallback is < 1.
  explicit JumpFunction(CylinderFunction f);

  static JumpFunction constant(std::uint32_t value);
  static JumpFunction from_rules(const Substitution& theta, std::span<const CylinderRule> rules,
                                 std::uint32_t fallback);

  const CylinderFunction& function() const noexcept { return f_; }
  unsigned left() const noexcept { return f_.left(); }
  unsigned right() const noexcept { return f_.right(); }
  std::size_t window_length() const noexcept { return f_.window_length(); }

  std::uint32_t operator()(std::span<const Symbol> window) const {
    return static_cast<std::uint32_t>(f_(window));
  }
  /// M = sup p.
  std::uint32_t max_jump() const { return static_cast<std::uint32_t>(f_.max_value()); }
  /// True iff p takes the single value v everywhere it is defined.
  bool is_constant(std::uint32_t v) const;

 private:
  CylinderFunction f_;
};

/// A finite piece x[begin(), end()) of a two-sided point, stored with an
/// explicit origin so negative coordinates are addressable.
struct OrbitPrefix {
  Word symbols;
  /// Index in `symbols` of coordinate 0.
  std::size_t origin = 0;
  std::string provenance;

  std::int64_t begin() const noexcept { return -static_cast<std::int64_t>(origin); }
  std::int64_t end() const noexcept {
    return static_cast<std::int64_t>(symbols.size()) - static_cast<std::int64_t>(origin);
  }
  Symbol at(std::int64_t t) const;
  /// x[t-left, t+right]; HorizonError when the window leaves the prefix.
  std::span<const Symbol> window(std::int64_t t, unsigned left, unsigned right) const;
};

/// The fixed point of θ through `seed` (θ(seed) must begin with seed), with
/// `left_margin` symbols of the left-infinite fixed point ending in r to the
/// left of coordinate 0. A nonzero margin requires θ proper at power 1.
OrbitPrefix fixed_point_orbit(const Substitution& theta, Symbol seed, std::size_t length,
                              std::size_t left_margin);

/// θ^k for the least k at which θ is proper, with its common first symbol.
/// Fixed points of `step` through `seed` admit left margins.
struct FixedPointSource {
  Substitution step;
  unsigned power = 1;
  Symbol seed = 0;
};

/// PreconditionError if θ is not proper.
FixedPointSource proper_fixed_point(const Substitution& theta);

struct Limits {
  /// Maximum prefix length for auto-extending orbit computations.
  std::size_t max_prefix = std::size_t{1} << 20;
  /// Maximum KR level searched by level normalisation.
  unsigned max_level = 12;
};

/// Runs `f` on fixed-point prefixes of doubling length until it stops
/// throwing HorizonError or the cap is reached.
template <class F>
auto with_fixed_point(const Substitution& theta, Symbol seed, std::size_t left_margin,
                      std::size_t initial, const Limits& limits, F&& f) {
  std::size_t len = std::max<std::size_t>(initial, 64);
  for (;;) {
    const std::size_t use = std::min(len, limits.max_prefix);
    const OrbitPrefix orbit = fixed_point_orbit(theta, seed, use, left_margin);
    try {
      return f(orbit);
    } catch (const HorizonError& e) {
      if (use >= limits.max_prefix) {
        throw HorizonError(std::string(e.what()) + " (prefix cap " +
                               std::to_string(limits.max_prefix) +
                               " reached; raise SPEEDUPLAB_MAX_PREFIX)",
                           e.achieved());
      }
      len = use * 2;
    }
  }
}

/// p(T^t x).
std::uint32_t evaluate_jump(const JumpFunction& p, const OrbitPrefix& x, std::int64_t t);

struct WalkTrace {
  /// t_0 = start < t_1 < ... < t_N.
  std::vector<std::int64_t> positions;
  /// jumps[j] = t_{j+1} - t_j.
  std::vector<std::uint32_t> jumps;
};

/// N steps of S = T^p from coordinate `start`. HorizonError reports the number
/// of steps achieved.
WalkTrace speedup_walk(const OrbitPrefix& x, const JumpFunction& p, std::int64_t start,
                       std::size_t steps);

/// Walks until the position reaches or passes `target`; the trace's last
/// position is the first t_N >= target.
WalkTrace speedup_walk_to(const OrbitPrefix& x, const JumpFunction& p, std::int64_t start,
                          std::int64_t target);

/// S-orbit of the θ fixed point through `seed`, auto-extending the prefix.
WalkTrace speedup_walk(const Substitution& theta, const JumpFunction& p, Symbol seed,
                       std::size_t steps, const Limits& limits = {});

/// The m-block presentation with m = window length of p, on which the jump
/// function depends on coordinate 0 only.
struct BlockRecoding {
  Substitution recoded;
  JumpFunction jump;
  /// dictionary[s] = the m-word x[i, i+m) encoded by recoded symbol s.
  std::vector<Word> dictionary;
  /// Recoded position i corresponds to original position i + shift for p.
  unsigned shift = 0;

  Symbol encode(std::span<const Symbol> block) const;
};

BlockRecoding block_recode(const Substitution& theta, const JumpFunction& p);

struct ThetaDecomposition {
  unsigned level = 0;
  /// Block starts n_0 = 0 < n_1 < ... inside the prefix.
  std::vector<std::size_t> cuts;
  /// symbols[j] = a_j with prefix[n_j, n_{j+1}) = θ^k(a_j).
  Word symbols;
  /// End of the last complete block.
  std::size_t covered = 0;
  /// True if the final block runs past the end of the prefix.
  bool truncated = false;
};

/// Decomposes a prefix of the θ fixed point into θ^k-blocks. Prefixes not
/// generated by the fixed point through prefix[0] are rejected with
/// UnsupportedInputError.
ThetaDecomposition decompose(const Substitution& theta, std::span<const Symbol> prefix, unsigned k);

/// Block starts of the first `blocks` θ^k-blocks of the fixed point whose
/// symbols are `fixed_point` (no prefix needed). Size blocks + 1.
std::vector<std::uint64_t> block_cuts(const Substitution& theta, std::span<const Symbol> fixed_point,
                                      unsigned k);

struct OrbitNumberResult {
  std::uint32_t c = 0;
  std::size_t horizon = 0;
  std::uint32_t max_jump = 0;
  /// Number of length-M windows over which the class count was checked.
  std::size_t windows_checked = 0;
};

/// Number of S-orbits in a T-orbit, by reachability classes of t -> t + p(t)
/// on [0, horizon]. InconclusiveError if the class count is not constant
/// over the last half of the horizon.
OrbitNumberResult orbit_number(const OrbitPrefix& x, const JumpFunction& p, std::size_t horizon);

OrbitNumberResult orbit_number(const Substitution& theta, const JumpFunction& p, Symbol seed,
                               std::size_t horizon, const Limits& limits = {});

}  // namespace speeduplab
