#pragma once

// Speedups of substitution subshifts: KR-partition labelings, permutation
// tuples and their composition rule, the symbol-label substitution σ, the
// minimality decision, and the self-induced floor map.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "speeduplab/kr_labeling.hpp"
#include "speeduplab/permutation.hpp"
#include "speeduplab/subshift.hpp"
#include "speeduplab/symbols.hpp"

namespace speeduplab {

/// P(k): column i has height l_i(k) = |θ^k(i)|.
struct KRPartition {
  unsigned level = 0;
  std::vector<std::uint64_t> heights;
};

KRPartition kr_partition(const Substitution& theta, unsigned k);

struct LevelConditions {
  unsigned level = 0;
  /// First R and last L symbols of θ^k(i) agree across i.
  bool boundary_agrees = false;
  /// min_i l_i(k) > max p.
  bool tall_enough = false;
  /// p on floors of height <= max p does not depend on the column.
  bool low_floors_agree = false;

  bool ok() const noexcept { return boundary_agrees && tall_enough && low_floors_agree; }
};

LevelConditions check_level(const Substitution& theta, const JumpFunction& p, unsigned k);

/// jumps[i][j] = p on floor (i, j) of P(k), read from the word
/// (common suffix) θ^k(i) (common prefix). PreconditionError when the
/// boundary condition fails at level k.
std::vector<std::vector<std::uint32_t>> floor_jumps(const Substitution& theta, const JumpFunction& p,
                                                    unsigned k);

struct NormalizedLevel {
  /// Least level k* meeting all three conditions.
  unsigned level = 0;
  /// θ^{k*}.
  Substitution theta_star;
  /// Conditions at k = 1..k*.
  std::vector<LevelConditions> checked;
};

/// Searches k = 1..limits.max_level. PreconditionError if none qualifies.
NormalizedLevel normalize_level(const Substitution& theta, const JumpFunction& p,
                                const Limits& limits = {});

struct Labeling {
  unsigned level = 0;
  /// Labels per column (equal across columns).
  std::size_t c = 0;
  /// labels[i][j], jumps[i][j].
  std::vector<std::vector<Label>> labels;
  std::vector<std::vector<std::uint32_t>> jumps;
  std::vector<ColumnLabeling> columns;
};

/// Labels every column; InconsistencyError if label counts differ.
Labeling build_labeling(std::vector<std::vector<std::uint32_t>> jumps, unsigned level);
Labeling build_labeling(const Substitution& theta, const JumpFunction& p, unsigned k);

/// π_i(l) = label of the floor reached when the l-path exits column i.
/// InconsistencyError if that label depends on the next column.
PermutationTuple column_permutations(const Labeling& labeling);

/// One step of the composition rule: π'_i = π_{i_m} ∘ ... ∘ π_{i_1}
/// along θ(i) = i_1 ... i_m.
PermutationTuple compose_along(const PermutationTuple& pi, const Substitution& theta);

struct PermutationIteration {
  /// sequence[n] = π at n rule steps past the start, up to and including
  /// the first repeated tuple.
  std::vector<PermutationTuple> sequence;
  std::size_t preperiod = 0;
  std::size_t period = 1;
  /// Least multiple of the period that is >= max(preperiod, 1);
  /// π^(K) = π^(2K) in relative levels.
  std::size_t stable = 1;
  PermutationTuple stabilized;
};

PermutationIteration iterate_permutations(const PermutationTuple& pi, const Substitution& theta);

/// σ on the pairs (i, l), l < c, encoded as the symbol i * c + l.
struct SigmaSubstitution {
  Substitution sigma;
  std::size_t base_alphabet = 0;
  std::size_t c = 0;

  Symbol pair_index(Symbol i, Label l) const { return static_cast<Symbol>(i * c + l); }
  std::pair<Symbol, Label> pair_of(Symbol s) const {
    return {static_cast<Symbol>(s / c), static_cast<Label>(s % c)};
  }
  /// "σ:(i,l) ↦ (i1,l1)(i2,l2)..." for each pair in index order.
  std::vector<std::string> render() const;
};

/// σ(i, l) = (i_1, l_1) ... (i_m, l_m) with l_1 = l, l_{t+1} = π_{i_t}(l_t).
SigmaSubstitution build_sigma(const Substitution& theta, const PermutationTuple& pi);

/// Every intermediate of the minimality pipeline.
struct SpeedupAnalysis {
  /// θ^{proper_power}; all levels below count powers of `step`.
  Substitution step;
  unsigned proper_power = 1;
  Symbol seed = 0;
  JumpFunction jump;
  std::size_t aperiodicity_horizon = 0;

  NormalizedLevel normalized;
  Labeling labeling;
  /// π at level normalized.level.
  PermutationTuple pi;
  PermutationIteration iteration;

  /// σ is built over step^{sigma_power} from π at step level sigma_level.
  unsigned sigma_level = 0;
  unsigned sigma_power = 1;
  PermutationTuple sigma_pi;
  SigmaSubstitution sigma;
  PrimitivityResult sigma_primitivity;

  bool minimal = false;
  std::size_t c = 0;
};

/// normalize -> label -> permutations -> stabilise -> σ -> primitivity.
/// Requires θ primitive, proper and aperiodic up to `aperiodicity_horizon`.
SpeedupAnalysis analyze_speedup(const Substitution& theta, const JumpFunction& p,
                                const Limits& limits = {}, std::size_t aperiodicity_horizon = 30);

bool is_minimal_speedup(const Substitution& theta, const JumpFunction& p, const Limits& limits = {});

/// Pair indices (z_j, l_j) of the first `blocks` blocks of step^{sigma_level}
/// in the fixed point, with l_j read from the S-walk of the fixed point.
std::vector<Symbol> simulated_symbol_labels(const SpeedupAnalysis& analysis, std::size_t blocks,
                                            const Limits& limits = {});

/// The same sequence generated by σ from the pair (seed, 0).
std::vector<Symbol> sigma_symbol_labels(const SpeedupAnalysis& analysis, std::size_t blocks);

/// B = { x[0, p(x)) } on the block-recoded alphabet, sorted.
struct SpeedupAlphabet {
  BlockRecoding recoding;
  std::vector<Word> blocks;
};

SpeedupAlphabet speedup_alphabet(const Substitution& theta, const JumpFunction& p);

struct SurplusWitness {
  unsigned m = 0;
  /// Least N with min over x of sum_{j<N} (p(T^j x) - 1) > m.
  std::size_t least_n = 0;
  std::int64_t min_surplus = 0;
  /// (m + 1) r + 1: the least N allowed by the return-time bound.
  std::size_t bound_n = 0;
};

struct NonconjugacyReport {
  /// p is not identically 1.
  bool hypothesis_holds = false;
  std::size_t horizon = 0;
  /// counts[n-1] = |W_n|.
  std::vector<std::size_t> counts;
  bool strictly_increasing = false;
  /// Longest run of consecutive positions with p = 1, plus one.
  std::size_t return_time = 0;
  std::vector<SurplusWitness> surplus;
};

NonconjugacyReport nonconjugacy_evidence(const Substitution& theta, const JumpFunction& p,
                                         std::size_t horizon, unsigned max_m = 5);

/// φ from P(1) to P(2) of θ* = step^{theta_power}.
struct FloorMap {
  unsigned theta_power = 0;
  /// target[i][j] = height in level-2 column i of φ(i, j).
  std::vector<std::vector<std::uint64_t>> target;
  /// sub_block_starts[i][j] = r_j: start of the j-th level-1 block inside
  /// level-2 column i.
  std::vector<std::vector<std::uint64_t>> sub_block_starts;
  /// in_u[i][h]: floor (i, h) of P(2) lies in U.
  std::vector<std::vector<bool>> in_u;
  Labeling level1;
  Labeling level2;
};

struct SelfInduceResult {
  FloorMap map;
  std::size_t steps_requested = 0;
  std::size_t steps_passed = 0;
  /// First step n with φ(S x_n) != S_U(φ(x_n)).
  std::optional<std::size_t> first_failure;
  std::size_t prefix_used = 0;

  bool ok() const noexcept { return !first_failure && steps_passed == steps_requested; }
};

/// Builds φ (lowest label-matching floor in each sub-block) and checks
/// φ S = S_U φ along `steps` S-steps of the fixed point.
SelfInduceResult self_induce_map(const SpeedupAnalysis& analysis, std::size_t steps,
                                 const Limits& limits = {});

}  // namespace speeduplab
