#pragma once

// Odometers with eventually periodic multiplier sequences: adic arithmetic,
// supernatural-number conjugacy, and the minimality theory of their bounded
// speedups.

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "speeduplab/permutation.hpp"

namespace speeduplab {

/// α = preperiod followed by cycle repeated forever; every entry >= 2.
struct OdometerSpec {
  std::vector<std::uint64_t> preperiod;
  std::vector<std::uint64_t> cycle;

  /// DomainError on an empty cycle or an entry < 2.
  void validate() const;
  /// α_k for k >= 1.
  std::uint64_t alpha(std::size_t k) const;
  /// m_k = α_1 ... α_k (m_0 = 1). DomainError on overflow.
  std::uint64_t m(std::size_t k) const;
  /// Least d with m_d >= bound.
  std::size_t depth_reaching(std::uint64_t bound) const;
  /// "<4,3,3,...>" style rendering.
  std::string to_string() const;

  friend bool operator==(const OdometerSpec&, const OdometerSpec&) = default;
};

/// Digits a_1 .. a_t with 0 <= a_i < α_i.
struct AdicInteger {
  std::vector<std::uint64_t> digits;

  friend bool operator==(const AdicInteger&, const AdicInteger&) = default;
};

struct AdicIncrement {
  AdicInteger value;
  /// True when the carry ran past the last digit.
  bool carry_out = false;
};

/// x + (1, 0, 0, ...) with carries, truncated to the depth of x.
AdicIncrement adic_add_one(const AdicInteger& x, const OdometerSpec& alpha);

/// Prime factorisation in increasing order of primes.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

struct Supernatural {
  static constexpr unsigned kInfinite = std::numeric_limits<unsigned>::max();
  /// Nonzero exponents only.
  std::map<std::uint64_t, unsigned> exponents;

  unsigned exponent(std::uint64_t prime) const;
  /// "2^2 * 3^inf"; "1" when empty.
  std::string to_string() const;

  friend bool operator==(const Supernatural&, const Supernatural&) = default;
};

Supernatural supernatural(const OdometerSpec& alpha);

bool conjugate_odometers(const OdometerSpec& a, const OdometerSpec& b);

/// q_j = p on floor T^j A(I), j < m_I.
struct OdometerJumpSpec {
  std::size_t level = 1;
  std::vector<std::uint32_t> q;
};

struct FloorCycleResult {
  bool single_cycle = false;
  /// image[j] = (j + q_j) mod m_I.
  std::vector<std::uint64_t> image;
  /// The cycle through floor 0 (the whole cycle when single_cycle).
  std::vector<std::uint64_t> cycle;
  /// A floor hit by two different floors, if the map is not injective.
  std::optional<std::uint64_t> collision;
};

/// j -> (j + q_j) mod m_I must be a single m_I-cycle.
FloorCycleResult floor_cycle_check(const OdometerSpec& alpha, const OdometerJumpSpec& jump);

/// The same map on P(k) for k >= I: j -> (j + q_{j mod m_I}) mod m_k.
FloorCycleResult level_cycle_check(const OdometerSpec& alpha, const OdometerJumpSpec& jump,
                                   std::size_t k);

struct JumpVerdict {
  bool minimal = false;
  /// Σ q / m_I when integral, else 0.
  std::uint64_t c = 0;
  /// Every failing condition among 1, 2, 3, in increasing order.
  std::vector<int> failed;
  std::string witness;
  FloorCycleResult cycle;
  /// First k > I with gcd(c, α_k) > 1.
  std::optional<std::size_t> gcd_index;

  int first_failure() const { return failed.empty() ? 0 : failed.front(); }
};

/// Conditions: (1) jump vector well formed, (2) P(I) cyclically permuted by
/// S, (3) Σ q = c m_I with gcd(c, α_k) = 1 for all k > I.
JumpVerdict check_jump_function(const OdometerSpec& alpha, const OdometerJumpSpec& jump);

struct ImpossibilityCertificate {
  std::uint64_t prime = 0;
  /// Positions j in the cycle with prime | cycle[j].
  std::vector<std::size_t> cycle_positions;
  /// The first few indices k (1-based) with prime | α_k.
  std::vector<std::size_t> indices;
};

struct SpeedupConstruction {
  /// Set when a minimal speedup with orbit number c exists.
  std::optional<OdometerSpec> beta;
  std::optional<OdometerJumpSpec> jump;
  std::optional<JumpVerdict> verdict;
  /// N, m = m_N and g = gcd(c, m) of the construction.
  std::size_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t g = 0;
  std::optional<ImpossibilityCertificate> impossible;
};

/// Builds the jump vector on β = <g, (m/g) α_{N+1}, α_{N+2}, ...> at level 2
/// (or <m α_{N+1}, ...> at level 1 when g = 1), or certifies that every
/// candidate fails because a prime divides c and infinitely many α_k.
SpeedupConstruction construct_speedup(const OdometerSpec& alpha, std::uint64_t c);

/// For <2, 3, 4, 5, ...> (α_k = k + 1): a prime factor of c and the first
/// `count` indices k with prime | α_k. PreconditionError for c = 1.
ImpossibilityCertificate universal_odometer_obstruction(std::uint64_t c, std::size_t count = 5);

/// Greedy S-path labeling of the single column of P(k) and its exit
/// permutation. Requires m_k > max q.
Permutation odometer_level_permutation(const OdometerSpec& alpha, const OdometerJumpSpec& jump,
                                       std::size_t k);

struct PermutationTower {
  std::size_t first_level = 0;
  std::uint64_t c = 0;
  /// levels[t] = π at level first_level + t.
  std::vector<Permutation> levels;
  std::vector<bool> cyclic;
  /// π at first_level cyclic and gcd(c, α_k) = 1 for every k > first_level.
  bool cyclic_forever = false;
};

/// π at the first level with m_k > max q, then the power rule
/// π^(k+1) = (π^(k))^{α_{k+1}}. Requires conditions (2) and integral c.
PermutationTower odometer_permutation_tower(const OdometerSpec& alpha, const OdometerJumpSpec& jump,
                                            std::size_t depth);

struct SameOdometerReport {
  /// (a) S cyclically permutes P(k) for each checked k.
  std::vector<std::size_t> levels_checked;
  bool cycles_ok = false;
  /// (b) S-odometer <m_I, α_{I+1}, ...> has the supernatural number of α.
  OdometerSpec s_odometer;
  bool conjugate = false;
  /// (c) sup |Σ_{j<n} (p(S^j 0) - c)| over n <= horizon against c · max p.
  std::size_t horizon = 0;
  std::int64_t min_sum = 0;
  std::int64_t max_sum = 0;
  std::int64_t bound = 0;
  bool bounded = false;

  bool ok() const noexcept { return cycles_ok && conjugate && bounded; }
};

/// PreconditionError unless check_jump_function is MINIMAL.
SameOdometerReport verify_sameodom(const OdometerSpec& alpha, const OdometerJumpSpec& jump,
                                   std::size_t levels, std::size_t horizon);

}  // namespace speeduplab
