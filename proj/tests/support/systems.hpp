#pragma once

// The worked example systems shared by unit, property and acceptance tests.

#include <vector>

#include "speeduplab/odometer.hpp"
#include "speeduplab/subshift.hpp"
#include "speeduplab/symbols.hpp"

namespace speeduplab::testing {

/// 0 -> 0011, 1 -> 001011 with p = 3 on [001011], 1 on T[001011], else 2.
inline Substitution ex431_theta() { return Substitution({{0, 0, 1, 1}, {0, 0, 1, 0, 1, 1}}); }

inline JumpFunction ex431_jump() {
  const std::vector<CylinderRule> rules = {{0, {0, 0, 1, 0, 1, 1}, 3}, {-1, {0, 0, 1, 0, 1, 1}, 1}};
  return JumpFunction::from_rules(ex431_theta(), rules, 2);
}

/// 0 -> 00011, 1 -> 001 with p = 3 on [00011], 1 on T[00011], else 2.
inline Substitution ex44_theta() { return Substitution({{0, 0, 0, 1, 1}, {0, 0, 1}}); }

inline JumpFunction ex44_jump() {
  const std::vector<CylinderRule> rules = {{0, {0, 0, 0, 1, 1}, 3}, {-1, {0, 0, 0, 1, 1}, 1}};
  return JumpFunction::from_rules(ex44_theta(), rules, 2);
}

/// <4,3,3,...> with q = (2,2,3,1) on P(1).
inline OdometerSpec remex_odometer() { return OdometerSpec{{4}, {3}}; }
inline OdometerJumpSpec remex_jump() { return OdometerJumpSpec{1, {2, 2, 3, 1}}; }

}  // namespace speeduplab::testing
