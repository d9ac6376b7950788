#pragma once

// Seeded random generators for property tests.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "speeduplab/odometer.hpp"
#include "speeduplab/permutation.hpp"
#include "speeduplab/symbols.hpp"

namespace speeduplab::testing {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline Word random_word(Rng& rng, std::size_t alphabet, std::size_t len) {
  Word w(len);
  for (auto& s : w) s = static_cast<Symbol>(uniform(rng, 0, alphabet - 1));
  return w;
}

/// Any substitution with nonempty images of length 1..max_len.
inline Substitution random_substitution(Rng& rng, std::size_t alphabet, std::size_t max_len) {
  std::vector<Word> images(alphabet);
  for (auto& img : images) img = random_word(rng, alphabet, uniform(rng, 1, max_len));
  return Substitution(std::move(images));
}

/// Images start with 0, end with 1 and contain every symbol, so θ is
/// primitive and proper at power 1. Aperiodicity is checked up to 30 and
/// candidates failing it are redrawn.
inline Substitution random_proper_primitive(Rng& rng, std::size_t alphabet, std::size_t max_len) {
  const std::size_t min_len = alphabet + 2;
  for (;;) {
    std::vector<Word> images(alphabet);
    for (auto& img : images) {
      const std::size_t len = uniform(rng, min_len, std::max(min_len, max_len));
      Word middle(len - 2);
      for (std::size_t i = 0; i < middle.size(); ++i) {
        middle[i] = i < alphabet ? static_cast<Symbol>(i) : static_cast<Symbol>(uniform(rng, 0, alphabet - 1));
      }
      std::shuffle(middle.begin(), middle.end(), rng);
      img.push_back(0);
      img.insert(img.end(), middle.begin(), middle.end());
      img.push_back(1);
    }
    Substitution theta(std::move(images));
    if (is_aperiodic_up_to(theta, 30).kind == AperiodicityVerdict::Kind::AperiodicCertified) {
      return theta;
    }
  }
}

inline Permutation random_permutation(Rng& rng, std::size_t n) {
  std::vector<Label> img(n);
  std::iota(img.begin(), img.end(), Label{0});
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(std::move(img));
}

inline OdometerSpec random_odometer(Rng& rng) {
  OdometerSpec a;
  const std::size_t pre = uniform(rng, 0, 2);
  const std::size_t cyc = uniform(rng, 1, 2);
  for (std::size_t i = 0; i < pre; ++i) a.preperiod.push_back(uniform(rng, 2, 6));
  for (std::size_t i = 0; i < cyc; ++i) a.cycle.push_back(uniform(rng, 2, 6));
  return a;
}

inline OdometerJumpSpec random_odometer_jump(Rng& rng, const OdometerSpec& alpha, std::size_t level,
                                             std::uint32_t max_q) {
  OdometerJumpSpec j;
  j.level = level;
  j.q.resize(alpha.m(level));
  for (auto& q : j.q) q = static_cast<std::uint32_t>(uniform(rng, 1, max_q));
  return j;
}

}  // namespace speeduplab::testing
