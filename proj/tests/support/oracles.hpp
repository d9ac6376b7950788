#pragma once

// Brute-force oracles used to freeze derived values and to cross-check the
// library. They share no code with the library beyond its value types.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "speeduplab/subshift.hpp"
#include "speeduplab/symbols.hpp"

namespace speeduplab::testing {

/// θ^k(w) by repeated concatenation on the raw image table.
inline Word naive_apply(const std::vector<Word>& images, Word w, unsigned k) {
  for (unsigned i = 0; i < k; ++i) {
    Word next;
    for (Symbol s : w) next.insert(next.end(), images[s].begin(), images[s].end());
    w = std::move(next);
  }
  return w;
}

/// Length-n factors of θ^k(a) over all a, with k raised until the set is
/// unchanged for two consecutive k and every image is longer than 2n.
inline std::set<Word> naive_language(const std::vector<Word>& images, std::size_t n) {
  std::vector<Word> words;
  for (Symbol a = 0; a < images.size(); ++a) words.push_back(Word{a});
  std::set<Word> previous;
  int stable = 0;
  for (int k = 0; k < 64; ++k) {
    std::set<Word> current;
    std::size_t shortest = SIZE_MAX;
    for (const Word& w : words) {
      shortest = std::min(shortest, w.size());
      for (std::size_t i = 0; i + n <= w.size(); ++i) current.insert(Word(w.begin() + i, w.begin() + i + n));
    }
    if (current == previous && shortest > 2 * n) {
      if (++stable >= 2) return current;
    } else {
      stable = 0;
    }
    previous = std::move(current);
    for (Word& w : words) w = naive_apply(images, w, 1);
  }
  return previous;
}

/// First-match evaluation of cylinder rules on x at t, with x[i] = word[i + origin].
inline std::int64_t rule_value(const std::vector<CylinderRule>& rules, std::int64_t fallback,
                               const Word& word, std::size_t origin, std::int64_t t) {
  for (const CylinderRule& r : rules) {
    bool match = true;
    for (std::size_t i = 0; i < r.word.size() && match; ++i) {
      const std::int64_t at = static_cast<std::int64_t>(origin) + t + r.offset + static_cast<std::int64_t>(i);
      if (at < 0 || at >= static_cast<std::int64_t>(word.size())) return -1;
      match = word[static_cast<std::size_t>(at)] == r.word[i];
    }
    if (match) return r.value;
  }
  return fallback;
}

/// Positions t_0 = 0 < t_1 < ... of the S-walk on a one-sided word read
/// through the rules; stops early if a rule window leaves the word.
inline std::vector<std::int64_t> naive_walk(const std::vector<CylinderRule>& rules, std::int64_t fallback,
                                            const Word& word, std::size_t origin, std::size_t steps) {
  std::vector<std::int64_t> pos{0};
  for (std::size_t n = 0; n < steps; ++n) {
    const std::int64_t v = rule_value(rules, fallback, word, origin, pos.back());
    if (v < 0) break;
    pos.push_back(pos.back() + v);
  }
  return pos;
}

/// Number of S-orbit classes among positions [lo, lo + width) of the graph
/// t -> t + jump[t] on [0, jump.size()).
inline std::size_t naive_orbit_classes(const std::vector<std::uint32_t>& jump, std::size_t lo,
                                       std::size_t width) {
  const std::size_t h = jump.size();
  std::vector<std::size_t> cls(h, SIZE_MAX);
  std::vector<std::size_t> alias;
  auto root = [&](std::size_t c) {
    while (alias[c] != c) c = alias[c];
    return c;
  };
  for (std::size_t s = 0; s < h; ++s) {
    if (cls[s] != SIZE_MAX) continue;
    const std::size_t id = alias.size();
    alias.push_back(id);
    std::size_t t = s;
    while (t < h && cls[t] == SIZE_MAX) {
      cls[t] = id;
      t += jump[t];
    }
    if (t < h) alias[id] = root(cls[t]);
  }
  std::set<std::size_t> seen;
  for (std::size_t t = lo; t < lo + width && t < h; ++t) seen.insert(root(cls[t]));
  return seen.size();
}

/// Greedy S-path labels of one column; empty on a collision.
inline std::vector<std::uint32_t> naive_labels(const std::vector<std::uint32_t>& jumps) {
  const std::size_t h = jumps.size();
  std::vector<std::uint32_t> label(h, UINT32_MAX);
  std::uint32_t next = 0;
  for (std::size_t start = 0; start < h; ++start) {
    if (label[start] != UINT32_MAX) continue;
    for (std::size_t j = start; j < h; j += jumps[j]) {
      if (label[j] != UINT32_MAX) return {};
      label[j] = next;
    }
    ++next;
  }
  return label;
}

/// Exit permutation of a single column whose exits land in a copy of itself.
inline std::vector<std::uint32_t> naive_self_exit(const std::vector<std::uint32_t>& jumps) {
  const std::vector<std::uint32_t> label = naive_labels(jumps);
  const std::size_t h = jumps.size();
  const std::uint32_t c = *std::max_element(label.begin(), label.end()) + 1;
  std::vector<std::uint32_t> perm(c, UINT32_MAX);
  for (std::size_t j = 0; j < h; ++j) {
    if (j + jumps[j] >= h) perm[label[j]] = label[j + jumps[j] - h];
  }
  return perm;
}

/// Odometer with multipliers alpha[0..d): digits a_i in [0, alpha[i]).
struct Digits {
  std::vector<std::uint64_t> alpha;
  std::vector<std::uint64_t> a;

  void add_one() {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (++a[i] < alpha[i]) return;
      a[i] = 0;
    }
  }
  /// Value of the first `level` digits.
  std::uint64_t low(std::size_t level) const {
    std::uint64_t v = 0;
    std::uint64_t scale = 1;
    for (std::size_t i = 0; i < level; ++i) {
      v += a[i] * scale;
      scale *= alpha[i];
    }
    return v;
  }
  bool zero() const {
    return std::all_of(a.begin(), a.end(), [](std::uint64_t x) { return x == 0; });
  }
};

/// Length of the S-orbit of 0 in the depth-d truncation, with S = T^{q(x)}
/// and q read from the first `level` digits. Stops after `cap` steps.
inline std::uint64_t naive_odometer_cycle(const std::vector<std::uint64_t>& alpha, std::size_t level,
                                          const std::vector<std::uint32_t>& q, std::uint64_t cap) {
  Digits x{alpha, std::vector<std::uint64_t>(alpha.size(), 0)};
  for (std::uint64_t n = 1; n <= cap; ++n) {
    const std::uint32_t jump = q[x.low(level)];
    for (std::uint32_t i = 0; i < jump; ++i) x.add_one();
    if (x.zero()) return n;
  }
  return 0;
}

}  // namespace speeduplab::testing
