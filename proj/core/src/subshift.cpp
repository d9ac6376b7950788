#include "speeduplab/subshift.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace speeduplab {

CylinderFunction::CylinderFunction(unsigned left, unsigned right, CylinderTable table,
                                   std::optional<std::int64_t> fallback)
    : left_(left), right_(right), table_(std::move(table)), fallback_(fallback) {
  for (const auto& [word, value] : table_) {
    if (word.size() != window_length()) {
      throw DomainError("cylinder table word " + to_string(word) + " has length " +
                        std::to_string(word.size()) + ", window length is " +
                        std::to_string(window_length()));
    }
  }
  if (table_.empty() && !fallback_) {
    throw DomainError("cylinder function has neither table entries nor a default");
  }
}

CylinderFunction CylinderFunction::constant(std::int64_t value) {
  return CylinderFunction(0, 0, {}, value);
}

std::int64_t CylinderFunction::operator()(std::span<const Symbol> window) const {
  if (window.size() != window_length()) {
    throw DomainError("window of length " + std::to_string(window.size()) +
                      " passed to a cylinder function of window length " +
                      std::to_string(window_length()));
  }
  if (auto it = table_.find(window); it != table_.end()) return it->second;
  if (fallback_) return *fallback_;
  throw DomainError("word " + to_string(window) + " is not in the cylinder table");
}

std::int64_t CylinderFunction::max_value() const {
  std::int64_t best = fallback_.value_or(std::numeric_limits<std::int64_t>::min());
  for (const auto& [word, value] : table_) best = std::max(best, value);
  return best;
}

std::int64_t CylinderFunction::min_value() const {
  std::int64_t best = fallback_.value_or(std::numeric_limits<std::int64_t>::max());
  for (const auto& [word, value] : table_) best = std::min(best, value);
  return best;
}

std::pair<unsigned, unsigned> rule_window(std::span<const CylinderRule> rules) {
  unsigned left = 0;
  unsigned right = 0;
  for (const auto& rule : rules) {
    if (rule.word.empty()) throw DomainError("cylinder rule with an empty word");
    if (rule.offset < 0) left = std::max(left, static_cast<unsigned>(-rule.offset));
    const long last = static_cast<long>(rule.offset) + static_cast<long>(rule.word.size()) - 1;
    if (last > 0) right = std::max(right, static_cast<unsigned>(last));
  }
  return {left, right};
}

CylinderFunction compile_rules(std::span<const CylinderRule> rules, std::int64_t fallback,
                               std::span<const Word> domain, unsigned left, unsigned right) {
  const auto [need_left, need_right] = rule_window(rules);
  if (need_left > left || need_right > right) {
    throw DomainError("cylinder rules do not fit in the window [-" + std::to_string(left) + ", " +
                      std::to_string(right) + "]");
  }
  CylinderTable table;
  for (const Word& w : domain) {
    if (w.size() != std::size_t{left} + right + 1) {
      throw DomainError("domain word " + to_string(w) + " does not match the window length");
    }
    for (const auto& rule : rules) {
      const std::size_t at = static_cast<std::size_t>(static_cast<long>(left) + rule.offset);
      if (std::equal(rule.word.begin(), rule.word.end(), w.begin() + static_cast<long>(at))) {
        table.emplace(w, rule.value);
        break;
      }
    }
  }
  return CylinderFunction(left, right, std::move(table), fallback);
}

CylinderFunction compile_rules(const Substitution& theta, std::span<const CylinderRule> rules,
                               std::int64_t fallback) {
  const auto [left, right] = rule_window(rules);
  const auto domain = language(theta, std::size_t{left} + right + 1);
  return compile_rules(rules, fallback, domain, left, right);
}

JumpFunction::JumpFunction(CylinderFunction f) : f_(std::move(f)) {
  for (const auto& [word, value] : f_.table()) {
    if (value < 1) {
      throw DomainError("jump value " + std::to_string(value) + " on word " + to_string(word) +
                        " is not a positive integer");
    }
  }
  if (f_.fallback() && *f_.fallback() < 1) {
    throw DomainError("default jump value " + std::to_string(*f_.fallback()) +
                      " is not a positive integer");
  }
  if (f_.max_value() > std::numeric_limits<std::uint32_t>::max()) {
    throw DomainError("jump value exceeds the supported range");
  }
}

JumpFunction JumpFunction::constant(std::uint32_t value) {
  return JumpFunction(CylinderFunction::constant(value));
}

JumpFunction JumpFunction::from_rules(const Substitution& theta,
                                      std::span<const CylinderRule> rules,
                                      std::uint32_t fallback) {
  return JumpFunction(compile_rules(theta, rules, fallback));
}

bool JumpFunction::is_constant(std::uint32_t v) const {
  if (f_.fallback() && *f_.fallback() != v) return false;
  return std::all_of(f_.table().begin(), f_.table().end(),
                     [v](const auto& entry) { return entry.second == v; });
}

Symbol OrbitPrefix::at(std::int64_t t) const {
  if (t < begin() || t >= end()) {
    throw HorizonError("coordinate " + std::to_string(t) + " outside the prefix [" +
                           std::to_string(begin()) + ", " + std::to_string(end()) + ")",
                       0);
  }
  return symbols[static_cast<std::size_t>(t + static_cast<std::int64_t>(origin))];
}

std::span<const Symbol> OrbitPrefix::window(std::int64_t t, unsigned left, unsigned right) const {
  const std::int64_t lo = t - left;
  const std::int64_t hi = t + right + 1;
  if (lo < begin() || hi > end()) {
    throw HorizonError("window [" + std::to_string(lo) + ", " + std::to_string(hi) +
                           ") outside the prefix [" + std::to_string(begin()) + ", " +
                           std::to_string(end()) + ")",
                       0);
  }
  return std::span<const Symbol>(symbols).subspan(
      static_cast<std::size_t>(lo + static_cast<std::int64_t>(origin)), std::size_t{left} + right + 1);
}

OrbitPrefix fixed_point_orbit(const Substitution& theta, Symbol seed, std::size_t length,
                              std::size_t left_margin) {
  OrbitPrefix out;
  out.provenance = "fixed point through " + std::to_string(seed);
  Word right = fixed_point_prefix(theta, seed, length);
  if (left_margin == 0) {
    out.symbols = std::move(right);
    return out;
  }
  const ProperResult proper = is_proper(theta, 1);
  if (!proper.proper) {
    throw PreconditionError(
        "a left margin needs a substitution whose images share first and last symbols; "
        "pass a power of the substitution that is proper at power 1");
  }
  std::vector<Word> reversed = theta.images();
  for (Word& w : reversed) std::reverse(w.begin(), w.end());
  Word left = fixed_point_prefix(Substitution(std::move(reversed)), proper.right, left_margin);
  std::reverse(left.begin(), left.end());
  out.provenance += ", left fixed point through " + std::to_string(proper.right);
  out.origin = left.size();
  out.symbols = std::move(left);
  out.symbols.insert(out.symbols.end(), right.begin(), right.end());
  return out;
}

FixedPointSource proper_fixed_point(const Substitution& theta) {
  const ProperResult proper = is_proper(theta);
  if (!proper.proper) {
    throw PreconditionError("substitution is not proper up to power " +
                            std::to_string(proper.searched));
  }
  return FixedPointSource{theta.power(proper.power), proper.power, proper.left};
}

std::uint32_t evaluate_jump(const JumpFunction& p, const OrbitPrefix& x, std::int64_t t) {
  return p(x.window(t, p.left(), p.right()));
}

WalkTrace speedup_walk(const OrbitPrefix& x, const JumpFunction& p, std::int64_t start,
                       std::size_t steps) {
  WalkTrace trace;
  trace.positions.reserve(steps + 1);
  trace.jumps.reserve(steps);
  trace.positions.push_back(start);
  std::int64_t t = start;
  for (std::size_t n = 0; n < steps; ++n) {
    std::uint32_t jump = 0;
    try {
      jump = evaluate_jump(p, x, t);
    } catch (const HorizonError& e) {
      throw HorizonError(std::string("speedup walk: ") + e.what(), n);
    }
    t += jump;
    trace.jumps.push_back(jump);
    trace.positions.push_back(t);
  }
  return trace;
}

WalkTrace speedup_walk_to(const OrbitPrefix& x, const JumpFunction& p, std::int64_t start,
                          std::int64_t target) {
  WalkTrace trace;
  trace.positions.push_back(start);
  std::int64_t t = start;
  while (t < target) {
    std::uint32_t jump = 0;
    try {
      jump = evaluate_jump(p, x, t);
    } catch (const HorizonError& e) {
      throw HorizonError(std::string("speedup walk: ") + e.what(), trace.jumps.size());
    }
    t += jump;
    trace.jumps.push_back(jump);
    trace.positions.push_back(t);
  }
  return trace;
}

WalkTrace speedup_walk(const Substitution& theta, const JumpFunction& p, Symbol seed,
                       std::size_t steps, const Limits& limits) {
  const std::size_t guess = steps * std::max<std::size_t>(p.max_jump(), 1) + p.right() + 1;
  return with_fixed_point(theta, seed, p.left(), guess, limits, [&](const OrbitPrefix& x) {
    return speedup_walk(x, p, 0, steps);
  });
}

namespace {

Symbol encode_block(const std::vector<Word>& dictionary, std::span<const Symbol> block) {
  auto it = std::lower_bound(dictionary.begin(), dictionary.end(), block, WordLess{});
  if (it == dictionary.end() || !std::equal(it->begin(), it->end(), block.begin(), block.end())) {
    throw InconsistencyError("block " + to_string(block) + " is not in the language");
  }
  return static_cast<Symbol>(it - dictionary.begin());
}

}  // namespace

Symbol BlockRecoding::encode(std::span<const Symbol> block) const {
  return encode_block(dictionary, block);
}

BlockRecoding block_recode(const Substitution& theta, const JumpFunction& p) {
  const std::size_t m = p.window_length();
  std::vector<Word> dictionary = language(theta, m);

  std::vector<Word> images;
  images.reserve(dictionary.size());
  CylinderTable table;
  for (std::size_t s = 0; s < dictionary.size(); ++s) {
    const Word& w = dictionary[s];
    const Word img = theta.apply(w);
    const std::size_t head = theta.image(w.front()).size();
    Word recoded;
    recoded.reserve(head);
    for (std::size_t j = 0; j < head; ++j) {
      recoded.push_back(encode_block(dictionary, std::span<const Symbol>(img).subspan(j, m)));
    }
    images.push_back(std::move(recoded));
    table.emplace(Word{static_cast<Symbol>(s)}, static_cast<std::int64_t>(p(w)));
  }
  return BlockRecoding{Substitution(std::move(images)),
                       JumpFunction(CylinderFunction(0, 0, std::move(table), std::nullopt)),
                       std::move(dictionary), p.left()};
}

ThetaDecomposition decompose(const Substitution& theta, std::span<const Symbol> prefix, unsigned k) {
  ThetaDecomposition out;
  out.level = k;
  if (prefix.empty()) return out;
  const Symbol seed = prefix.front();
  theta.check_word(prefix);
  Word generated;
  try {
    generated = fixed_point_prefix(theta, seed, prefix.size());
  } catch (const PreconditionError& e) {
    throw UnsupportedInputError(std::string("prefix is not a fixed-point prefix: ") + e.what());
  }
  if (!std::equal(generated.begin(), generated.end(), prefix.begin(), prefix.end())) {
    const auto diff = std::mismatch(generated.begin(), generated.end(), prefix.begin());
    throw UnsupportedInputError(
        "prefix differs from the fixed point through " + std::to_string(seed) + " at position " +
        std::to_string(diff.first - generated.begin()) +
        "; only fixed-point prefixes can be decomposed");
  }
  const auto lengths = theta.image_lengths(k);
  std::uint64_t cut = 0;
  for (std::size_t j = 0; cut < prefix.size(); ++j) {
    out.cuts.push_back(static_cast<std::size_t>(cut));
    out.symbols.push_back(generated[j]);
    cut += lengths[generated[j]];
  }
  if (cut == prefix.size()) {
    out.cuts.push_back(prefix.size());
    out.covered = prefix.size();
  } else {
    out.truncated = true;
    out.covered = out.cuts.back();
  }
  return out;
}

std::vector<std::uint64_t> block_cuts(const Substitution& theta, std::span<const Symbol> fixed_point,
                                      unsigned k) {
  const auto lengths = theta.image_lengths(k);
  std::vector<std::uint64_t> cuts(fixed_point.size() + 1, 0);
  for (std::size_t j = 0; j < fixed_point.size(); ++j) {
    cuts[j + 1] = cuts[j] + lengths[fixed_point[j]];
  }
  return cuts;
}

namespace {

struct DisjointSets {
  std::vector<std::uint32_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0u);
  }
  std::uint32_t find(std::uint32_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

OrbitNumberResult orbit_number(const OrbitPrefix& x, const JumpFunction& p, std::size_t horizon) {
  const std::uint32_t big_m = p.max_jump();
  if (horizon < 4 * std::size_t{big_m}) {
    throw PreconditionError("orbit number horizon " + std::to_string(horizon) +
                            " must be at least 4 * max p = " + std::to_string(4 * big_m));
  }
  DisjointSets sets(horizon + 1);
  for (std::size_t t = 0; t <= horizon; ++t) {
    const std::size_t next = t + evaluate_jump(p, x, static_cast<std::int64_t>(t));
    if (next <= horizon) sets.unite(static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(next));
  }
  std::vector<std::uint32_t> root(horizon + 1);
  for (std::size_t t = 0; t <= horizon; ++t) root[t] = sets.find(static_cast<std::uint32_t>(t));

  // Sliding count of distinct classes over windows [w, w + M).
  std::vector<std::uint32_t> in_window(horizon + 1, 0);
  std::uint32_t distinct = 0;
  std::vector<std::uint32_t> counts;
  for (std::size_t t = 0; t <= horizon; ++t) {
    if (in_window[root[t]]++ == 0) ++distinct;
    if (t >= big_m && --in_window[root[t - big_m]] == 0) --distinct;
    if (t + 1 >= big_m) counts.push_back(distinct);
  }
  // counts[w] is the class count of [w, w + M).
  OrbitNumberResult out;
  out.horizon = horizon;
  out.max_jump = big_m;
  out.c = counts[big_m];
  const std::size_t tail_from = counts.size() / 2;
  for (std::size_t w = tail_from; w < counts.size(); ++w) {
    if (counts[w] != out.c) {
      throw InconclusiveError("orbit classes not stable: window at " + std::to_string(w) +
                              " meets " + std::to_string(counts[w]) + " classes, window at " +
                              std::to_string(big_m) + " meets " + std::to_string(out.c) +
                              " (horizon " + std::to_string(horizon) + ")");
    }
  }
  out.windows_checked = counts.size() - tail_from;
  return out;
}

OrbitNumberResult orbit_number(const Substitution& theta, const JumpFunction& p, Symbol seed,
                               std::size_t horizon, const Limits& limits) {
  return with_fixed_point(theta, seed, p.left(), horizon + p.right() + 1, limits,
                          [&](const OrbitPrefix& x) { return orbit_number(x, p, horizon); });
}

}  // namespace speeduplab
