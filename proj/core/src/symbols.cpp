#include "speeduplab/symbols.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "speeduplab/error.hpp"

namespace speeduplab {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return (a > kSaturated - b) ? kSaturated : a + b;
}

using BoolMatrix = std::vector<std::vector<bool>>;

BoolMatrix bool_product(const BoolMatrix& a, const BoolMatrix& b) {
  const std::size_t n = a.size();
  BoolMatrix out(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (!a[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (b[k][j]) out[i][j] = true;
      }
    }
  }
  return out;
}

bool all_positive(const BoolMatrix& m) {
  return std::all_of(m.begin(), m.end(),
                     [](const auto& row) { return std::all_of(row.begin(), row.end(), [](bool v) { return v; }); });
}

void add_factors(std::span<const Symbol> w, std::size_t len, std::set<Word, WordLess>& out) {
  if (w.size() < len) return;
  for (std::size_t i = 0; i + len <= w.size(); ++i) {
    out.emplace(w.begin() + static_cast<std::ptrdiff_t>(i),
                w.begin() + static_cast<std::ptrdiff_t>(i + len));
  }
}

void require_primitive(const Substitution& theta) {
  if (!is_primitive(theta).primitive) {
    throw PreconditionError("language enumeration requires a primitive substitution");
  }
}

/// Least j with min_a |θ^j(a)| >= target.
unsigned power_for_min_length(const Substitution& theta, std::uint64_t target) {
  unsigned j = 0;
  std::vector<std::uint64_t> lens(theta.alphabet_size(), 1);
  while (*std::min_element(lens.begin(), lens.end()) < target) {
    ++j;
    lens = theta.image_lengths(j);
  }
  return j;
}

}  // namespace

std::string to_string(std::span<const Symbol> w) {
  std::ostringstream os;
  bool wide = std::any_of(w.begin(), w.end(), [](Symbol s) { return s > 9; });
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (wide && i) os << ' ';
    os << w[i];
  }
  return os.str();
}

std::uint64_t IncidenceMatrix::row_sum(Symbol a) const {
  std::uint64_t s = 0;
  for (std::size_t b = 0; b < n; ++b) s += counts[a * n + b];
  return s;
}

Substitution::Substitution(std::vector<Word> images) : images_(std::move(images)) {
  if (images_.empty()) throw DomainError("substitution needs a nonempty alphabet");
  for (std::size_t a = 0; a < images_.size(); ++a) {
    if (images_[a].empty()) {
      throw DomainError("image of symbol " + std::to_string(a) + " is empty");
    }
    check_word(images_[a]);
  }
}

const Word& Substitution::image(Symbol a) const {
  if (a >= images_.size()) {
    throw DomainError("symbol " + std::to_string(a) + " outside alphabet of size " +
                      std::to_string(images_.size()));
  }
  return images_[a];
}

void Substitution::check_word(std::span<const Symbol> w) const {
  for (Symbol s : w) {
    if (s >= images_.size()) {
      throw DomainError("symbol " + std::to_string(s) + " outside alphabet of size " +
                        std::to_string(images_.size()));
    }
  }
}

Word Substitution::apply(std::span<const Symbol> w, unsigned k) const {
  check_word(w);
  Word cur(w.begin(), w.end());
  for (unsigned step = 0; step < k; ++step) {
    Word next;
    std::size_t total = 0;
    for (Symbol s : cur) total += images_[s].size();
    next.reserve(total);
    for (Symbol s : cur) next.insert(next.end(), images_[s].begin(), images_[s].end());
    cur = std::move(next);
  }
  return cur;
}

Substitution Substitution::power(unsigned k) const {
  std::vector<Word> imgs;
  imgs.reserve(images_.size());
  for (Symbol a = 0; a < images_.size(); ++a) {
    Word seed{a};
    imgs.push_back(apply(seed, k));
  }
  return Substitution(std::move(imgs));
}

std::vector<std::uint64_t> Substitution::image_lengths(unsigned k) const {
  const std::size_t n = images_.size();
  std::vector<std::uint64_t> lens(n, 1);
  for (unsigned step = 0; step < k; ++step) {
    std::vector<std::uint64_t> next(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      for (Symbol s : images_[a]) next[a] = sat_add(next[a], lens[s]);
    }
    lens = std::move(next);
  }
  return lens;
}

IncidenceMatrix Substitution::incidence() const {
  IncidenceMatrix m;
  m.n = images_.size();
  m.counts.assign(m.n * m.n, 0);
  for (std::size_t a = 0; a < m.n; ++a) {
    for (Symbol b : images_[a]) ++m.counts[a * m.n + b];
  }
  return m;
}

PrimitivityResult is_primitive(const Substitution& theta) {
  const std::size_t n = theta.alphabet_size();
  const auto inc = theta.incidence();
  BoolMatrix m(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) m[a][b] = inc.at(static_cast<Symbol>(a), static_cast<Symbol>(b)) > 0;
  }

  PrimitivityResult res;
  // Wielandt: a primitive n×n matrix has M^k > 0 for k = (n-1)² + 1.
  const std::size_t bound = (n - 1) * (n - 1) + 1;
  BoolMatrix power = m;
  for (std::size_t k = 1; k <= bound; ++k) {
    if (all_positive(power)) {
      // For n >= 2 positivity forces |θ^k(a)| >= n >= 2, hence growth.
      if (n == 1 && theta.image(0).size() < 2) {
        res.failure = PrimitivityResult::Failure::NoGrowth;
        res.from = 0;
        return res;
      }
      res.primitive = true;
      res.power = static_cast<unsigned>(k);
      return res;
    }
    power = bool_product(power, m);
  }

  // Not primitive: find an unreachable pair, else report the cyclicity index.
  BoolMatrix reach = m;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (reach[k][j]) reach[i][j] = true;
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!reach[a][b]) {
        res.failure = PrimitivityResult::Failure::Unreachable;
        res.from = static_cast<Symbol>(a);
        res.to = static_cast<Symbol>(b);
        return res;
      }
    }
  }
  // Irreducible: period = gcd over edges (u,v) of level(u) + 1 - level(v).
  std::vector<long> level(n, -1);
  std::vector<std::size_t> queue{0};
  level[0] = 0;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    std::size_t u = queue[qi];
    for (std::size_t v = 0; v < n; ++v) {
      if (m[u][v] && level[v] < 0) {
        level[v] = level[u] + 1;
        queue.push_back(v);
      }
    }
  }
  long g = 0;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (m[u][v]) g = std::gcd(g, std::labs(level[u] + 1 - level[v]));
    }
  }
  res.failure = PrimitivityResult::Failure::Imprimitive;
  res.period = static_cast<unsigned>(g);
  return res;
}

ProperResult is_proper(const Substitution& theta, std::optional<unsigned> max_power) {
  const std::size_t n = theta.alphabet_size();
  const unsigned kmax = max_power.value_or(static_cast<unsigned>(n * n));
  // first_k(a) = f^k(a) with f(a) = first symbol of θ(a); likewise for last.
  std::vector<Symbol> first(n), last(n);
  for (Symbol a = 0; a < n; ++a) {
    first[a] = a;
    last[a] = a;
  }
  ProperResult res;
  res.searched = kmax;
  for (unsigned k = 1; k <= kmax; ++k) {
    for (Symbol a = 0; a < n; ++a) {
      first[a] = theta.image(first[a]).front();
      last[a] = theta.image(last[a]).back();
    }
    const bool const_first = std::all_of(first.begin(), first.end(), [&](Symbol s) { return s == first[0]; });
    const bool const_last = std::all_of(last.begin(), last.end(), [&](Symbol s) { return s == last[0]; });
    if (const_first && const_last) {
      res.proper = true;
      res.left = first[0];
      res.right = last[0];
      res.power = k;
      return res;
    }
  }
  return res;
}

std::vector<Word> two_factors(const Substitution& theta) {
  std::set<Word, WordLess> found;
  for (const auto& img : theta.images()) add_factors(img, 2, found);
  // Closure: 2-factors of θ(a)θ(b) for every known factor ab.
  std::vector<Word> frontier(found.begin(), found.end());
  while (!frontier.empty()) {
    std::vector<Word> next;
    for (const auto& ab : frontier) {
      const Word img = theta.apply(ab, 1);
      std::set<Word, WordLess> local;
      add_factors(img, 2, local);
      for (auto& w : local) {
        if (found.insert(w).second) next.push_back(w);
      }
    }
    frontier = std::move(next);
  }
  return {found.begin(), found.end()};
}

namespace {

std::vector<std::set<Word, WordLess>> factor_sets(const Substitution& theta, std::size_t max_len) {
  require_primitive(theta);
  std::vector<std::set<Word, WordLess>> sets(max_len + 1);
  if (max_len == 0) return sets;
  for (Symbol a = 0; a < theta.alphabet_size(); ++a) sets[1].insert(Word{a});
  if (max_len == 1) return sets;
  // Every length-len factor with blocks of length >= len-1 straddles at most
  // two consecutive θ^j-blocks, whose symbols form a 2-factor.
  const unsigned j = power_for_min_length(theta, max_len - 1);
  for (const auto& u : two_factors(theta)) {
    const Word img = theta.apply(u, j);
    for (std::size_t len = 2; len <= max_len; ++len) add_factors(img, len, sets[len]);
  }
  return sets;
}

}  // namespace

std::vector<Word> language(const Substitution& theta, std::size_t len) {
  if (len == 0) return {Word{}};
  auto sets = factor_sets(theta, len);
  return {sets[len].begin(), sets[len].end()};
}

std::vector<std::size_t> word_complexity(const Substitution& theta, std::size_t max_len) {
  auto sets = factor_sets(theta, max_len);
  std::vector<std::size_t> out;
  out.reserve(max_len);
  for (std::size_t len = 1; len <= max_len; ++len) out.push_back(sets[len].size());
  return out;
}

AperiodicityVerdict is_aperiodic_up_to(const Substitution& theta, std::size_t horizon) {
  AperiodicityVerdict v;
  v.horizon = horizon;
  v.counts = word_complexity(theta, horizon + 1);
  for (std::size_t n = 1; n <= horizon; ++n) {
    if (v.counts[n - 1] >= v.counts[n]) {
      v.kind = AperiodicityVerdict::Kind::Periodic;
      v.collapse_at = n;
      return v;
    }
  }
  v.kind = AperiodicityVerdict::Kind::AperiodicCertified;
  return v;
}

Word fixed_point_prefix(const Substitution& theta, Symbol seed, std::size_t len) {
  const Word& img = theta.image(seed);
  if (img.front() != seed) {
    throw PreconditionError("theta(" + std::to_string(seed) + ") = " + to_string(img) +
                            " does not begin with " + std::to_string(seed));
  }
  Word cur{seed};
  if (len <= 1) {
    cur.resize(len);
    return cur;
  }
  // θ^k(seed) is a prefix of θ^{k+1}(seed); grow only the needed prefix.
  while (cur.size() < len) {
    Word next;
    next.reserve(std::min<std::size_t>(len, cur.size() * img.size() + 16));
    for (Symbol s : cur) {
      const Word& part = theta.image(s);
      next.insert(next.end(), part.begin(), part.end());
      if (next.size() >= len) break;
    }
    if (next.size() <= cur.size()) {
      throw PreconditionError("fixed point from seed " + std::to_string(seed) + " does not grow");
    }
    cur = std::move(next);
  }
  cur.resize(len);
  return cur;
}

}  // namespace speeduplab
