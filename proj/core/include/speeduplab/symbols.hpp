#pragma once

// Alphabets, words and substitutions, together with the classical decision
// procedures on substitutions: primitivity, properness, aperiodicity and
// enumeration of the language.

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace speeduplab {

/// Symbols are small integers 0..n-1 of an alphabet of size n.
using Symbol = std::uint32_t;
/// Contiguous symbol sequence; random access is relied upon for windows.
using Word = std::vector<Symbol>;

/// Lexicographic comparison usable with both Word and std::span keys.
struct WordLess {
  using is_transparent = void;
  template <class A, class B>
  bool operator()(const A& a, const B& b) const {
    return std::lexicographical_compare(std::begin(a), std::end(a), std::begin(b), std::end(b));
  }
};

std::string to_string(std::span<const Symbol> w);

/// Entry (a, b) = number of occurrences of b in θ(a).
struct IncidenceMatrix {
  std::size_t n = 0;
  std::vector<std::uint64_t> counts;

  std::uint64_t at(Symbol a, Symbol b) const { return counts[a * n + b]; }
  std::uint64_t row_sum(Symbol a) const;
};

class Substitution {
 public:
  /// images[a] = θ(a). Throws DomainError on empty images or symbols outside
  /// the alphabet {0..images.size()-1}.
  explicit Substitution(std::vector<Word> images);

  std::size_t alphabet_size() const noexcept { return images_.size(); }
  const Word& image(Symbol a) const;
  const std::vector<Word>& images() const noexcept { return images_; }

  /// θ^k(w). k = 0 returns w unchanged.
  Word apply(std::span<const Symbol> w, unsigned k = 1) const;
  /// θ^k as a substitution in its own right.
  Substitution power(unsigned k) const;

  /// |θ^k(a)| for every a, saturating at UINT64_MAX.
  std::vector<std::uint64_t> image_lengths(unsigned k) const;

  IncidenceMatrix incidence() const;

  void check_word(std::span<const Symbol> w) const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::vector<Word> images_;
};

struct PrimitivityResult {
  enum class Failure { None, Unreachable, Imprimitive, NoGrowth };

  bool primitive = false;
  /// Least k >= 1 with M^k entrywise positive (0 when not primitive).
  unsigned power = 0;
  Failure failure = Failure::None;
  /// For Unreachable: `to` never occurs in θ^k(from). For NoGrowth: `from`.
  Symbol from = 0;
  Symbol to = 0;
  /// For Imprimitive: the cyclicity index of the irreducible matrix.
  unsigned period = 0;
};

PrimitivityResult is_primitive(const Substitution& theta);

struct ProperResult {
  bool proper = false;
  Symbol left = 0;
  Symbol right = 0;
  /// Least k with all θ^k(a) starting with `left` and ending with `right`.
  unsigned power = 0;
  /// Largest power examined (n² by default).
  unsigned searched = 0;
};

/// Searches k = 1..max_power (default n²) for common first/last symbols.
ProperResult is_proper(const Substitution& theta, std::optional<unsigned> max_power = std::nullopt);

/// Length-2 factors of the language of X^θ, sorted.
std::vector<Word> two_factors(const Substitution& theta);

/// W_len: all length-len words of the language of X^θ, sorted
/// lexicographically. Requires θ primitive (PreconditionError otherwise).
std::vector<Word> language(const Substitution& theta, std::size_t len);

/// |W_1|, ..., |W_max_len| in one pass.
std::vector<std::size_t> word_complexity(const Substitution& theta, std::size_t max_len);

struct AperiodicityVerdict {
  enum class Kind { AperiodicCertified, Periodic };

  Kind kind = Kind::AperiodicCertified;
  std::size_t horizon = 0;
  /// counts[n-1] = |W_n| for n = 1..horizon+1.
  std::vector<std::size_t> counts;
  /// For Periodic: the first n with |W_n| >= |W_{n+1}|.
  std::size_t collapse_at = 0;
};

/// Horizon-bounded aperiodicity certificate: strict growth of |W_n| for all
/// n <= horizon, or a witnessed collapse (which forces X finite).
AperiodicityVerdict is_aperiodic_up_to(const Substitution& theta, std::size_t horizon);

/// First `len` symbols of lim θ^k(seed). Requires θ(seed) to begin with seed.
Word fixed_point_prefix(const Substitution& theta, Symbol seed, std::size_t len);

}  // namespace speeduplab
