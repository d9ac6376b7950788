#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace speeduplab {

using Label = std::uint32_t;

/// A permutation of {0, ..., n-1}, stored as its image table.
class Permutation {
 public:
  Permutation() = default;
  /// Throws DomainError unless `image` is a bijection of {0..n-1}.
  explicit Permutation(std::vector<Label> image);

  static Permutation identity(std::size_t n);
  static Permutation transposition(std::size_t n, Label a, Label b);
  /// The rotation l -> l+1 mod n.
  static Permutation rotation(std::size_t n);

  std::size_t size() const noexcept { return image_.size(); }
  Label operator()(Label l) const { return image_.at(l); }
  const std::vector<Label>& image() const noexcept { return image_; }

  /// (this ∘ first): apply `first`, then this.
  Permutation after(const Permutation& first) const;
  Permutation inverse() const;
  Permutation pow(std::uint64_t k) const;

  bool is_identity() const;
  /// True iff the permutation is a single n-cycle (n = 1 counts as cyclic).
  bool is_cyclic() const;
  std::vector<std::vector<Label>> cycles() const;

  /// Cycle notation with trivial cycles dropped: "id", "(0 1)", "(0 2 1)(3 4)".
  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Label> image_;
};

/// One permutation per alphabet symbol, all on the same label set.
struct PermutationTuple {
  std::vector<Permutation> perms;

  std::size_t labels() const { return perms.empty() ? 0 : perms.front().size(); }
  std::string to_string() const;

  friend bool operator==(const PermutationTuple&, const PermutationTuple&) = default;
  friend auto operator<=>(const PermutationTuple&, const PermutationTuple&) = default;
};

}  // namespace speeduplab
