#include "speeduplab/permutation.hpp"

#include <numeric>
#include <sstream>

#include "speeduplab/error.hpp"

namespace speeduplab {

Permutation::Permutation(std::vector<Label> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (Label l : image_) {
    if (l >= image_.size() || seen[l]) {
      throw DomainError("permutation image is not a bijection");
    }
    seen[l] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<Label> img(n);
  std::iota(img.begin(), img.end(), Label{0});
  return Permutation(std::move(img));
}

Permutation Permutation::transposition(std::size_t n, Label a, Label b) {
  auto p = identity(n);
  std::swap(p.image_.at(a), p.image_.at(b));
  return p;
}

Permutation Permutation::rotation(std::size_t n) {
  std::vector<Label> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Label>((i + 1) % n);
  return Permutation(std::move(img));
}

Permutation Permutation::after(const Permutation& first) const {
  if (first.size() != size()) throw DomainError("composing permutations of different sizes");
  std::vector<Label> img(size());
  for (std::size_t i = 0; i < size(); ++i) img[i] = image_[first.image_[i]];
  Permutation out;
  out.image_ = std::move(img);
  return out;
}

Permutation Permutation::inverse() const {
  std::vector<Label> img(size());
  for (std::size_t i = 0; i < size(); ++i) img[image_[i]] = static_cast<Label>(i);
  Permutation out;
  out.image_ = std::move(img);
  return out;
}

Permutation Permutation::pow(std::uint64_t k) const {
  Permutation result = identity(size());
  Permutation base = *this;
  while (k > 0) {
    if (k & 1U) result = base.after(result);
    base = base.after(base);
    k >>= 1U;
  }
  return result;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (image_[i] != i) return false;
  }
  return true;
}

std::vector<std::vector<Label>> Permutation::cycles() const {
  std::vector<std::vector<Label>> out;
  std::vector<bool> seen(size(), false);
  for (std::size_t start = 0; start < size(); ++start) {
    if (seen[start]) continue;
    std::vector<Label> cyc;
    for (Label l = static_cast<Label>(start); !seen[l]; l = image_[l]) {
      seen[l] = true;
      cyc.push_back(l);
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

bool Permutation::is_cyclic() const {
  if (size() == 0) return false;
  std::size_t len = 0;
  Label l = 0;
  do {
    l = image_[l];
    ++len;
  } while (l != 0);
  return len == size();
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  bool any = false;
  for (const auto& cyc : cycles()) {
    if (cyc.size() < 2) continue;
    any = true;
    os << '(';
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      if (i) os << ' ';
      os << cyc[i];
    }
    os << ')';
  }
  return any ? os.str() : "id";
}

std::string PermutationTuple::to_string() const {
  std::ostringstream os;
  os << "<";
  for (std::size_t i = 0; i < perms.size(); ++i) {
    if (i) os << ", ";
    os << perms[i].to_string();
  }
  os << ">";
  return os.str();
}

}  // namespace speeduplab
