#include "speeduplab/kr_labeling.hpp"

#include <limits>
#include <string>

#include "speeduplab/error.hpp"

namespace speeduplab {

ColumnLabeling label_column(std::span<const std::uint32_t> jumps) {
  constexpr Label kUnset = std::numeric_limits<Label>::max();
  const std::size_t height = jumps.size();
  ColumnLabeling out;
  out.labels.assign(height, kUnset);
  for (std::size_t start = 0; start < height; ++start) {
    if (out.labels[start] != kUnset) continue;
    const auto label = static_cast<Label>(out.count++);
    std::size_t j = start;
    for (;;) {
      out.labels[j] = label;
      if (jumps[j] == 0) throw DomainError("jump value 0 at floor " + std::to_string(j));
      const std::size_t next = j + jumps[j];
      if (next >= height) {
        out.exit_floor.push_back(j);
        out.landing.push_back(next - height);
        break;
      }
      if (out.labels[next] != kUnset) {
        throw InconsistencyError("S-path with label " + std::to_string(label) + " from floor " +
                                 std::to_string(j) + " reaches floor " + std::to_string(next) +
                                 ", already labeled " + std::to_string(out.labels[next]));
      }
      j = next;
    }
  }
  return out;
}

}  // namespace speeduplab
