#pragma once

// Greedy S-path labeling of a single Kakutani-Rokhlin column, shared by the
// substitution and odometer pipelines.

#include <cstdint>
#include <span>
#include <vector>

#include "speeduplab/permutation.hpp"

namespace speeduplab {

struct ColumnLabeling {
  /// labels[j] for floors j = 0..height-1.
  std::vector<Label> labels;
  /// Number of labels used (= number of S-paths through the column).
  std::size_t count = 0;
  /// exit_floor[l]: the highest floor labeled l; its jump leaves the column.
  std::vector<std::size_t> exit_floor;
  /// landing[l]: height reached in the next column from exit_floor[l].
  std::vector<std::uint64_t> landing;
};

/// jumps[j] = p on floor j. Floor 0 gets label 0 and the label follows
/// j -> j + jumps[j] inside the column; the lowest unlabeled floor then takes
/// the next label. InconsistencyError if a path runs into a labeled floor.
ColumnLabeling label_column(std::span<const std::uint32_t> jumps);

}  // namespace speeduplab
