#pragma once

#include <cstdint>
#include <vector>

#include "ptopo/grid_hierarchy.hpp"

namespace ptopo {

/// Connected components of the lower and upper link of one vertex, under
/// polarity flips. An edge of the link is active iff both of its ends have
/// the same polarity; flipping a neighbor inserts or removes exactly the
/// edges incident to it. Links have at most 14 vertices, so components are
/// recounted over bitmasks instead of a pointer-based dynamic tree; the
/// insert/delete/count contract is the same and is checked against a BFS
/// oracle in the tests.
class PolarizedLink {
 public:
  PolarizedLink() = default;

  /// polarity bit k set = local neighbor k is in the upper link.
  void init(const LinkPattern& pattern, std::uint16_t polarity);

  /// Toggle the polarity of the flipped neighbors and update the active
  /// edge set: an edge incident to a flipped neighbor is removed if it was
  /// present, and inserted if its ends now agree.
  void flip_and_update(std::uint16_t flips);

  int lower_components() const { return lower_; }
  int upper_components() const { return upper_; }
  std::uint16_t polarity() const { return polarity_; }
  std::uint64_t active_edges() const { return active_; }
  const LinkPattern* pattern() const { return pattern_; }
  bool initialized() const { return pattern_ != nullptr; }

  /// Components of one side as bitmasks of local neighbor indices.
  std::vector<std::uint16_t> component_masks(bool upper) const;

 private:
  void recount();

  const LinkPattern* pattern_ = nullptr;
  std::uint64_t active_ = 0;
  std::uint16_t polarity_ = 0;
  std::uint8_t lower_ = 0, upper_ = 0;
};

}  // namespace ptopo
