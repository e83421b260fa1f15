#pragma once

#include <vector>

#include "ptopo/critical_points.hpp"

namespace ptopo {

/// One tracked extremum. Levels of appearance/disappearance bound its
/// lifetime l = l_d - l_a; disappeared == -1 while the track is alive.
struct ExtremumTrack {
  Index id = 0;
  Index vertex = -1;  // level-local id at the last observed level
  int appeared = 0;
  int disappeared = -1;
  std::vector<std::pair<int, Coords>> trajectory;  // (level, grid-0 coords)

  bool alive() const { return disappeared < 0; }
};

/// Heuristic correspondence of extrema between consecutive levels: bounded
/// integral lines from the neighbors of each previous extremum vote for its
/// successor; colliding tracks keep the oldest one alive.
class LifetimeTracker {
 public:
  LifetimeTracker(bool maxima_side, int l_max);

  /// Call once per level, in hierarchy order, after the state is updated.
  void observe(const ProgressiveState& state);

  const std::vector<ExtremumTrack>& tracks() const { return tracks_; }
  bool maxima_side() const { return maxima_side_; }
  Index alive_count() const;

 private:
  bool maxima_side_;
  int l_max_;
  int last_level_ = -1;
  std::vector<ExtremumTrack> tracks_;
  Index next_id_ = 0;
};

}  // namespace ptopo
