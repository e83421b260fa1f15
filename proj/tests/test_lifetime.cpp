#include <doctest.h>

#include "ptopo/lifetime.hpp"
#include "ptopo/synthetic.hpp"

using namespace ptopo;

namespace {

ScalarField gaussian_bump(const Coords& samples) {
  ScalarField f;
  f.samples = samples;
  f.values.resize(f.vertex_count());
  Index i = 0;
  for (Index z = 0; z < samples[2]; ++z)
    for (Index y = 0; y < samples[1]; ++y)
      for (Index x = 0; x < samples[0]; ++x) {
        const double px = double(x) / (samples[0] - 1) - 0.5;
        const double py = double(y) / (samples[1] - 1) - 0.5;
        f.values[i++] = std::exp(-(px * px + py * py) / 0.02);
      }
  return f;
}

}  // namespace

TEST_CASE("a single bump is tracked through every level") {
  const ScalarField f = gaussian_bump({17, 17, 1});
  const auto d = build_hierarchy({16, 16, 0}, 2);
  ProgressiveState state(d, f, 0, 1);
  LifetimeTracker tracker(true, 10);
  tracker.observe(state);
  while (state.level() < d.finest_level()) {
    state.advance_level(1);
    tracker.observe(state);
  }
  // conservation at the final level
  CHECK(tracker.alive_count() == state.count_of(CritKind::Maximum));
  // the dominant maximum lives from level 0 to the end
  bool found = false;
  for (const auto& t : tracker.tracks())
    if (t.appeared == 0 && t.alive() &&
        static_cast<int>(t.trajectory.size()) == d.level_count())
      found = true;
  CHECK(found);
}

TEST_CASE("zero-length cap kills every track") {
  const ScalarField f = gaussian_bump({9, 9, 1});
  const auto d = build_hierarchy({8, 8, 0}, 2);
  ProgressiveState state(d, f, 0, 1);
  LifetimeTracker tracker(true, 0);
  tracker.observe(state);
  const Index initial = tracker.alive_count();
  CHECK(initial >= 1);
  state.advance_level(1);
  tracker.observe(state);
  for (const auto& t : tracker.tracks())
    if (t.appeared == 0) CHECK(t.disappeared == 1);
  // current maxima re-appear as fresh tracks
  CHECK(tracker.alive_count() == state.count_of(CritKind::Maximum));
}

TEST_CASE("colliding tracks keep the oldest") {
  // two maxima at one level merge into a single one at the next level:
  // engineered by a field whose coarse level aliases two bumps
  ScalarField f;
  f.samples = {9, 3, 1};
  f.values.resize(27, 0.0);
  const auto at = [&](Index x, Index y) -> double& {
    return f.values[x + 9 * y];
  };
  // a tall bump at x=4 visible at every level; a second bump at x=6 that is
  // a maximum at the middle level (x even) but regular at the finest level
  for (Index y = 0; y < 3; ++y) {
    at(0, y) = 0;
    at(1, y) = 1;
    at(2, y) = 2;
    at(3, y) = 3;
    at(4, y) = 10;
    at(5, y) = 3.5;
    at(6, y) = 4;
    at(7, y) = 4.5;
    at(8, y) = 2;
  }
  const auto d = build_hierarchy({8, 2, 0}, 2);
  ProgressiveState state(d, f, 0, 1);
  LifetimeTracker tracker(true, 10);
  tracker.observe(state);
  while (state.level() < d.finest_level()) {
    state.advance_level(1);
    tracker.observe(state);
  }
  CHECK(tracker.alive_count() == state.count_of(CritKind::Maximum));
  // at least one track died in a collision while its target survived
  bool died = false;
  for (const auto& t : tracker.tracks())
    if (!t.alive()) died = true;
  CHECK(died);
  // the oldest surviving track is the dominant bump
  const ExtremumTrack* oldest = nullptr;
  for (const auto& t : tracker.tracks())
    if (t.alive() && (!oldest || t.appeared < oldest->appeared)) oldest = &t;
  REQUIRE(oldest);
  CHECK(oldest->trajectory.back().second[0] == 4);
}

TEST_CASE("conservation holds on noisy data at every level") {
  const ScalarField f = make_random({17, 17, 1}, 8);
  const auto d = build_hierarchy({16, 16, 0}, 2);
  ProgressiveState state(d, f, 0, 1);
  LifetimeTracker maxima(true, 10);
  LifetimeTracker minima(false, 10);
  maxima.observe(state);
  minima.observe(state);
  CHECK(maxima.alive_count() == state.count_of(CritKind::Maximum));
  CHECK(minima.alive_count() == state.count_of(CritKind::Minimum));
  while (state.level() < d.finest_level()) {
    state.advance_level(1);
    maxima.observe(state);
    minima.observe(state);
    CHECK(maxima.alive_count() == state.count_of(CritKind::Maximum));
    CHECK(minima.alive_count() == state.count_of(CritKind::Minimum));
  }
  for (const auto& t : maxima.tracks()) {
    if (!t.alive()) CHECK(t.disappeared > t.appeared);
    for (std::size_t i = 1; i < t.trajectory.size(); ++i)
      CHECK(t.trajectory[i].first == t.trajectory[i - 1].first + 1);
  }
}
