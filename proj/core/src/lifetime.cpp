#include "ptopo/lifetime.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace ptopo {

LifetimeTracker::LifetimeTracker(bool maxima_side, int l_max)
    : maxima_side_(maxima_side), l_max_(l_max) {
  if (l_max < 0) throw std::invalid_argument("l_max must be >= 0");
}

Index LifetimeTracker::alive_count() const {
  Index n = 0;
  for (const auto& t : tracks_)
    if (t.alive()) ++n;
  return n;
}

void LifetimeTracker::observe(const ProgressiveState& state) {
  const HierarchyDescriptor& desc = state.desc();
  const int level = state.level();
  const std::vector<Index> extrema = state.extrema(maxima_side_);

  const auto record = [&](ExtremumTrack& t, Index v) {
    t.vertex = v;
    t.trajectory.emplace_back(
        level, to_grid0_coords(desc, level, coords_of(desc, level, v)));
  };

  if (last_level_ < 0) {
    for (Index v : extrema) {
      ExtremumTrack t;
      t.id = next_id_++;
      t.appeared = level;
      record(t, v);
      tracks_.push_back(std::move(t));
    }
    last_level_ = level;
    return;
  }
  if (level != last_level_ + 1)
    throw std::logic_error("levels must be observed consecutively");

  const auto better = [&](Index a, Index b) {  // a preferred over b
    return maxima_side_ ? state.lower_than(b, a) : state.lower_than(a, b);
  };

  // bounded integral line: highest-neighbor steps (lowest for minima),
  // at most l_max edges; returns the extremum reached, or -1
  std::array<Index, kMaxNeighbors> nbr{};
  const auto ascend = [&](Index from) -> Index {
    Index cur = from;
    for (int steps = 0; steps <= l_max_; ++steps) {
      const CritKind want =
          maxima_side_ ? CritKind::Maximum : CritKind::Minimum;
      if (state.type(cur).kind == want) return cur;
      if (steps == l_max_) return -1;
      const int cnt = neighbors(desc, level, cur, nbr);
      Index next = cur;
      for (int k = 0; k < cnt; ++k)
        if (better(nbr[k], next)) next = nbr[k];
      if (next == cur) return -1;
      cur = next;
    }
    return -1;
  };

  struct Claim {
    std::size_t track;
    Index mapped;  // the track's vertex at this level
  };
  std::unordered_map<Index, std::vector<Claim>> claimed;  // target extremum

  for (std::size_t ti = 0; ti < tracks_.size(); ++ti) {
    ExtremumTrack& t = tracks_[ti];
    if (!t.alive()) continue;
    // old vertices persist through the hierarchy
    const Coords prev = coords_of(desc, level - 1, t.vertex);
    Coords here{};
    for (int a = 0; a < 3; ++a)
      here[a] = std::min(2 * prev[a], desc.levels[level].cells[a]);
    const Index v = index_of(desc, level, here);

    Index best = -1;
    if (l_max_ > 0) {
      const int cnt = neighbors(desc, level, v, nbr);
      std::array<Index, kMaxNeighbors> seeds{};
      for (int k = 0; k < cnt; ++k) seeds[k] = nbr[k];
      for (int k = 0; k < cnt; ++k) {
        const Index m = ascend(seeds[k]);
        if (m >= 0 && (best < 0 || better(m, best))) best = m;
      }
    }
    if (best < 0)
      t.disappeared = level;
    else
      claimed[best].push_back(Claim{ti, v});
  }

  // collisions: the oldest track (minimal l_a) survives; ties break by the
  // grid-0 index of the previous extremum
  std::unordered_map<Index, std::size_t> extremum_pos;
  for (std::size_t i = 0; i < extrema.size(); ++i) extremum_pos[extrema[i]] = i;
  std::vector<std::uint8_t> matched(extrema.size(), 0);

  for (auto& [target, claims] : claimed) {
    const Claim* winner = &claims[0];
    for (const Claim& c : claims) {
      const int la_c = tracks_[c.track].appeared;
      const int la_w = tracks_[winner->track].appeared;
      if (la_c < la_w ||
          (la_c == la_w && state.g0(c.mapped) < state.g0(winner->mapped)))
        winner = &c;
    }
    for (const Claim& c : claims)
      if (c.track != winner->track) tracks_[c.track].disappeared = level;
    record(tracks_[winner->track], target);
    matched[extremum_pos.at(target)] = 1;
  }

  // unmatched extrema appear at this level
  for (std::size_t i = 0; i < extrema.size(); ++i) {
    if (matched[i]) continue;
    ExtremumTrack t;
    t.id = next_id_++;
    t.appeared = level;
    record(t, extrema[i]);
    tracks_.push_back(std::move(t));
  }

  last_level_ = level;
}

}  // namespace ptopo
