#include "ptopo/link_connectivity.hpp"

namespace ptopo {

void PolarizedLink::init(const LinkPattern& pattern, std::uint16_t polarity) {
  pattern_ = &pattern;
  polarity_ = polarity;
  active_ = 0;
  for (int e = 0; e < pattern.edge_count; ++e) {
    const auto [a, b] = pattern.edges[e];
    const bool pa = polarity_ >> a & 1, pb = polarity_ >> b & 1;
    if (pa == pb) active_ |= std::uint64_t{1} << e;
  }
  recount();
}

void PolarizedLink::flip_and_update(std::uint16_t flips) {
  polarity_ ^= flips;
  std::uint64_t touched = 0;
  for (int k = 0; k < pattern_->size; ++k)
    if (flips >> k & 1) touched |= pattern_->edges_at[k];
  // remove-then-reinsert per flipped endpoint; an edge with both ends
  // flipped is processed twice, which nets out to its original status,
  // i.e. the fixed point is "active iff the ends now agree"
  for (std::uint64_t m = touched; m;) {
    const int e = __builtin_ctzll(m);
    m &= m - 1;
    const auto [a, b] = pattern_->edges[e];
    const bool pa = polarity_ >> a & 1, pb = polarity_ >> b & 1;
    const std::uint64_t bit = std::uint64_t{1} << e;
    if (pa == pb)
      active_ |= bit;
    else
      active_ &= ~bit;
  }
  recount();
}

void PolarizedLink::recount() {
  // adjacency masks from the active edge set, then BFS per polarity side
  std::uint16_t adj[kMaxNeighbors] = {};
  for (std::uint64_t m = active_; m;) {
    const int e = __builtin_ctzll(m);
    m &= m - 1;
    const auto [a, b] = pattern_->edges[e];
    adj[a] |= std::uint16_t{1} << b;
    adj[b] |= std::uint16_t{1} << a;
  }
  const std::uint16_t all =
      pattern_->size >= 16 ? 0xffff
                           : static_cast<std::uint16_t>((1u << pattern_->size) - 1);
  lower_ = upper_ = 0;
  for (int side = 0; side < 2; ++side) {
    const std::uint16_t members =
        side ? static_cast<std::uint16_t>(polarity_ & all)
             : static_cast<std::uint16_t>(~polarity_ & all);
    std::uint16_t seen = 0;
    int count = 0;
    for (std::uint16_t todo = members; todo;) {
      const int s = __builtin_ctz(todo);
      todo &= todo - 1;
      if (seen >> s & 1) continue;
      ++count;
      std::uint16_t frontier = std::uint16_t{1} << s;
      while (frontier) {
        seen |= frontier;
        std::uint16_t next = 0;
        for (std::uint16_t f = frontier; f;) {
          const int k = __builtin_ctz(f);
          f &= f - 1;
          next |= adj[k];
        }
        frontier = next & members & ~seen;
      }
    }
    if (side)
      upper_ = static_cast<std::uint8_t>(count);
    else
      lower_ = static_cast<std::uint8_t>(count);
  }
}

std::vector<std::uint16_t> PolarizedLink::component_masks(bool upper) const {
  std::uint16_t adj[kMaxNeighbors] = {};
  for (std::uint64_t m = active_; m;) {
    const int e = __builtin_ctzll(m);
    m &= m - 1;
    const auto [a, b] = pattern_->edges[e];
    adj[a] |= std::uint16_t{1} << b;
    adj[b] |= std::uint16_t{1} << a;
  }
  const std::uint16_t all =
      pattern_->size >= 16 ? 0xffff
                           : static_cast<std::uint16_t>((1u << pattern_->size) - 1);
  const std::uint16_t members =
      upper ? static_cast<std::uint16_t>(polarity_ & all)
            : static_cast<std::uint16_t>(~polarity_ & all);
  std::vector<std::uint16_t> out;
  std::uint16_t seen = 0;
  for (std::uint16_t todo = members; todo;) {
    const int s = __builtin_ctz(todo);
    todo &= todo - 1;
    if (seen >> s & 1) continue;
    std::uint16_t comp = 0;
    std::uint16_t frontier = std::uint16_t{1} << s;
    while (frontier) {
      comp |= frontier;
      seen |= frontier;
      std::uint16_t next = 0;
      for (std::uint16_t f = frontier; f;) {
        const int k = __builtin_ctz(f);
        f &= f - 1;
        next |= adj[k];
      }
      frontier = next & members & ~seen;
    }
    out.push_back(comp);
  }
  return out;
}

}  // namespace ptopo
