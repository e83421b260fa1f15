#include "ptopo/grid_hierarchy.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ptopo {

namespace {

std::array<Coords, kMaxNeighbors> make_offsets_3d() {
  std::array<Coords, kMaxNeighbors> out{};
  int n = 0;
  for (Index dx = -1; dx <= 1; ++dx)
    for (Index dy = -1; dy <= 1; ++dy)
      for (Index dz = -1; dz <= 1; ++dz) {
        if (dx == 0 && dy == 0 && dz == 0) continue;
        const bool pos = dx >= 0 && dy >= 0 && dz >= 0;
        const bool neg = dx <= 0 && dy <= 0 && dz <= 0;
        if (pos || neg) out[n++] = Coords{dx, dy, dz};
      }
  return out;
}

bool is01(const Coords& c) {
  bool nz = false;
  for (Index x : c) {
    if (x != 0 && x != 1) return false;
    nz |= x != 0;
  }
  return nz;
}

// A triple of vertices spans a triangle of the Kuhn triangulation iff it can
// be ordered into a monotone chain contained in one unit cube.
bool is_link_edge(const Coords& u, const Coords& w) {
  const Coords z{0, 0, 0};
  const std::array<std::array<Coords, 3>, 6> orders{{
      {z, u, w}, {z, w, u}, {u, z, w}, {w, z, u}, {u, w, z}, {w, u, z}}};
  for (const auto& o : orders) {
    Coords d1{}, d2{}, tot{};
    for (int a = 0; a < 3; ++a) {
      d1[a] = o[1][a] - o[0][a];
      d2[a] = o[2][a] - o[1][a];
      tot[a] = d1[a] + d2[a];
    }
    if (!is01(d1) || !is01(d2)) continue;
    if (std::all_of(tot.begin(), tot.end(),
                    [](Index x) { return x == 0 || x == 1; }))
      return true;
  }
  return false;
}

std::unique_ptr<LinkPattern> make_pattern(std::uint16_t mask, int dimension) {
  auto p = std::make_unique<LinkPattern>();
  const int total = dimension == 2 ? 6 : kMaxNeighbors;
  std::array<int, kMaxNeighbors> local{};
  local.fill(-1);
  for (int k = 0; k < total; ++k) {
    if (mask & (std::uint16_t{1} << k)) {
      local[k] = p->size;
      p->offset_id[p->size] = static_cast<std::uint8_t>(k);
      ++p->size;
    }
  }
  const auto offset_at = [&](int k) -> Coords {
    return dimension == 2 ? neighbor_offsets_2d()[k] : neighbor_offsets_3d()[k];
  };
  for (int a = 0; a < total; ++a) {
    if (local[a] < 0) continue;
    for (int b = a + 1; b < total; ++b) {
      if (local[b] < 0) continue;
      if (!is_link_edge(offset_at(a), offset_at(b))) continue;
      const int e = p->edge_count++;
      p->edges[e] = {static_cast<std::uint8_t>(local[a]),
                     static_cast<std::uint8_t>(local[b])};
      p->edges_at[local[a]] |= std::uint64_t{1} << e;
      p->edges_at[local[b]] |= std::uint64_t{1} << e;
    }
  }
  return p;
}

}  // namespace

const std::array<Coords, kMaxNeighbors>& neighbor_offsets_3d() {
  static const std::array<Coords, kMaxNeighbors> offs = make_offsets_3d();
  return offs;
}

const std::array<Coords, 6>& neighbor_offsets_2d() {
  static const std::array<Coords, 6> offs = [] {
    std::array<Coords, 6> out{};
    int n = 0;
    for (const auto& d : neighbor_offsets_3d())
      if (d[2] == 0) out[n++] = d;
    return out;
  }();
  return offs;
}

const LinkPattern& HierarchyDescriptor::pattern_for_mask(std::uint16_t mask) const {
  auto it = patterns.find(mask);
  if (it == patterns.end())
    throw std::logic_error("link pattern not precomputed for mask " +
                           std::to_string(mask));
  return *it->second;
}

HierarchyDescriptor build_hierarchy(const Coords& cells0, int dimension,
                                    int max_levels) {
  if (dimension != 2 && dimension != 3)
    throw std::invalid_argument("dimension must be 2 or 3");
  if (cells0[0] < 1 || cells0[1] < 1)
    throw std::invalid_argument("grid must have at least one cell per axis");
  if (dimension == 2 && cells0[2] != 0)
    throw std::invalid_argument("2D grid requires zero cells along z");
  if (dimension == 3 && cells0[2] < 1)
    throw std::invalid_argument("3D grid requires at least one cell along z");

  HierarchyDescriptor d;
  d.dimension = dimension;

  // Coarsen cell counts with the ceil-halving rule until every axis is down
  // to a single cell; an axis of odd extent keeps its last vertex.
  std::vector<Coords> chain{cells0};
  while (true) {
    const Coords& cur = chain.back();
    bool done = true;
    Coords next{};
    for (int a = 0; a < 3; ++a) {
      next[a] = cur[a] == 0 ? 0 : (cur[a] + 1) / 2;
      if (cur[a] > 1) done = false;
    }
    if (done) break;
    chain.push_back(next);
  }
  std::reverse(chain.begin(), chain.end());
  if (max_levels > 0 && static_cast<int>(chain.size()) > max_levels)
    chain.erase(chain.begin(), chain.end() - max_levels);

  for (const Coords& c : chain) {
    LevelInfo li;
    li.cells = c;
    Index count = 1;
    for (int a = 0; a < 3; ++a) {
      li.samples[a] = c[a] + 1;
      li.odd[a] = c[a] % 2 == 1;
      count *= li.samples[a];
    }
    li.vertex_count = count;
    d.levels.push_back(li);
  }

  // Precompute every realizable link pattern: the boundary status per axis
  // is the only thing a pattern depends on.
  const int total = dimension == 2 ? 6 : kMaxNeighbors;
  const auto offset_at = [&](int k) -> Coords {
    return dimension == 2 ? neighbor_offsets_2d()[k] : neighbor_offsets_3d()[k];
  };
  // status: 0 = interior, 1 = at low end, 2 = at high end, 3 = flat axis
  std::vector<std::array<int, 3>> combos;
  for (int sx = 0; sx < 4; ++sx)
    for (int sy = 0; sy < 4; ++sy)
      for (int sz = 0; sz < 4; ++sz) combos.push_back({sx, sy, sz});
  for (const auto& st : combos) {
    std::uint16_t mask = 0;
    for (int k = 0; k < total; ++k) {
      const Coords off = offset_at(k);
      bool ok = true;
      for (int a = 0; a < 3; ++a) {
        if (off[a] == -1 && (st[a] == 1 || st[a] == 3)) ok = false;
        if (off[a] == +1 && (st[a] == 2 || st[a] == 3)) ok = false;
      }
      if (ok) mask |= std::uint16_t{1} << k;
    }
    if (!d.patterns.count(mask)) d.patterns.emplace(mask, make_pattern(mask, dimension));
  }
  return d;
}

Coords coords_of(const HierarchyDescriptor& d, int level, Index v) {
  const LevelInfo& li = d.levels[level];
  Coords c{};
  c[0] = v % li.samples[0];
  v /= li.samples[0];
  c[1] = v % li.samples[1];
  c[2] = v / li.samples[1];
  return c;
}

Index index_of(const HierarchyDescriptor& d, int level, const Coords& c) {
  const LevelInfo& li = d.levels[level];
  return c[0] + li.samples[0] * (c[1] + li.samples[1] * c[2]);
}

Coords to_grid0_coords(const HierarchyDescriptor& d, int level, const Coords& c) {
  for (int a = 0; a < 3; ++a)
    if (c[a] < 0 || c[a] > d.levels[level].cells[a])
      throw std::invalid_argument("coordinates out of range for level");
  Coords cur = c;
  for (int i = level + 1; i < d.level_count(); ++i) {
    const Coords& fine = d.levels[i].cells;
    for (int a = 0; a < 3; ++a) cur[a] = std::min(2 * cur[a], fine[a]);
  }
  return cur;
}

Index grid0_index(const HierarchyDescriptor& d, int level, Index v) {
  const Coords g0 = to_grid0_coords(d, level, coords_of(d, level, v));
  return index_of(d, d.finest_level(), g0);
}

std::uint16_t neighbor_mask(const HierarchyDescriptor& d, int level, Index v) {
  const Coords c = coords_of(d, level, v);
  const LevelInfo& li = d.levels[level];
  const int total = d.dimension == 2 ? 6 : kMaxNeighbors;
  std::uint16_t mask = 0;
  for (int k = 0; k < total; ++k) {
    const Coords off = d.dimension == 2 ? neighbor_offsets_2d()[k]
                                        : neighbor_offsets_3d()[k];
    bool ok = true;
    for (int a = 0; a < 3; ++a) {
      const Index x = c[a] + off[a];
      if (x < 0 || x > li.cells[a]) ok = false;
    }
    if (ok) mask |= std::uint16_t{1} << k;
  }
  return mask;
}

int neighbors(const HierarchyDescriptor& d, int level, Index v,
              std::array<Index, kMaxNeighbors>& out) {
  const LevelInfo& li = d.levels[level];
  if (v < 0 || v >= li.vertex_count)
    throw std::invalid_argument("vertex out of range");
  const Coords c = coords_of(d, level, v);
  const int total = d.dimension == 2 ? 6 : kMaxNeighbors;
  int n = 0;
  for (int k = 0; k < total; ++k) {
    const Coords off = d.dimension == 2 ? neighbor_offsets_2d()[k]
                                        : neighbor_offsets_3d()[k];
    Coords nc{};
    bool ok = true;
    for (int a = 0; a < 3; ++a) {
      nc[a] = c[a] + off[a];
      if (nc[a] < 0 || nc[a] > li.cells[a]) ok = false;
    }
    if (ok) out[n++] = index_of(d, level, nc);
  }
  return n;
}

const LinkPattern& link_pattern(const HierarchyDescriptor& d, int level, Index v) {
  return d.pattern_for_mask(neighbor_mask(d, level, v));
}

VertexAge vertex_age(const HierarchyDescriptor& d, int level, Index v) {
  VertexAge age;
  if (level == 0) return age;  // the coarsest level only has new vertices
  const LevelInfo& fine = d.levels[level];
  const LevelInfo& coarse = d.levels[level - 1];
  const Coords c = coords_of(d, level, v);
  Coords par{};  // parent-edge direction, nonzero on subdivided axes
  bool old_vertex = true;
  for (int a = 0; a < 3; ++a) {
    const bool old_coord = c[a] % 2 == 0 || c[a] == fine.cells[a];
    if (!old_coord) {
      old_vertex = false;
      par[a] = 1;
    }
  }
  if (old_vertex) {
    Coords cc{};
    for (int a = 0; a < 3; ++a)
      cc[a] = c[a] == fine.cells[a] ? coarse.cells[a] : c[a] / 2;
    age.is_new = false;
    age.coarse_index = index_of(d, level - 1, cc);
    return age;
  }
  Coords lo{}, hi{};
  for (int a = 0; a < 3; ++a) {
    lo[a] = c[a] - par[a];
    hi[a] = c[a] + par[a];
  }
  age.parent_lo = index_of(d, level, lo);
  age.parent_hi = index_of(d, level, hi);
  return age;
}

bool is_transition_anomalous(const HierarchyDescriptor& d, int level, Index v) {
  if (level == 0) return false;
  const LevelInfo& fine = d.levels[level];
  const Coords c = coords_of(d, level, v);
  for (int a = 0; a < 3; ++a)
    if (fine.odd[a] && fine.cells[a] > 0 && c[a] >= fine.cells[a] - 1)
      return true;
  return false;
}

bool is_flagged_last(const HierarchyDescriptor& d, int level, Index v) {
  if (level >= d.finest_level()) return false;
  const LevelInfo& li = d.levels[level];
  const LevelInfo& finer = d.levels[level + 1];
  const Coords c = coords_of(d, level, v);
  for (int a = 0; a < 3; ++a)
    if (finer.odd[a] && c[a] == li.cells[a] && li.cells[a] > 0) return true;
  return false;
}

}  // namespace ptopo
