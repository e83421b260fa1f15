#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

namespace ptopo {

using Index = std::int64_t;
using Coords = std::array<Index, 3>;

inline constexpr int kMaxNeighbors = 14;

/// Neighbor offsets of the fixed Kuhn triangulation: every quad is split
/// along its (0,0)-(1,1) diagonal, every hexahedron into the six tetrahedra
/// sharing the (0,0,0)-(1,1,1) diagonal. A vertex is adjacent to v+d for
/// every nonzero d in {0,1}^3 u {0,-1}^3. Offsets are listed in a fixed
/// lexicographic order so that local neighbor indices stay aligned across
/// hierarchy levels; the 2D offsets are the dz==0 subset in the same order.
const std::array<Coords, kMaxNeighbors>& neighbor_offsets_3d();
const std::array<Coords, 6>& neighbor_offsets_2d();

/// Link 1-skeleton of a vertex, in local neighbor indices. Immutable,
/// shared between all vertices with the same boundary configuration.
struct LinkPattern {
  int size = 0;                                     // neighbor count
  std::array<std::uint8_t, kMaxNeighbors> offset_id{};  // local -> global offset
  int edge_count = 0;
  std::array<std::pair<std::uint8_t, std::uint8_t>, 40> edges{};
  std::array<std::uint64_t, kMaxNeighbors> edges_at{};  // edge-bit mask per local vertex
};

struct LevelInfo {
  Coords cells{};    // cell counts per axis (0 on the flat axis in 2D)
  Coords samples{};  // cells + 1, except 1 on a flat axis
  Index vertex_count = 0;
  std::array<bool, 3> odd{};  // cells odd on this level (drives the
                              // last-vertex rule of the transition into it)
};

/// Implicit edge-nested triangulation hierarchy of a regular grid.
/// Level 0 is the coarsest, level h the input grid. Nothing is materialized:
/// coordinates, adjacency and link patterns are computed from the per-level
/// dimensions. Immutable after construction; safe for concurrent reads.
class HierarchyDescriptor {
 public:
  int dimension = 3;
  std::vector<LevelInfo> levels;

  int level_count() const { return static_cast<int>(levels.size()); }
  int finest_level() const { return level_count() - 1; }
  Index vertex_count(int level) const { return levels[level].vertex_count; }

  const LinkPattern& pattern_for_mask(std::uint16_t mask) const;

  // populated by build_hierarchy
  std::unordered_map<std::uint16_t, std::unique_ptr<LinkPattern>> patterns;
};

/// Old vertices existed at the previous level; new vertices subdivide one
/// of its edges. Parent endpoints are given as vertex ids of the *current*
/// level (they are old vertices, so their values and grid-0 positions match
/// the previous level exactly).
struct VertexAge {
  bool is_new = true;
  Index coarse_index = -1;            // valid for old vertices at level >= 1
  Index parent_lo = -1, parent_hi = -1;  // valid for new vertices at level >= 1
};

HierarchyDescriptor build_hierarchy(const Coords& cells0, int dimension,
                                    int max_levels = 0);

Coords coords_of(const HierarchyDescriptor& d, int level, Index v);
Index index_of(const HierarchyDescriptor& d, int level, const Coords& c);

/// Sample location of a level-i vertex in the input grid.
Coords to_grid0_coords(const HierarchyDescriptor& d, int level, const Coords& c);
Index grid0_index(const HierarchyDescriptor& d, int level, Index v);

/// Neighbors at a level in the fixed enumeration order. Returns the count;
/// fills out[0..count) with level-local vertex ids.
int neighbors(const HierarchyDescriptor& d, int level, Index v,
              std::array<Index, kMaxNeighbors>& out);

/// Bit k set iff the k-th global offset is in range for this vertex.
std::uint16_t neighbor_mask(const HierarchyDescriptor& d, int level, Index v);

const LinkPattern& link_pattern(const HierarchyDescriptor& d, int level, Index v);

VertexAge vertex_age(const HierarchyDescriptor& d, int level, Index v);

/// True when the last-vertex rule for odd dimensions breaks the edge-nested
/// correspondence around v at the transition into `level`. Such vertices are
/// recomputed from scratch by the progressive algorithms.
bool is_transition_anomalous(const HierarchyDescriptor& d, int level, Index v);

/// True when some coordinate of v is an odd-dimension extra last vertex.
bool is_flagged_last(const HierarchyDescriptor& d, int level, Index v);

}  // namespace ptopo
