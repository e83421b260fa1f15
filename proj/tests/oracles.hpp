// Independent reference implementations used only by the tests. These are
// written from first principles against the same grid conventions and must
// not share logic with the library paths they check.
#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "ptopo/critical_points.hpp"
#include "ptopo/metrics.hpp"
#include "ptopo/persistence.hpp"

namespace ptopo::oracle {

/// Neighbor list derived from a fresh enumeration of monotone offsets.
std::vector<Index> grid_neighbors(const HierarchyDescriptor& d, int level,
                                  Index v);

/// Banchoff classification via explicit link-graph BFS.
CriticalType classify(const HierarchyDescriptor& d, const ScalarField& f,
                      int level, Index v);

/// Lower/upper link component vertex sets (level-local ids).
std::vector<std::vector<Index>> link_components(const HierarchyDescriptor& d,
                                                const ScalarField& f, int level,
                                                Index v, bool upper);

/// Extremum-saddle pairs from a sorted sweep with a union-find over the
/// full level mesh; the reference for diagram exactness.
std::vector<PersistencePair> sweep_pairs(const HierarchyDescriptor& d,
                                         const ScalarField& f, int level,
                                         bool max_side);

/// Complete reference diagram (both classes + the global pair).
PersistenceDiagram diagram(const HierarchyDescriptor& d, const ScalarField& f,
                           int level, PairSelection classes);

/// Multiset of (class, birth, death) value triples.
using ValuePairs = std::map<std::tuple<int, double, double>, int>;
ValuePairs value_pairs(const PersistenceDiagram& d);

/// Exhaustive minimum over augmented matchings; diagrams of <= 8 points.
double brute_force_wasserstein(const std::vector<DiagramPoint>& a,
                               const std::vector<DiagramPoint>& b, double q);

/// Structural checks every computed diagram must satisfy: persistence >= 0,
/// one global pair, pair counts tied to extremum counts, extremum slots
/// unique, saddle slots bounded by the saddle multiplicity.
void check_structure(const PersistenceDiagram& diagram,
                     const ProgressiveState& state, PairSelection classes);

/// Steepest-descent basin of every vertex (the minimum its integral line
/// reaches); max_side gives ascent basins.
std::vector<Index> descent_basins(const ProgressiveState& state, bool max_side);

}  // namespace ptopo::oracle
