#pragma once

#include <cstdint>
#include <vector>

#include "ptopo/field.hpp"
#include "ptopo/grid_hierarchy.hpp"
#include "ptopo/link_connectivity.hpp"

namespace ptopo {

enum class CritKind : std::uint8_t { Regular, Minimum, Maximum, Saddle };

struct CriticalType {
  CritKind kind = CritKind::Regular;
  std::uint8_t lower = 0, upper = 0;  // component counts

  bool operator==(const CriticalType&) const = default;
};

/// Banchoff classification from lower/upper link component counts.
CriticalType classify_counts(int lower, int upper);

const char* to_string(CritKind k);

/// Per-transition bookkeeping of the progressive update.
struct LevelStats {
  int level = 0;
  Index vertices = 0;
  Index new_vertices = 0, old_vertices = 0;
  Index ti_new = 0, ti_old = 0;       // topologically invariant, skipped
  Index updated_old = 0;              // polarity flips + link update
  Index recomputed = 0;               // full reinitializations
};

/// Progressive per-vertex state across the hierarchy. Starts at any level
/// (0 for progressive runs, h for the non-progressive baseline) and advances
/// one level at a time with the four-step update: mark monotonic new
/// vertices, update link polarity, update impacted old vertices, classify
/// new vertices (interpolating ones are regular for free).
class ProgressiveState {
 public:
  ProgressiveState(const HierarchyDescriptor& desc, const ScalarField& field,
                   int start_level, int threads);

  void advance_level(int threads);

  int level() const { return level_; }
  const HierarchyDescriptor& desc() const { return *desc_; }
  const ScalarField& field() const { return *field_; }
  Index vertex_count() const { return static_cast<Index>(types_.size()); }

  CriticalType type(Index v) const { return types_[v]; }
  double value(Index v) const { return values_[v]; }
  Index g0(Index v) const { return g0_[v]; }
  bool lower_than(Index a, Index b) const {
    return is_lower(values_[a], g0_[a], values_[b], g0_[b]);
  }

  /// Materialized link, or nullptr while the vertex is topologically
  /// invariant (its classification never needed one).
  const PolarizedLink* link(Index v) const {
    return link_idx_[v] < 0 ? nullptr : &links_[link_idx_[v]];
  }

  std::vector<Index> extrema(bool maxima) const;
  Index count_of(CritKind k) const;
  Index global_min() const;
  Index global_max() const;

  const std::vector<LevelStats>& stats() const { return stats_; }

 private:
  void full_init(Index v);
  void classify_at(Index v);

  const HierarchyDescriptor* desc_;
  const ScalarField* field_;
  int level_;

  std::vector<CriticalType> types_;
  std::vector<double> values_;
  std::vector<Index> g0_;
  std::vector<std::uint16_t> polarity_;
  std::vector<std::uint8_t> materialized_;  // polarity + link valid
  std::vector<std::int32_t> link_idx_;
  std::vector<PolarizedLink> links_;

  // per-transition scratch
  std::vector<std::uint8_t> is_new_, monotonic_;
  std::vector<std::uint16_t> flips_;

  std::vector<LevelStats> stats_;
};

/// From-scratch Banchoff classification of a single vertex; the progressive
/// path must agree with it at every level.
CriticalType classify_from_scratch(const HierarchyDescriptor& d,
                                   const ScalarField& f, int level, Index v);

}  // namespace ptopo
