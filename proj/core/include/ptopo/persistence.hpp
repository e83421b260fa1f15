#pragma once

#include <atomic>
#include <functional>
#include <optional>
#include <vector>

#include "ptopo/critical_points.hpp"

namespace ptopo {

enum class PairClass : std::uint8_t { MinSaddle = 0, SaddleMax = 1, Global = 2 };

const char* to_string(PairClass c);

/// One extremum-saddle pair. Vertices are grid-0 ids; values are the exact
/// field values, death strictly above birth under the perturbed order.
struct PersistencePair {
  Index birth_vertex = -1, death_vertex = -1;  // grid-0 ids
  double birth_value = 0, death_value = 0;
  PairClass cls = PairClass::MinSaddle;

  double persistence() const { return death_value - birth_value; }
};

struct PersistenceDiagram {
  int level = 0;
  std::vector<PersistencePair> pairs;
};

enum class PairSelection { MinSaddle, SaddleMax, Both };

/// Merge-event record: saddle s joins the components represented by the
/// minima m0 < m1 (maxima under the reversed order on the saddle-max side).
struct Triplet {
  Index saddle = -1, m0 = -1, m1 = -1;  // level-local vertex ids
};

struct SaddleReps {
  Index saddle = -1;
  std::vector<Index> reps;  // deduplicated, ascending under the sweep order
};

/// Part A: monotonic paths seeded at each lower-link component of each
/// saddle, with early termination on stored representants. max_side walks
/// ascending paths from upper-link components instead. stored_out, when
/// given, receives the per-vertex representant store.
std::vector<SaddleReps> saddle_paths(const ProgressiveState& state,
                                     bool max_side, int threads,
                                     std::vector<Index>* stored_out = nullptr);

/// Part B inputs: d-1 triplets per saddle with d representants.
std::vector<Triplet> build_triplets(const std::vector<SaddleReps>& reps);

/// Part B: Elder-rule pairing by increasing saddle value (decreasing on the
/// saddle-max side). Emits extremum-saddle pairs only; the surviving global
/// extremum is paired by the caller.
std::vector<PersistencePair> pair_critical_points(
    const std::vector<Triplet>& triplets, const ProgressiveState& state,
    bool max_side);

PersistenceDiagram compute_diagram_at_level(const ProgressiveState& state,
                                            PairSelection classes, int threads);

struct ProgressiveOptions {
  PairSelection pairs = PairSelection::Both;
  std::optional<double> budget_ms;  // checked between levels
  std::optional<int> level_cap;     // stop after this many emitted levels
  int threads = 1;
  const std::atomic<bool>* interrupt = nullptr;
};

using DiagramSink = std::function<void(const PersistenceDiagram&,
                                       const ProgressiveState&)>;

/// Coarse-to-fine driver: emits the exact diagram of every level until the
/// finest level, the budget, an interrupt, or the level cap ends the run.
/// Every emission is complete for its level. Returns the last emitted level.
int run_progressive(const HierarchyDescriptor& desc, const ScalarField& field,
                    const ProgressiveOptions& options, const DiagramSink& sink);

}  // namespace ptopo
