#include "ptopo/persistence.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <stdexcept>
#include <unordered_map>

#include "ptopo/parallel.hpp"

namespace ptopo {

const char* to_string(PairClass c) {
  switch (c) {
    case PairClass::MinSaddle: return "min-saddle";
    case PairClass::SaddleMax: return "saddle-max";
    case PairClass::Global: return "global";
  }
  return "?";
}

namespace {

// Sweep order: ascending for min-saddle, exactly reversed for saddle-max.
struct SweepOrder {
  const ProgressiveState* state;
  bool max_side;
  bool before(Index a, Index b) const {
    return max_side ? state->lower_than(b, a) : state->lower_than(a, b);
  }
};

bool is_seed_extremum(const CriticalType& t, bool max_side) {
  return t.kind == (max_side ? CritKind::Maximum : CritKind::Minimum);
}

int saddle_multiplicity(const CriticalType& t, bool max_side) {
  if (t.kind != CritKind::Saddle) return 0;
  return max_side ? t.upper : t.lower;
}

}  // namespace

std::vector<SaddleReps> saddle_paths(const ProgressiveState& state,
                                     bool max_side, int threads,
                                     std::vector<Index>* stored_out) {
  const HierarchyDescriptor& desc = state.desc();
  const int level = state.level();
  const Index n = state.vertex_count();
  const SweepOrder order{&state, max_side};

  std::vector<Index> saddles;
  for (Index v = 0; v < n; ++v)
    if (saddle_multiplicity(state.type(v), max_side) >= 2) saddles.push_back(v);

  // First-writer-wins representant store; concurrent paths that lose the
  // race keep walking, which reaches the same minimum by determinism of
  // the steepest step.
  auto stored = std::make_unique<std::atomic<Index>[]>(n);
  parallel_for(n, threads, [&](Index lo, Index hi) {
    for (Index v = lo; v < hi; ++v)
      stored[v].store(-1, std::memory_order_relaxed);
  });

  std::vector<SaddleReps> result(saddles.size());

  parallel_for(static_cast<Index>(saddles.size()), threads,
               [&](Index lo, Index hi) {
    std::array<Index, kMaxNeighbors> link_nbr{}, walk_nbr{};
    std::vector<Index> path;
    for (Index si = lo; si < hi; ++si) {
      const Index s = saddles[si];
      SaddleReps& out = result[si];
      out.saddle = s;
      const PolarizedLink* link = state.link(s);
      if (!link)
        throw std::logic_error("saddle without a materialized link");
      neighbors(desc, level, s, link_nbr);
      for (std::uint16_t comp : link->component_masks(/*upper=*/max_side)) {
        // seed: the component member that comes first in the sweep order
        Index seed = -1;
        for (std::uint16_t m = comp; m;) {
          const int k = __builtin_ctz(m);
          m &= m - 1;
          const Index cand = link_nbr[k];
          if (seed < 0 || order.before(cand, seed)) seed = cand;
        }
        path.clear();
        Index cur = seed;
        Index rep = -1;
        while (true) {
          const Index known = stored[cur].load(std::memory_order_relaxed);
          if (known >= 0) {
            rep = known;  // merged into a previously computed path
            break;
          }
          path.push_back(cur);
          if (is_seed_extremum(state.type(cur), max_side)) {
            rep = cur;
            break;
          }
          // steepest step: first neighbor in the sweep order
          const int cnt = neighbors(desc, level, cur, walk_nbr);
          Index next = -1;
          for (int k = 0; k < cnt; ++k)
            if (next < 0 || order.before(walk_nbr[k], next)) next = walk_nbr[k];
          cur = next;
        }
        for (Index v : path) {
          Index expected = -1;
          stored[v].compare_exchange_strong(expected, rep,
                                            std::memory_order_relaxed);
        }
        out.reps.push_back(rep);
      }
      std::sort(out.reps.begin(), out.reps.end(),
                [&](Index a, Index b) { return order.before(a, b); });
      out.reps.erase(std::unique(out.reps.begin(), out.reps.end()),
                     out.reps.end());
    }
  });

  if (stored_out) {
    stored_out->resize(n);
    for (Index v = 0; v < n; ++v)
      (*stored_out)[v] = stored[v].load(std::memory_order_relaxed);
  }
  return result;
}

std::vector<Triplet> build_triplets(const std::vector<SaddleReps>& reps) {
  std::vector<Triplet> out;
  for (const SaddleReps& sr : reps) {
    for (std::size_t i = 1; i < sr.reps.size(); ++i)
      out.push_back(Triplet{sr.saddle, sr.reps[0], sr.reps[i]});
  }
  return out;
}

std::vector<PersistencePair> pair_critical_points(
    const std::vector<Triplet>& triplets, const ProgressiveState& state,
    bool max_side) {
  const SweepOrder order{&state, max_side};
  std::vector<Triplet> sorted = triplets;
  std::sort(sorted.begin(), sorted.end(), [&](const Triplet& a, const Triplet& b) {
    return order.before(a.saddle, b.saddle);
  });

  std::unordered_map<Index, Index> parent;
  const auto root = [&](Index m) {
    Index r = m;
    while (true) {
      auto it = parent.find(r);
      if (it == parent.end()) break;
      r = it->second;
    }
    // path compression
    while (m != r) {
      Index& p = parent[m];
      const Index next = p;
      p = r;
      m = next;
    }
    return r;
  };

  std::vector<PersistencePair> pairs;
  for (const Triplet& t : sorted) {
    Index r0 = root(t.m0), r1 = root(t.m1);
    if (r0 == r1) continue;  // the two components already merged
    if (order.before(r1, r0)) std::swap(r0, r1);
    // r1 is the younger extremum: it dies at the saddle
    PersistencePair p;
    if (max_side) {
      p.birth_vertex = state.g0(t.saddle);
      p.birth_value = state.value(t.saddle);
      p.death_vertex = state.g0(r1);
      p.death_value = state.value(r1);
      p.cls = PairClass::SaddleMax;
    } else {
      p.birth_vertex = state.g0(r1);
      p.birth_value = state.value(r1);
      p.death_vertex = state.g0(t.saddle);
      p.death_value = state.value(t.saddle);
      p.cls = PairClass::MinSaddle;
    }
    pairs.push_back(p);
    parent[r1] = r0;
  }
  return pairs;
}

PersistenceDiagram compute_diagram_at_level(const ProgressiveState& state,
                                            PairSelection classes, int threads) {
  PersistenceDiagram diagram;
  diagram.level = state.level();

  if (classes != PairSelection::SaddleMax) {
    const auto reps = saddle_paths(state, /*max_side=*/false, threads);
    const auto pairs =
        pair_critical_points(build_triplets(reps), state, /*max_side=*/false);
    diagram.pairs.insert(diagram.pairs.end(), pairs.begin(), pairs.end());
  }
  if (classes != PairSelection::MinSaddle) {
    const auto reps = saddle_paths(state, /*max_side=*/true, threads);
    const auto pairs =
        pair_critical_points(build_triplets(reps), state, /*max_side=*/true);
    diagram.pairs.insert(diagram.pairs.end(), pairs.begin(), pairs.end());
  }

  const Index gmin = state.global_min();
  const Index gmax = state.global_max();
  PersistencePair global;
  global.birth_vertex = state.g0(gmin);
  global.birth_value = state.value(gmin);
  global.death_vertex = state.g0(gmax);
  global.death_value = state.value(gmax);
  global.cls = PairClass::Global;
  diagram.pairs.push_back(global);

  // canonical order: the pair set is deterministic, the emission order of
  // same-saddle pairs is not
  std::sort(diagram.pairs.begin(), diagram.pairs.end(),
            [](const PersistencePair& a, const PersistencePair& b) {
              if (a.cls != b.cls) return a.cls < b.cls;
              if (a.birth_value != b.birth_value)
                return a.birth_value < b.birth_value;
              if (a.birth_vertex != b.birth_vertex)
                return a.birth_vertex < b.birth_vertex;
              if (a.death_value != b.death_value)
                return a.death_value < b.death_value;
              return a.death_vertex < b.death_vertex;
            });
  return diagram;
}

int run_progressive(const HierarchyDescriptor& desc, const ScalarField& field,
                    const ProgressiveOptions& options, const DiagramSink& sink) {
  const auto start = std::chrono::steady_clock::now();
  const auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
  };
  const int threads = std::max(1, options.threads);

  ProgressiveState state(desc, field, 0, threads);
  int emitted = 0;
  while (true) {
    const PersistenceDiagram diagram =
        compute_diagram_at_level(state, options.pairs, threads);
    sink(diagram, state);
    ++emitted;
    if (state.level() >= desc.finest_level()) break;
    if (options.level_cap && emitted >= *options.level_cap) break;
    if (options.budget_ms && elapsed_ms() >= *options.budget_ms) break;
    if (options.interrupt && options.interrupt->load()) break;
    state.advance_level(threads);
  }
  return state.level();
}

}  // namespace ptopo
