#include "ptopo/critical_points.hpp"

#include <stdexcept>

#include "ptopo/parallel.hpp"

namespace ptopo {

namespace {

enum Action : std::uint8_t {
  kKeep = 0,       // topologically invariant, nothing to do
  kFlip = 1,       // old vertex, polarity flips + link update
  kReinit = 2,     // full reinitialization
  kInterpolate = 3 // new vertex, regular by construction
};

}  // namespace

CriticalType classify_counts(int lower, int upper) {
  CriticalType t;
  t.lower = static_cast<std::uint8_t>(lower);
  t.upper = static_cast<std::uint8_t>(upper);
  if (lower == 0)
    t.kind = CritKind::Minimum;
  else if (upper == 0)
    t.kind = CritKind::Maximum;
  else if (lower == 1 && upper == 1)
    t.kind = CritKind::Regular;
  else
    t.kind = CritKind::Saddle;
  return t;
}

const char* to_string(CritKind k) {
  switch (k) {
    case CritKind::Regular: return "regular";
    case CritKind::Minimum: return "minimum";
    case CritKind::Maximum: return "maximum";
    case CritKind::Saddle: return "saddle";
  }
  return "?";
}

ProgressiveState::ProgressiveState(const HierarchyDescriptor& desc,
                                   const ScalarField& field, int start_level,
                                   int threads)
    : desc_(&desc), field_(&field), level_(start_level) {
  if (start_level < 0 || start_level > desc.finest_level())
    throw std::invalid_argument("start level out of range");
  const Index n = desc.vertex_count(level_);
  types_.resize(n);
  values_.resize(n);
  g0_.resize(n);
  polarity_.assign(n, 0);
  materialized_.assign(n, 1);
  link_idx_.resize(n);
  links_.resize(n);
  for (Index v = 0; v < n; ++v) link_idx_[v] = static_cast<std::int32_t>(v);

  parallel_for(n, threads, [&](Index lo, Index hi) {
    for (Index v = lo; v < hi; ++v) {
      g0_[v] = grid0_index(*desc_, level_, v);
      values_[v] = field_->values[g0_[v]];
    }
  });
  parallel_for(n, threads, [&](Index lo, Index hi) {
    for (Index v = lo; v < hi; ++v) full_init(v);
  });

  LevelStats st;
  st.level = level_;
  st.vertices = n;
  st.new_vertices = n;
  st.recomputed = n;
  stats_.push_back(st);
}

void ProgressiveState::full_init(Index v) {
  const LinkPattern& pat = link_pattern(*desc_, level_, v);
  std::array<Index, kMaxNeighbors> nbr{};
  const int cnt = neighbors(*desc_, level_, v, nbr);
  std::uint16_t pol = 0;
  for (int k = 0; k < cnt; ++k)
    if (is_lower(values_[v], g0_[v], values_[nbr[k]], g0_[nbr[k]]))
      pol |= std::uint16_t{1} << k;
  polarity_[v] = pol;
  links_[link_idx_[v]].init(pat, pol);
  materialized_[v] = 1;
  classify_at(v);
}

void ProgressiveState::classify_at(Index v) {
  const PolarizedLink& l = links_[link_idx_[v]];
  types_[v] = classify_counts(l.lower_components(), l.upper_components());
}

void ProgressiveState::advance_level(int threads) {
  if (level_ >= desc_->finest_level())
    throw std::logic_error("already at the finest level");
  const int fine = level_ + 1;
  const Index n = desc_->vertex_count(fine);

  auto old_types = std::move(types_);
  auto old_values = std::move(values_);
  auto old_g0 = std::move(g0_);
  auto old_polarity = std::move(polarity_);
  auto old_materialized = std::move(materialized_);
  auto old_link_idx = std::move(link_idx_);

  types_.assign(n, CriticalType{});
  values_.resize(n);
  g0_.resize(n);
  polarity_.assign(n, 0);
  materialized_.assign(n, 0);
  link_idx_.assign(n, -1);
  is_new_.assign(n, 0);
  monotonic_.assign(n, 1);
  flips_.assign(n, 0);
  std::vector<std::uint8_t> action(n, kKeep);
  std::vector<std::uint8_t> anomalous(n, 0);

  level_ = fine;

  // carry old-vertex state over; resolve values and grid-0 ids everywhere
  parallel_for(n, threads, [&](Index lo, Index hi) {
    for (Index v = lo; v < hi; ++v) {
      const VertexAge age = vertex_age(*desc_, fine, v);
      anomalous[v] = is_transition_anomalous(*desc_, fine, v) ? 1 : 0;
      if (age.is_new) {
        is_new_[v] = 1;
        g0_[v] = grid0_index(*desc_, fine, v);
        values_[v] = field_->values[g0_[v]];
      } else {
        const Index c = age.coarse_index;
        g0_[v] = old_g0[c];
        values_[v] = old_values[c];
        types_[v] = old_types[c];
        polarity_[v] = old_polarity[c];
        materialized_[v] = old_materialized[c];
        link_idx_[v] = old_link_idx[c];
      }
    }
  });

  // step 1: monotonic new vertices
  parallel_for(n, threads, [&](Index lo, Index hi) {
    for (Index v = lo; v < hi; ++v) {
      if (!is_new_[v]) continue;
      const VertexAge age = vertex_age(*desc_, fine, v);
      Index plo = age.parent_lo, phi = age.parent_hi;
      if (is_lower(values_[phi], g0_[phi], values_[plo], g0_[plo]))
        std::swap(plo, phi);
      monotonic_[v] =
          is_lower(values_[plo], g0_[plo], values_[v], g0_[v]) &&
          is_lower(values_[v], g0_[v], values_[phi], g0_[phi]);
    }
  });

  // step 2: link polarity updates; old vertices detect whether they are
  // impacted by a non-monotonic neighbor
  parallel_for(n, threads, [&](Index lo, Index hi) {
    std::array<Index, kMaxNeighbors> nbr{};
    for (Index v = lo; v < hi; ++v) {
      if (is_new_[v]) continue;
      if (anomalous[v]) {
        action[v] = kReinit;
        continue;
      }
      const int cnt = neighbors(*desc_, fine, v, nbr);
      const Coords c = coords_of(*desc_, fine, v);
      std::uint16_t flips = 0;
      bool invalid_flip = false;
      for (int k = 0; k < cnt; ++k) {
        const Index nb = nbr[k];
        if (monotonic_[nb]) continue;
        const bool now_upper =
            is_lower(values_[v], g0_[v], values_[nb], g0_[nb]);
        bool was_upper;
        if (materialized_[v]) {
          was_upper = polarity_[v] >> k & 1;
        } else {
          // previous-level neighbor sits two steps away on the fine grid
          const LinkPattern& pat = link_pattern(*desc_, fine, v);
          const Coords off = desc_->dimension == 2
                                 ? neighbor_offsets_2d()[pat.offset_id[k]]
                                 : neighbor_offsets_3d()[pat.offset_id[k]];
          Coords cc{};
          for (int a = 0; a < 3; ++a) cc[a] = c[a] + 2 * off[a];
          const Index cn = index_of(*desc_, fine, cc);
          was_upper = is_lower(values_[v], g0_[v], values_[cn], g0_[cn]);
        }
        if (now_upper != was_upper) {
          flips |= std::uint16_t{1} << k;
          if (!materialized_[v]) invalid_flip = true;
        }
      }
      if (flips == 0) continue;  // topologically invariant old vertex
      flips_[v] = flips;
      action[v] = invalid_flip ? kReinit : kFlip;
    }
  });

  // step 4 decision (new vertices), fused with step 2's pass structure:
  // interpolating vertices are regular with no link at all
  parallel_for(n, threads, [&](Index lo, Index hi) {
    std::array<Index, kMaxNeighbors> nbr{};
    for (Index v = lo; v < hi; ++v) {
      if (!is_new_[v]) continue;
      if (anomalous[v] || !monotonic_[v]) {
        action[v] = kReinit;
        continue;
      }
      const int cnt = neighbors(*desc_, fine, v, nbr);
      bool interpolating = true;
      for (int k = 0; k < cnt; ++k)
        if (is_new_[nbr[k]] && !monotonic_[nbr[k]]) {
          interpolating = false;
          break;
        }
      action[v] = interpolating ? kInterpolate : kReinit;
    }
  });

  // allocate link slots sequentially so results do not depend on threads
  LevelStats st;
  st.level = fine;
  st.vertices = n;
  for (Index v = 0; v < n; ++v) {
    if (is_new_[v]) {
      ++st.new_vertices;
      if (action[v] == kInterpolate)
        ++st.ti_new;
      else
        ++st.recomputed;
    } else {
      ++st.old_vertices;
      if (action[v] == kKeep)
        ++st.ti_old;
      else if (action[v] == kFlip)
        ++st.updated_old;
      else
        ++st.recomputed;
    }
    if (action[v] == kReinit && link_idx_[v] < 0) {
      link_idx_[v] = static_cast<std::int32_t>(links_.size());
      links_.emplace_back();
    }
  }

  // steps 3 and 4: apply updates; per-vertex state is exclusively owned
  parallel_for(n, threads, [&](Index lo, Index hi) {
    for (Index v = lo; v < hi; ++v) {
      switch (action[v]) {
        case kKeep:
          break;
        case kFlip: {
          polarity_[v] ^= flips_[v];
          links_[link_idx_[v]].flip_and_update(flips_[v]);
          classify_at(v);
          break;
        }
        case kReinit:
          full_init(v);
          break;
        case kInterpolate:
          types_[v] = CriticalType{CritKind::Regular, 1, 1};
          break;
      }
    }
  });

  stats_.push_back(st);
}

std::vector<Index> ProgressiveState::extrema(bool maxima) const {
  std::vector<Index> out;
  const CritKind want = maxima ? CritKind::Maximum : CritKind::Minimum;
  for (Index v = 0; v < vertex_count(); ++v)
    if (types_[v].kind == want) out.push_back(v);
  return out;
}

Index ProgressiveState::count_of(CritKind k) const {
  Index n = 0;
  for (const CriticalType& t : types_)
    if (t.kind == k) ++n;
  return n;
}

Index ProgressiveState::global_min() const {
  Index best = 0;
  for (Index v = 1; v < vertex_count(); ++v)
    if (lower_than(v, best)) best = v;
  return best;
}

Index ProgressiveState::global_max() const {
  Index best = 0;
  for (Index v = 1; v < vertex_count(); ++v)
    if (lower_than(best, v)) best = v;
  return best;
}

CriticalType classify_from_scratch(const HierarchyDescriptor& d,
                                   const ScalarField& f, int level, Index v) {
  const LinkPattern& pat = link_pattern(d, level, v);
  std::array<Index, kMaxNeighbors> nbr{};
  const int cnt = neighbors(d, level, v, nbr);
  const Index gv = grid0_index(d, level, v);
  const double fv = f.values[gv];
  std::uint16_t pol = 0;
  for (int k = 0; k < cnt; ++k) {
    const Index gn = grid0_index(d, level, nbr[k]);
    if (is_lower(fv, gv, f.values[gn], gn)) pol |= std::uint16_t{1} << k;
  }
  PolarizedLink l;
  l.init(pat, pol);
  return classify_counts(l.lower_components(), l.upper_components());
}

}  // namespace ptopo
