#pragma once

#include <vector>

#include "ptopo/grid_hierarchy.hpp"

namespace ptopo {

/// Scalar data at the vertices of the input grid, x-fastest, widened to
/// 64-bit floats at ingestion. Immutable once built.
struct ScalarField {
  Coords samples{};  // vertex counts per axis (1 on the flat axis in 2D)
  std::vector<double> values;

  Index vertex_count() const { return samples[0] * samples[1] * samples[2]; }
};

/// Cell counts matching this field (samples - 1, zero on flat axes).
Coords field_cells(const ScalarField& f);

double sample(const ScalarField& f, const HierarchyDescriptor& d, int level,
              Index v);

/// Injective total order: compare by value, ties broken by grid-0 index.
/// This is the symbolic perturbation every comparison in the library uses.
inline bool is_lower(double va, Index ia, double vb, Index ib) {
  if (va != vb) return va < vb;
  return ia < ib;
}

bool is_lower(const ScalarField& f, Index g0_a, Index g0_b);

bool is_lower_at(const ScalarField& f, const HierarchyDescriptor& d, int level,
                 Index va, Index vb);

}  // namespace ptopo
