#include "ptopo/field.hpp"

#include <stdexcept>

namespace ptopo {

Coords field_cells(const ScalarField& f) {
  Coords c{};
  for (int a = 0; a < 3; ++a) c[a] = f.samples[a] > 1 ? f.samples[a] - 1 : 0;
  return c;
}

double sample(const ScalarField& f, const HierarchyDescriptor& d, int level,
              Index v) {
  if (v < 0 || v >= d.vertex_count(level))
    throw std::invalid_argument("vertex out of range");
  return f.values[grid0_index(d, level, v)];
}

bool is_lower(const ScalarField& f, Index g0_a, Index g0_b) {
  if (g0_a == g0_b) throw std::invalid_argument("comparing a vertex to itself");
  return is_lower(f.values[g0_a], g0_a, f.values[g0_b], g0_b);
}

bool is_lower_at(const ScalarField& f, const HierarchyDescriptor& d, int level,
                 Index va, Index vb) {
  return is_lower(f, grid0_index(d, level, va), grid0_index(d, level, vb));
}

}  // namespace ptopo
