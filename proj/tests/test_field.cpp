#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "ptopo/field.hpp"
#include "ptopo/synthetic.hpp"

using namespace ptopo;

TEST_CASE("sampling maps levels back to the input grid") {
  const Coords samples{9, 9, 9};
  const ScalarField f = make_random(samples, 3);
  const auto d = build_hierarchy(field_cells(f), 3);
  const int h = d.finest_level();

  // finest level is the identity
  for (Index v = 0; v < d.vertex_count(h); v += 37)
    CHECK(sample(f, d, h, v) == f.values[v]);

  // one level up: (1,1,1) reads the input at (2,2,2)
  const Index v = index_of(d, h - 1, {1, 1, 1});
  CHECK(sample(f, d, h - 1, v) ==
        f.values[index_of(d, h, {2, 2, 2})]);
}

TEST_CASE("elevation field sampling is level-consistent") {
  const ScalarField f = make_minmax({9, 9, 1});
  const auto d = build_hierarchy(field_cells(f), 2);
  for (int level = 0; level < d.level_count(); ++level)
    for (Index v = 0; v < d.vertex_count(level); ++v) {
      const Coords g0 = to_grid0_coords(d, level, coords_of(d, level, v));
      CHECK(sample(f, d, level, v) == static_cast<double>(g0[0]));
    }
}

TEST_CASE("old vertices keep their value at every level") {
  const ScalarField f = make_random({9, 5, 3}, 11);
  const auto d = build_hierarchy(field_cells(f), 3);
  for (int level = 0; level + 1 < d.level_count(); ++level)
    for (Index v = 0; v < d.vertex_count(level); ++v) {
      const Coords c = coords_of(d, level, v);
      Coords fc{};
      for (int a = 0; a < 3; ++a)
        fc[a] = std::min(2 * c[a], d.levels[level + 1].cells[a]);
      const double coarse = sample(f, d, level, v);
      const double fine = sample(f, d, level + 1, index_of(d, level + 1, fc));
      CHECK(coarse == fine);  // exact bit equality
    }
}

TEST_CASE("perturbed order breaks ties by index") {
  ScalarField f;
  f.samples = {2, 2, 1};
  f.values = {1.0, 2.0, 2.0, 0.5};
  CHECK(is_lower(f, 0, 1));
  CHECK(is_lower(f, 1, 2));   // equal values, lower index first
  CHECK_FALSE(is_lower(f, 2, 1));
  CHECK(is_lower(f, 3, 0));
  CHECK_THROWS_AS(is_lower(f, 1, 1), std::invalid_argument);
}

TEST_CASE("perturbed order is a strict total order under heavy ties") {
  // constant-ish field with many duplicates
  ScalarField f = make_random({6, 6, 6}, 5);
  for (double& v : f.values) v = std::floor(v * 4) / 4;

  std::vector<Index> order(f.vertex_count());
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(),
            [&](Index a, Index b) { return is_lower(f, a, b); });
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    CHECK(is_lower(f, order[i], order[i + 1]));
    CHECK_FALSE(is_lower(f, order[i + 1], order[i]));
  }
}

