#pragma once

#include <cstdint>

#include "ptopo/field.hpp"

namespace ptopo {

/// Elevation along x: one global minimum and one global maximum.
ScalarField make_minmax(const Coords& samples);

/// Independent uniform noise in [0, 1). Byte-reproducible for a given seed
/// on any platform (the generator is self-contained).
ScalarField make_random(const Coords& samples, std::uint64_t seed);

/// Sum of k separated Gaussian bumps with seeded centers.
ScalarField make_hills(const Coords& samples, std::uint64_t seed, int k = 3);

}  // namespace ptopo
