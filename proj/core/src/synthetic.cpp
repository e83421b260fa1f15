#include "ptopo/synthetic.hpp"

#include <cmath>
#include <stdexcept>

namespace ptopo {

namespace {

// splitmix64: tiny, stateless across platforms
struct Rng {
  std::uint64_t state;
  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double next_double() {  // [0, 1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }
};

void check_samples(const Coords& samples) {
  if (samples[0] < 2 || samples[1] < 2 || samples[2] < 1)
    throw std::invalid_argument("need at least 2 samples per non-flat axis");
}

}  // namespace

ScalarField make_minmax(const Coords& samples) {
  check_samples(samples);
  ScalarField f;
  f.samples = samples;
  f.values.resize(f.vertex_count());
  Index i = 0;
  for (Index z = 0; z < samples[2]; ++z)
    for (Index y = 0; y < samples[1]; ++y)
      for (Index x = 0; x < samples[0]; ++x) f.values[i++] = static_cast<double>(x);
  return f;
}

ScalarField make_random(const Coords& samples, std::uint64_t seed) {
  check_samples(samples);
  ScalarField f;
  f.samples = samples;
  f.values.resize(f.vertex_count());
  Rng rng{seed * 0x2545f4914f6cdd1dull + 0x9e3779b97f4a7c15ull};
  for (double& v : f.values) v = rng.next_double();
  return f;
}

ScalarField make_hills(const Coords& samples, std::uint64_t seed, int k) {
  check_samples(samples);
  if (k < 1) throw std::invalid_argument("need at least one hill");
  ScalarField f;
  f.samples = samples;
  f.values.assign(f.vertex_count(), 0.0);
  Rng rng{seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull};

  const bool flat_z = samples[2] == 1;
  struct Hill {
    double cx, cy, cz, amp, sigma;
  };
  std::vector<Hill> hills;
  for (int i = 0; i < k; ++i) {
    // rejection-sample centers so the bumps stay separated
    for (int attempt = 0; attempt < 256; ++attempt) {
      Hill h;
      h.cx = 0.2 + 0.6 * rng.next_double();
      h.cy = 0.2 + 0.6 * rng.next_double();
      h.cz = flat_z ? 0.0 : 0.2 + 0.6 * rng.next_double();
      h.amp = 1.0 - 0.05 * i;
      h.sigma = 0.11;
      bool ok = true;
      for (const Hill& o : hills) {
        const double dx = h.cx - o.cx, dy = h.cy - o.cy, dz = h.cz - o.cz;
        if (std::sqrt(dx * dx + dy * dy + dz * dz) < 0.3) ok = false;
      }
      if (ok || attempt == 255) {
        hills.push_back(h);
        break;
      }
    }
  }

  Index i = 0;
  for (Index z = 0; z < samples[2]; ++z)
    for (Index y = 0; y < samples[1]; ++y)
      for (Index x = 0; x < samples[0]; ++x) {
        const double px = static_cast<double>(x) / (samples[0] - 1);
        const double py = static_cast<double>(y) / (samples[1] - 1);
        const double pz = flat_z ? 0.0 : static_cast<double>(z) / (samples[2] - 1);
        double v = 0;
        for (const Hill& h : hills) {
          const double dx = px - h.cx, dy = py - h.cy, dz = pz - h.cz;
          const double r2 = dx * dx + dy * dy + dz * dz;
          v += h.amp * std::exp(-r2 / (2 * h.sigma * h.sigma));
        }
        f.values[i++] = v;
      }
  return f;
}

}  // namespace ptopo
