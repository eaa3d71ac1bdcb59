#pragma once

#include <cstdint>
#include <vector>

#include "cvsheet/field.hpp"
#include "cvsheet/grid.hpp"

namespace cvsheet {

enum class InitialKind { SingleMode, MultiMode, RandomBand };

// Description of the initial state (phi0, phi1) = (displacement, velocity).
// single_mode:  phi0 = amplitude * cos(mode*x + phase)
// multi_mode:   sum of such terms, one per list entry
// random_band:  seeded random coefficients on modes band_min..band_max with
//               magnitude amplitude * (1+k^2)^(-decay/2) * u, phase 2*pi*v,
//               where (u, v) are consecutive splitmix64 uniforms per mode in
//               ascending k. The draws are indexed by mode, not by grid size,
//               so one seed describes the same field on every grid that can
//               hold the band.
// The optional velocity is a single cosine (phi1_amplitude = 0 leaves it zero).
struct InitialDataSpec {
  InitialKind kind = InitialKind::SingleMode;

  double amplitude = 0.0;
  int mode = 1;
  double phase = 0.0;

  std::vector<double> amplitudes;
  std::vector<int> modes;
  std::vector<double> phases;

  int band_min = 1;
  int band_max = 8;
  double decay = 2.0;
  std::uint64_t seed = 0;

  double phi1_amplitude = 0.0;
  int phi1_mode = 1;
  double phi1_phase = 0.0;
};

struct InitialData {
  PeriodicField phi0;
  PeriodicField phi1;
  // |phi0_x|_{H^2}^2 + |phi1|_{H^2}^2, the size measure lifespan and
  // smallness checks work from.
  double data_norm_sq;
};

// Deterministic in every input; same spec and grid give bit-identical fields.
// Mode indices must satisfy 1 <= k < K for the grid's K (the band edge itself
// is left free as dealiasing headroom).
InitialData materialize_initial_data(const InitialDataSpec& spec, const Grid& grid);

// The random_band generator on its own; also used to build test ensembles.
PeriodicField random_band_field(const Grid& grid, std::uint64_t seed, int band_min,
                                int band_max, double decay, double amplitude);

}  // namespace cvsheet
