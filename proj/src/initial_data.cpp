#include "cvsheet/initial_data.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cvsheet/multiplier.hpp"
#include "cvsheet/rng.hpp"

namespace cvsheet {

namespace {

void check_mode(int k, const Grid& grid, const char* what) {
  if (k < 1 || k >= grid.max_mode())
    throw std::invalid_argument(std::string(what) + " " + std::to_string(k) +
                                " outside 1 <= k < " + std::to_string(grid.max_mode()));
}

// amplitude * cos(k*x + phase) assembled in Fourier space so the
// coefficients are exact, not quadrature results.
Spectrum cosine_spectrum(const Grid& grid, double amplitude, int k, double phase) {
  Spectrum s(grid);
  std::complex<double> half =
      0.5 * amplitude * std::exp(std::complex<double>(0.0, phase));
  s.at(k) = half;
  s.at(-k) = std::conj(half);
  return s;
}

}  // namespace

PeriodicField random_band_field(const Grid& grid, std::uint64_t seed, int band_min,
                                int band_max, double decay, double amplitude) {
  if (band_min < 1 || band_max < band_min)
    throw std::invalid_argument("random_band_field: need 1 <= band_min <= band_max");
  check_mode(band_max, grid, "random_band_field: band edge");

  SplitMix64 rng(seed);
  Spectrum s(grid);
  for (int k = band_min; k <= band_max; ++k) {
    double mag = rng.uniform();
    double ph = 2.0 * std::numbers::pi * rng.uniform();
    std::complex<double> c =
        amplitude * std::pow(1.0 + static_cast<double>(k) * k, -decay / 2.0) * mag *
        std::exp(std::complex<double>(0.0, ph));
    s.at(k) = c;
    s.at(-k) = std::conj(c);
  }
  return PeriodicField::from_spectrum(s);
}

InitialData materialize_initial_data(const InitialDataSpec& spec, const Grid& grid) {
  Spectrum phi0(grid);

  switch (spec.kind) {
    case InitialKind::SingleMode: {
      check_mode(spec.mode, grid, "initial data: mode");
      if (!std::isfinite(spec.amplitude) || !std::isfinite(spec.phase))
        throw std::invalid_argument("initial data: non-finite amplitude or phase");
      phi0 = cosine_spectrum(grid, spec.amplitude, spec.mode, spec.phase);
      break;
    }
    case InitialKind::MultiMode: {
      if (spec.modes.empty() || spec.modes.size() != spec.amplitudes.size() ||
          spec.modes.size() != spec.phases.size())
        throw std::invalid_argument(
            "initial data: modes, amplitudes, phases must be non-empty lists of one length");
      for (std::size_t i = 0; i < spec.modes.size(); ++i) {
        check_mode(spec.modes[i], grid, "initial data: mode");
        if (!std::isfinite(spec.amplitudes[i]) || !std::isfinite(spec.phases[i]))
          throw std::invalid_argument("initial data: non-finite amplitude or phase");
        Spectrum one = cosine_spectrum(grid, spec.amplitudes[i], spec.modes[i], spec.phases[i]);
        int K = grid.max_mode();
        for (int k = -K; k <= K; ++k) phi0.at(k) += one.at(k);
      }
      break;
    }
    case InitialKind::RandomBand: {
      if (!(spec.decay >= 0.0))
        throw std::invalid_argument("initial data: decay must be >= 0");
      phi0 = random_band_field(grid, spec.seed, spec.band_min, spec.band_max, spec.decay,
                               spec.amplitude)
                 .spectrum();
      break;
    }
  }

  PeriodicField f0 = PeriodicField::from_spectrum(phi0);

  PeriodicField f1 = PeriodicField::zero(grid);
  if (spec.phi1_amplitude != 0.0) {
    check_mode(spec.phi1_mode, grid, "initial data: phi1 mode");
    f1 = PeriodicField::from_spectrum(
        cosine_spectrum(grid, spec.phi1_amplitude, spec.phi1_mode, spec.phi1_phase));
  }

  double a = sobolev_norm(derivative(f0, 1), 2.0);
  double b = sobolev_norm(f1, 2.0);
  return InitialData{std::move(f0), std::move(f1), a * a + b * b};
}

}  // namespace cvsheet
