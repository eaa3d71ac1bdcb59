#pragma once

#include <span>
#include <vector>

#include "cvsheet/grid.hpp"
#include "cvsheet/spectrum.hpp"

namespace cvsheet {

// Forward transform: collocation samples -> retained-band coefficients,
// fhat(k) = (1/n) sum_j f(x_j) exp(-i*k*x_j). Exact (up to roundoff) for
// fields that are band-limited to |k| <= K. Rejects non-finite samples.
Spectrum analyze(const Grid& grid, std::span<const double> samples);

// Inverse transform: evaluates the trigonometric polynomial at the nodes.
// The spectrum must be Hermitian to within 1e-10 relative to its largest
// coefficient; that is the contract. A coarser 1e-7 relative cap on the
// post-inversion imaginary residue backstops transform bugs, and anything
// below it is discarded.
std::vector<double> synthesize(const Spectrum& s);

// A real periodic field held in both representations at once. Instances are
// immutable after construction, so sharing across threads is safe. The two
// representations are kept consistent by construction: one is computed from
// the other, or both come from the same exact linear combination.
class PeriodicField {
 public:
  static PeriodicField from_samples(const Grid& grid, std::vector<double> samples);
  static PeriodicField from_spectrum(const Spectrum& s);
  static PeriodicField zero(const Grid& grid);

  const Grid& grid() const { return grid_; }
  const std::vector<double>& samples() const { return samples_; }
  const Spectrum& spectrum() const { return spectrum_; }

  double mean() const { return spectrum_.at(0).real(); }
  double linf() const;  // max |f(x_j)| over the nodes

  // Exact elementwise linear ops; both representations are combined directly,
  // no transforms are run.
  friend PeriodicField operator+(const PeriodicField& a, const PeriodicField& b);
  friend PeriodicField operator-(const PeriodicField& a, const PeriodicField& b);
  friend PeriodicField operator*(double c, const PeriodicField& f);

 private:
  PeriodicField(Grid grid, std::vector<double> samples, Spectrum spectrum);

  Grid grid_;
  std::vector<double> samples_;
  Spectrum spectrum_;
};

// f minus its mean; the zero mode of the result is exactly zero.
PeriodicField enforce_zero_mean(const PeriodicField& f);

// sqrt(2*pi * sum_k (1+k^2)^s |fhat(k)|^2). Any real s is accepted; s = 0 is
// the L2 norm.
double sobolev_norm(const PeriodicField& f, double s);
double sobolev_norm(const Spectrum& s, double sob_index);

// integral of f*g over the period, evaluated spectrally (exact for retained
// bands, no quadrature aliasing).
double inner_l2(const PeriodicField& f, const PeriodicField& g);

void require_same_grid(const Grid& a, const Grid& b, const char* where);

}  // namespace cvsheet
