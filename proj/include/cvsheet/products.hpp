#pragma once

#include "cvsheet/field.hpp"
#include "cvsheet/spectrum.hpp"

namespace cvsheet {

// How pointwise products are protected against spectral aliasing.
//
// The truncation rule zeroes both factors beyond fraction*K, multiplies on
// the grid, and zeroes the product beyond the same cutoff. With the default
// fraction 2/3 the retained product modes are exact: a wrapped image of a
// true product mode |k| <= 2*(2K/3) lands at |k| >= n - 4K/3 > 2K/3 and is
// discarded.
//
// The exact rule evaluates the product on a doubled grid, where the full
// product band (up to 2K) is below that grid's Nyquist, then truncates back
// to the original band. Every retained coefficient equals the true
// convolution; content above K is lost, as any fixed-band representation
// must lose it.
struct ProductRule {
  double fraction = 2.0 / 3.0;
  bool exact = false;

  static ProductRule dealias(double f) { return {f, false}; }
  static ProductRule exact_convolution() { return {1.0, true}; }
};

PeriodicField multiply(const PeriodicField& a, const PeriodicField& b,
                       ProductRule rule = {});

// Direct O(K^2) convolution sum over the retained bands,
//   chat(k) = sum_l ahat(k-l) bhat(l),  |l| <= K, |k-l| <= K.
// Slow and dependency-free on purpose; this is the reference the transform
// paths are tested against, so it must not share code with them.
Spectrum convolve_reference(const Spectrum& a, const Spectrum& b);

}  // namespace cvsheet
