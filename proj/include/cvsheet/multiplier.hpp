#pragma once

#include <complex>
#include <functional>

#include "cvsheet/field.hpp"
#include "cvsheet/grid.hpp"
#include "cvsheet/spectrum.hpp"

namespace cvsheet {

// Diagonal operator in Fourier space: (A f)hat(k) = a(k) fhat(k) over the
// retained band. `order` is the growth order m used for the operator-class
// bound C = max_k (1+k^2)^{-m/2} |a(k)|, which the constructor computes from
// the sampled values; it is finite by construction on a finite band.
class MultiplierSymbol {
 public:
  MultiplierSymbol(const Grid& grid, double order,
                   const std::function<std::complex<double>(int)>& symbol);

  static MultiplierSymbol identity(const Grid& grid);
  static MultiplierSymbol derivative(const Grid& grid, int p);  // (i k)^p, p >= 0
  static MultiplierSymbol bracket(const Grid& grid, double s);  // (1+k^2)^(s/2)
  static MultiplierSymbol hilbert(const Grid& grid);            // -i sgn k, sgn 0 = 0

  const Grid& grid() const { return grid_; }
  double order() const { return order_; }
  double bound() const { return bound_; }
  std::complex<double> value(int k) const { return values_.at(k); }

 private:
  Grid grid_;
  double order_;
  double bound_;
  Spectrum values_;  // reuses the banded storage; not a field spectrum
};

Spectrum apply_multiplier(const MultiplierSymbol& a, const Spectrum& s);
PeriodicField apply_multiplier(const MultiplierSymbol& a, const PeriodicField& f);

// Common shorthands.
PeriodicField derivative(const PeriodicField& f, int p);
PeriodicField bracket(const PeriodicField& f, double s);

}  // namespace cvsheet
