#include "cvsheet/multiplier.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cvsheet {

namespace {

double sgn(int k) { return k > 0 ? 1.0 : (k < 0 ? -1.0 : 0.0); }

// (i*k)^p without going through complex pow, which rounds the purely
// real/imaginary cases. i^p cycles with period 4 and k^p stays an exactly
// representable integer at the mode counts this library handles.
std::complex<double> ik_power(int k, int p) {
  double kp = 1.0;
  for (int i = 0; i < p; ++i) kp *= static_cast<double>(k);
  switch (p % 4) {
    case 0: return {kp, 0.0};
    case 1: return {0.0, kp};
    case 2: return {-kp, 0.0};
    default: return {0.0, -kp};
  }
}

}  // namespace

MultiplierSymbol::MultiplierSymbol(const Grid& grid, double order,
                                   const std::function<std::complex<double>(int)>& symbol)
    : grid_(grid), order_(order), bound_(0.0), values_(grid) {
  int K = grid.max_mode();
  for (int k = -K; k <= K; ++k) {
    std::complex<double> a = symbol(k);
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw std::invalid_argument("MultiplierSymbol: non-finite symbol value at k = " +
                                  std::to_string(k));
    values_.at(k) = a;
    double w = std::pow(1.0 + static_cast<double>(k) * k, -order / 2.0);
    bound_ = std::max(bound_, w * std::abs(a));
  }
}

MultiplierSymbol MultiplierSymbol::identity(const Grid& grid) {
  return MultiplierSymbol(grid, 0.0, [](int) { return std::complex<double>(1.0, 0.0); });
}

MultiplierSymbol MultiplierSymbol::derivative(const Grid& grid, int p) {
  if (p < 0) throw std::invalid_argument("MultiplierSymbol::derivative: p must be >= 0");
  return MultiplierSymbol(grid, static_cast<double>(p),
                          [p](int k) { return ik_power(k, p); });
}

MultiplierSymbol MultiplierSymbol::bracket(const Grid& grid, double s) {
  return MultiplierSymbol(grid, s, [s](int k) {
    return std::complex<double>(std::pow(1.0 + static_cast<double>(k) * k, s / 2.0), 0.0);
  });
}

MultiplierSymbol MultiplierSymbol::hilbert(const Grid& grid) {
  return MultiplierSymbol(grid, 0.0, [](int k) {
    return std::complex<double>(0.0, -sgn(k));
  });
}

Spectrum apply_multiplier(const MultiplierSymbol& a, const Spectrum& s) {
  require_same_grid(a.grid(), s.grid(), "apply_multiplier");
  int K = s.max_mode();
  Spectrum out(s.grid());
  for (int k = -K; k <= K; ++k) out.at(k) = a.value(k) * s.at(k);
  return out;
}

PeriodicField apply_multiplier(const MultiplierSymbol& a, const PeriodicField& f) {
  return PeriodicField::from_spectrum(apply_multiplier(a, f.spectrum()));
}

PeriodicField derivative(const PeriodicField& f, int p) {
  return apply_multiplier(MultiplierSymbol::derivative(f.grid(), p), f);
}

PeriodicField bracket(const PeriodicField& f, double s) {
  return apply_multiplier(MultiplierSymbol::bracket(f.grid(), s), f);
}

}  // namespace cvsheet
