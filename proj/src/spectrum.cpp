#include "cvsheet/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cvsheet {

Spectrum::Spectrum(Grid grid)
    : grid_(grid), c_(2 * static_cast<std::size_t>(grid.max_mode()) + 1) {}

std::size_t Spectrum::index(int k) const {
  int K = grid_.max_mode();
  if (k < -K || k > K)
    throw std::out_of_range("Spectrum: mode " + std::to_string(k) +
                            " outside retained band |k| <= " + std::to_string(K));
  return static_cast<std::size_t>(k + K);
}

double Spectrum::linf() const {
  double m = 0.0;
  for (const auto& z : c_) m = std::max(m, std::abs(z));
  return m;
}

double Spectrum::hermitian_defect() const {
  int K = grid_.max_mode();
  double d = std::abs(at(0).imag());
  for (int k = 1; k <= K; ++k)
    d = std::max(d, std::abs(at(-k) - std::conj(at(k))));
  return d;
}

int dealias_cutoff(int max_mode, double fraction) {
  // Nudge before flooring so that an exactly representable product like
  // (2/3)*63 = 42 is not pushed below the intended integer by the rounding
  // of 2/3 itself.
  return static_cast<int>(std::floor(fraction * max_mode + 1e-9));
}

Spectrum dealias(const Spectrum& s, double fraction) {
  if (!(fraction > 0.0) || fraction > 1.0)
    throw std::invalid_argument("dealias: fraction must lie in (0, 1], got " +
                                std::to_string(fraction));
  int K = s.max_mode();
  int cut = dealias_cutoff(K, fraction);
  Spectrum out(s.grid());
  for (int k = -K; k <= K; ++k)
    if (std::abs(k) <= cut) out.at(k) = s.at(k);
  return out;
}

}  // namespace cvsheet
