#pragma once

#include <complex>
#include <vector>

#include "cvsheet/grid.hpp"

namespace cvsheet {

// Dense set of Fourier coefficients over the retained band |k| <= K of a
// grid, K = n/2 - 1. Coefficient convention
//   fhat(k) = (1/2*pi) * integral f(x) exp(-i*k*x) dx,
// so f(x) = sum_k fhat(k) exp(i*k*x). A spectrum describing a real field is
// Hermitian: fhat(-k) = conj(fhat(k)); hermitian_defect() measures how far a
// spectrum is from that.
class Spectrum {
 public:
  explicit Spectrum(Grid grid);

  const Grid& grid() const { return grid_; }
  int max_mode() const { return grid_.max_mode(); }

  std::complex<double> at(int k) const { return c_[index(k)]; }
  std::complex<double>& at(int k) { return c_[index(k)]; }

  // Largest |fhat(k)| over the band.
  double linf() const;

  // max over k of |fhat(-k) - conj(fhat(k))| (the k = 0 term degenerates to
  // |Im fhat(0)|, which is included).
  double hermitian_defect() const;

 private:
  std::size_t index(int k) const;  // throws std::out_of_range for |k| > K

  Grid grid_;
  std::vector<std::complex<double>> c_;  // k = -K..K, offset K
};

// Coefficients with |k| > fraction*K set to zero; everything else copied.
// fraction must lie in (0, 1]. fraction = 1 is the identity. The zeroing is
// symmetric in k, so Hermitian symmetry survives.
Spectrum dealias(const Spectrum& s, double fraction);

// Band edge used by dealias: largest retained |k|.
int dealias_cutoff(int max_mode, double fraction);

}  // namespace cvsheet
