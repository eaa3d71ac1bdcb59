#include "cvsheet/field.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cvsheet/fft.hpp"

namespace cvsheet {

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (a != b)
    throw std::invalid_argument(std::string(where) + ": grid mismatch (n = " +
                                std::to_string(a.n()) + " vs " +
                                std::to_string(b.n()) + ")");
}

Spectrum analyze(const Grid& grid, std::span<const double> samples) {
  if (static_cast<int>(samples.size()) != grid.n())
    throw std::invalid_argument("analyze: expected " + std::to_string(grid.n()) +
                                " samples, got " + std::to_string(samples.size()));
  for (double v : samples)
    if (!std::isfinite(v))
      throw std::invalid_argument("analyze: non-finite sample");

  std::vector<std::complex<double>> buf(samples.begin(), samples.end());
  fft::forward(buf);

  int n = grid.n();
  int K = grid.max_mode();
  Spectrum s(grid);
  // Project onto exactly conjugate-symmetric coefficients. The input is real,
  // so the averaging only removes transform roundoff, but making the symmetry
  // bit-exact matters: every downstream operator preserves it exactly, and
  // runs on the ill-posed side (margin < 0) amplify band-edge roundoff at the
  // rate of the largest mode, so an asymmetry seeded here would grow into a
  // spurious imaginary part instead of staying a real-field perturbation.
  s.at(0) = buf[0].real() / static_cast<double>(n);
  for (int k = 1; k <= K; ++k) {
    std::complex<double> plus = buf[static_cast<std::size_t>(k)];
    std::complex<double> minus = buf[static_cast<std::size_t>(n - k)];
    std::complex<double> half = 0.5 * (plus + std::conj(minus)) / static_cast<double>(n);
    s.at(k) = half;
    s.at(-k) = std::conj(half);
  }
  return s;
}

std::vector<double> synthesize(const Spectrum& s) {
  // The tolerance is relative to the coefficients themselves, with no
  // absolute floor: a floor would misfire on legitimately tiny fields, and a
  // clean zero spectrum has defect exactly zero anyway.
  double defect = s.hermitian_defect();
  if (defect > 1e-10 * s.linf())
    throw std::invalid_argument(
        "synthesize: inconsistent spectrum, Hermitian defect " +
        std::to_string(defect) + " exceeds 1e-10 relative tolerance");

  const Grid& grid = s.grid();
  int n = grid.n();
  int K = grid.max_mode();
  std::vector<std::complex<double>> buf(static_cast<std::size_t>(n));
  for (int k = -K; k <= K; ++k)
    buf[static_cast<std::size_t>((k + n) % n)] = s.at(k);
  // Nyquist slot n/2 stays zero: it is outside the retained band.
  fft::backward(buf);

  // Coarse post-transform net. The strict consistency contract is the defect
  // gate above; transform roundoff on anything that passed it sits many
  // orders below this line.
  double max_re = 0.0, max_im = 0.0;
  for (const auto& z : buf) {
    max_re = std::max(max_re, std::abs(z.real()));
    max_im = std::max(max_im, std::abs(z.imag()));
  }
  if (max_im > 1e-7 * std::max(max_re, s.linf()))
    throw std::invalid_argument(
        "synthesize: imaginary residue " + std::to_string(max_im) +
        "; spectrum does not describe a real field");

  std::vector<double> out(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = buf[static_cast<std::size_t>(j)].real();
  return out;
}

PeriodicField::PeriodicField(Grid grid, std::vector<double> samples, Spectrum spectrum)
    : grid_(grid), samples_(std::move(samples)), spectrum_(std::move(spectrum)) {}

PeriodicField PeriodicField::from_samples(const Grid& grid, std::vector<double> samples) {
  Spectrum s = analyze(grid, samples);
  return PeriodicField(grid, std::move(samples), std::move(s));
}

PeriodicField PeriodicField::from_spectrum(const Spectrum& s) {
  return PeriodicField(s.grid(), synthesize(s), s);
}

PeriodicField PeriodicField::zero(const Grid& grid) {
  return PeriodicField(grid, std::vector<double>(static_cast<std::size_t>(grid.n()), 0.0),
                       Spectrum(grid));
}

double PeriodicField::linf() const {
  double m = 0.0;
  for (double v : samples_) m = std::max(m, std::abs(v));
  return m;
}

PeriodicField operator+(const PeriodicField& a, const PeriodicField& b) {
  require_same_grid(a.grid_, b.grid_, "field +");
  std::vector<double> samples(a.samples_);
  for (std::size_t j = 0; j < samples.size(); ++j) samples[j] += b.samples_[j];
  Spectrum s(a.spectrum_);
  int K = a.grid_.max_mode();
  for (int k = -K; k <= K; ++k) s.at(k) += b.spectrum_.at(k);
  return PeriodicField(a.grid_, std::move(samples), std::move(s));
}

PeriodicField operator-(const PeriodicField& a, const PeriodicField& b) {
  return a + (-1.0 * b);
}

PeriodicField operator*(double c, const PeriodicField& f) {
  std::vector<double> samples(f.samples_);
  for (double& v : samples) v *= c;
  Spectrum s(f.spectrum_);
  int K = f.grid_.max_mode();
  for (int k = -K; k <= K; ++k) s.at(k) *= c;
  return PeriodicField(f.grid_, std::move(samples), std::move(s));
}

PeriodicField enforce_zero_mean(const PeriodicField& f) {
  Spectrum s(f.spectrum());
  s.at(0) = 0.0;
  return PeriodicField::from_spectrum(s);
}

double sobolev_norm(const Spectrum& s, double sob_index) {
  int K = s.max_mode();
  double acc = 0.0;
  for (int k = -K; k <= K; ++k) {
    double w = std::pow(1.0 + static_cast<double>(k) * k, sob_index);
    acc += w * std::norm(s.at(k));
  }
  return std::sqrt(2.0 * std::numbers::pi * acc);
}

double sobolev_norm(const PeriodicField& f, double s) {
  return sobolev_norm(f.spectrum(), s);
}

double inner_l2(const PeriodicField& f, const PeriodicField& g) {
  require_same_grid(f.grid(), g.grid(), "inner_l2");
  int K = f.grid().max_mode();
  double acc = 0.0;
  for (int k = -K; k <= K; ++k)
    acc += (f.spectrum().at(k) * std::conj(g.spectrum().at(k))).real();
  return 2.0 * std::numbers::pi * acc;
}

}  // namespace cvsheet
