#include "cvsheet/products.hpp"

#include <stdexcept>

namespace cvsheet {

namespace {

PeriodicField multiply_truncated(const PeriodicField& a, const PeriodicField& b,
                                 double fraction) {
  const Grid& g = a.grid();
  int K = g.max_mode();
  int cut = dealias_cutoff(K, fraction);

  // Skip the re-synthesis when a factor already lives inside the cutoff;
  // the cached samples are then exactly the truncated ones.
  auto band_limited = [cut, K](const Spectrum& s) {
    for (int k = cut + 1; k <= K; ++k)
      if (s.at(k) != 0.0 || s.at(-k) != 0.0) return false;
    return true;
  };
  PeriodicField ta = band_limited(a.spectrum())
                         ? a
                         : PeriodicField::from_spectrum(dealias(a.spectrum(), fraction));
  PeriodicField tb = band_limited(b.spectrum())
                         ? b
                         : PeriodicField::from_spectrum(dealias(b.spectrum(), fraction));

  std::vector<double> prod(ta.samples());
  for (std::size_t j = 0; j < prod.size(); ++j) prod[j] *= tb.samples()[j];
  return PeriodicField::from_spectrum(dealias(analyze(g, prod), fraction));
}

PeriodicField multiply_exact(const PeriodicField& a, const PeriodicField& b) {
  const Grid& g = a.grid();
  int K = g.max_mode();
  Grid fine(2 * g.n());

  auto embed = [&](const Spectrum& s) {
    Spectrum out(fine);
    for (int k = -K; k <= K; ++k) out.at(k) = s.at(k);
    return PeriodicField::from_spectrum(out);
  };
  PeriodicField fa = embed(a.spectrum());
  PeriodicField fb = embed(b.spectrum());

  std::vector<double> prod(fa.samples());
  for (std::size_t j = 0; j < prod.size(); ++j) prod[j] *= fb.samples()[j];
  Spectrum wide = analyze(fine, prod);

  // True product modes reach 2K = n - 2, strictly inside the doubled grid's
  // band (its max mode is n - 1), so nothing wrapped. Keep |k| <= K.
  Spectrum out(g);
  for (int k = -K; k <= K; ++k) out.at(k) = wide.at(k);
  return PeriodicField::from_spectrum(out);
}

}  // namespace

PeriodicField multiply(const PeriodicField& a, const PeriodicField& b, ProductRule rule) {
  require_same_grid(a.grid(), b.grid(), "multiply");
  if (rule.exact) return multiply_exact(a, b);
  return multiply_truncated(a, b, rule.fraction);
}

Spectrum convolve_reference(const Spectrum& a, const Spectrum& b) {
  require_same_grid(a.grid(), b.grid(), "convolve_reference");
  int K = a.max_mode();
  Spectrum out(a.grid());
  for (int k = -K; k <= K; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (int l = -K; l <= K; ++l) {
      int m = k - l;
      if (m < -K || m > K) continue;
      acc += a.at(m) * b.at(l);
    }
    out.at(k) = acc;
  }
  return out;
}

}  // namespace cvsheet
