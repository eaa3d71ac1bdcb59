#include "cvsheet/checks.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>

#include "cvsheet/evolution.hpp"
#include "cvsheet/hilbert.hpp"
#include "cvsheet/initial_data.hpp"
#include "cvsheet/multiplier.hpp"
#include "cvsheet/products.hpp"
#include "cvsheet/quadratic.hpp"

namespace cvsheet {

namespace {

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

CheckResult residual_check(const char* name, double worst, double tol) {
  return CheckResult{name, worst <= tol,
                     "worst " + fmt(worst) + " (tol " + fmt(tol) + ")"};
}

}  // namespace

std::vector<CheckResult> run_identity_checks(std::uint64_t seed, int trials, int n) {
  std::vector<CheckResult> out;
  Grid grid(n);
  int band = dealias_cutoff(grid.max_mode(), 2.0 / 3.0);
  auto field = [&](std::uint64_t s, double decay) {
    return random_band_field(grid, s, 1, band, decay, 1.0);
  };

  {  // samples -> spectrum -> samples, and an explicit slow DFT cross-check
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
      PeriodicField f = field(seed + 10 * static_cast<std::uint64_t>(t), 2.0);
      std::vector<double> back = synthesize(f.spectrum());
      for (int j = 0; j < n; ++j)
        worst = std::max(worst, std::abs(back[static_cast<std::size_t>(j)] -
                                         f.samples()[static_cast<std::size_t>(j)]));
    }
    PeriodicField f = field(seed + 1, 2.0);
    for (int k = -grid.max_mode(); k <= grid.max_mode(); ++k) {
      std::complex<double> acc(0.0, 0.0);
      for (int j = 0; j < n; ++j)
        acc += f.samples()[static_cast<std::size_t>(j)] *
               std::exp(std::complex<double>(0.0, -k * grid.node(j)));
      worst = std::max(worst, std::abs(acc / static_cast<double>(n) -
                                       f.spectrum().at(k)));
    }
    out.push_back(residual_check("transform_roundtrip", worst, 1e-12));
  }

  {  // quadrature L2 norm vs Parseval sum
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
      PeriodicField f = field(seed + 20 + 10 * static_cast<std::uint64_t>(t), 2.0);
      double quad = 0.0;
      for (double v : f.samples()) quad += v * v;
      quad *= grid.spacing();
      double spec = sobolev_norm(f, 0.0);
      worst = std::max(worst, std::abs(quad - spec * spec) / std::max(1.0, spec * spec));
    }
    out.push_back(residual_check("parseval", worst, 1e-10));
  }

  {  // Hilbert transform on explicit trig fields
    std::vector<double> c(static_cast<std::size_t>(n)), s(static_cast<std::size_t>(n)),
        one(static_cast<std::size_t>(n), 1.0);
    for (int j = 0; j < n; ++j) {
      c[static_cast<std::size_t>(j)] = std::cos(grid.node(j));
      s[static_cast<std::size_t>(j)] = std::sin(grid.node(j));
    }
    PeriodicField fc = PeriodicField::from_samples(grid, c);
    PeriodicField fs = PeriodicField::from_samples(grid, s);
    PeriodicField f1 = PeriodicField::from_samples(grid, one);
    double worst = sobolev_norm(hilbert(fc) - fs, 0.0);
    worst = std::max(worst, sobolev_norm(hilbert(fs) + fc, 0.0));
    worst = std::max(worst, sobolev_norm(hilbert(f1), 0.0));
    out.push_back(residual_check("hilbert_trig_action", worst, 1e-12));
  }

  {  // H^2 = -(1 - mean), isometry off the mean, skew-adjointness
    double worst_sq = 0.0, worst_iso = 0.0, worst_adj = 0.0;
    for (int t = 0; t < trials; ++t) {
      PeriodicField f = field(seed + 40 + 10 * static_cast<std::uint64_t>(t), 2.0);
      PeriodicField g = field(seed + 41 + 10 * static_cast<std::uint64_t>(t), 2.0);
      worst_sq = std::max(worst_sq, hilbert_squared_residual(f));
      worst_iso = std::max(worst_iso, std::abs(sobolev_norm(hilbert(f), 0.0) -
                                               sobolev_norm(f, 0.0)));
      worst_adj = std::max(worst_adj, adjoint_residual(f, g));
    }
    out.push_back(residual_check("hilbert_squared", worst_sq, 1e-10));
    out.push_back(residual_check("hilbert_isometry", worst_iso, 1e-10));
    out.push_back(residual_check("hilbert_skew_adjoint", worst_adj, 1e-10));
  }

  {  // product identity and commutator symmetry
    double worst_pi = 0.0, worst_sym = 0.0;
    for (int t = 0; t < trials; ++t) {
      PeriodicField f = field(seed + 60 + 10 * static_cast<std::uint64_t>(t), 2.0);
      PeriodicField g = field(seed + 61 + 10 * static_cast<std::uint64_t>(t), 2.0);
      PeriodicField h = field(seed + 62 + 10 * static_cast<std::uint64_t>(t), 2.0);
      worst_pi = std::max(worst_pi, product_identity_residual(f, g));
      worst_sym = std::max(worst_sym, commutator_selfadjoint_residual(h, f, g));
    }
    out.push_back(residual_check("product_identity", worst_pi, 1e-10));
    out.push_back(residual_check("commutator_symmetric", worst_sym, 1e-10));
  }

  {  // commutator: transform pipeline vs explicit double sum, on the safe band
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
      PeriodicField v = field(seed + 80 + 10 * static_cast<std::uint64_t>(t), 2.0);
      PeriodicField f = field(seed + 81 + 10 * static_cast<std::uint64_t>(t), 2.0);
      for (int p = 0; p <= 2; ++p) {
        PeriodicField direct = commutator_h(v, f, p);
        Spectrum ref = commutator_h_spectral(dealias(v.spectrum(), 2.0 / 3.0),
                                             dealias(f.spectrum(), 2.0 / 3.0), p);
        for (int k = -band; k <= band; ++k)
          worst = std::max(worst, std::abs(direct.spectrum().at(k) - ref.at(k)));
      }
    }
    out.push_back(residual_check("commutator_two_routes", worst, 1e-10));
  }

  {  // kernel: frozen values, symmetry, reality, support
    bool ok = kernel_lambda(-1, 3) == 0.0 && kernel_lambda(3, -1) == 16.0 &&
              kernel_lambda_sym(-1, 3) == 8.0 && kernel_lambda_sym(2, 3) == 0.0 &&
              kernel_lambda_sym(0, 5) == 0.0;
    double worst = 0.0;
    for (long long m = -40; m <= 40 && ok; ++m)
      for (long long l = -40; l <= 40; ++l) {
        double sym = kernel_lambda_sym(m, l);
        worst = std::max(worst, std::abs(sym - kernel_lambda_sym(l, m)));
        worst = std::max(worst, std::abs(sym - kernel_lambda_sym(-m, -l)));
        if ((region_classify(m, l) == KernelRegion::Zero) != (m * l >= 0)) ok = false;
        if ((sym == 0.0) != (m * l >= 0)) ok = false;
        if (region_classify(m, l) == KernelRegion::FI &&
            sym != static_cast<double>(m) * m * (3 * l + m))
          ok = false;
      }
    out.push_back(CheckResult{"kernel_values", ok && worst == 0.0,
                              ok ? "exact on [-40,40]^2" : "mismatch"});
  }

  {  // quadratic term: closed-form kernel sum vs commutator assembly vs flux
    double worst_q = 0.0, worst_flux = 0.0, worst_zero = 0.0;
    for (int t = 0; t < trials; ++t) {
      // Band inside half the cutoff so every route is exact on the full band.
      PeriodicField f = random_band_field(grid, seed + 100 + 10 * static_cast<std::uint64_t>(t),
                                          1, band / 2, 2.0, 1.0);
      PeriodicField qs = q_spectral(f);
      PeriodicField qc = q_commutator(f);
      double scale = std::max(1.0, sobolev_norm(f, 3.0));
      worst_q = std::max(worst_q, sobolev_norm(qs - qc, 0.0) / (scale * scale));

      PeriodicField gx = derivative(hilbert(f), 1);
      PeriodicField fxx = derivative(f, 2);
      PeriodicField lhs = flux_rhs(f);
      PeriodicField rhs = -2.0 * multiply(gx, fxx) - qc;
      worst_flux = std::max(worst_flux, sobolev_norm(lhs - rhs, 0.0) / (scale * scale));

      worst_zero = std::max(worst_zero, std::abs(acceleration_zero_mode(f, 1.0)));
    }
    out.push_back(residual_check("quadratic_two_routes", worst_q, 1e-10));
    out.push_back(residual_check("flux_identity", worst_flux, 1e-10));
    out.push_back(residual_check("zero_mode_cancellation", worst_zero, 1e-12));
  }

  {  // single cosine: Q[a cos kx] = a^2 k^3, exactly constant
    double worst = 0.0;
    for (int k = 1; k <= 6; ++k) {
      InitialDataSpec spec;
      spec.amplitude = 0.7;
      spec.mode = k;
      PeriodicField f = materialize_initial_data(spec, grid).phi0;
      double expect = 0.49 * k * k * k;
      PeriodicField q = q_spectral(f);
      for (double v : q.samples())
        worst = std::max(worst, std::abs(v - expect) / expect);
    }
    out.push_back(residual_check("quadratic_single_mode", worst, 1e-12));
  }

  return out;
}

}  // namespace cvsheet
