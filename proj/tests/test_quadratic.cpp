#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cvsheet/evolution.hpp"
#include "cvsheet/field.hpp"
#include "cvsheet/hilbert.hpp"
#include "cvsheet/multiplier.hpp"
#include "cvsheet/products.hpp"
#include "cvsheet/quadratic.hpp"
#include "cvsheet/rng.hpp"
#include "doctest.h"

using namespace cvsheet;
using std::numbers::pi;

namespace {

PeriodicField random_field(const Grid& g, std::uint64_t seed, int band,
                           double decay = 0.0) {
  SplitMix64 rng(seed);
  Spectrum s(g);
  for (int k = 1; k <= band; ++k) {
    double mag = rng.uniform() / std::pow(static_cast<double>(k), decay);
    std::complex<double> c = std::polar(mag, 2.0 * pi * rng.uniform());
    s.at(k) = c;
    s.at(-k) = std::conj(c);
  }
  return PeriodicField::from_spectrum(s);
}

PeriodicField trig(const Grid& g, double a, int k, double phase) {
  std::vector<double> f(static_cast<std::size_t>(g.n()));
  for (int j = 0; j < g.n(); ++j)
    f[static_cast<std::size_t>(j)] = a * std::cos(k * g.node(j) + phase);
  return PeriodicField::from_samples(g, f);
}

// Third, fully independent route to Q: the symmetrized kernel double sum.
// No Hilbert transforms, no region shortcuts, nothing shared with q_spectral.
Spectrum q_kernel_oracle(const PeriodicField& f) {
  const Grid& g = f.grid();
  const int K = g.max_mode();
  Spectrum out(g);
  for (int k = -K; k <= K; ++k) {
    std::complex<double> acc = 0.0;
    for (int l = -K; l <= K; ++l) {
      int m = k - l;
      if (std::abs(m) > K) continue;
      acc += kernel_lambda_sym(m, l) * f.spectrum().at(m) * f.spectrum().at(l);
    }
    out.at(k) = acc;
  }
  return out;
}

}  // namespace

TEST_CASE("kernel values at pinned points") {
  CHECK(kernel_lambda(-1, 3) == 0.0);
  CHECK(kernel_lambda(3, -1) == 16.0);
  CHECK(kernel_lambda_sym(-1, 3) == 8.0);
  CHECK(kernel_lambda_sym(3, -1) == 8.0);
  CHECK(kernel_lambda_sym(2, 3) == 0.0);
  CHECK(kernel_lambda_sym(0, 5) == 0.0);
  CHECK(kernel_lambda_sym(5, 0) == 0.0);
  CHECK(kernel_lambda_sym(1, -1) == 2.0);
  CHECK(kernel_lambda_sym(2, -2) == 16.0);  // 2 k^3 at the opposite pair
}

TEST_CASE("kernel symmetry, reflection reality and support on a box") {
  for (long long m = -60; m <= 60; ++m)
    for (long long l = -60; l <= 60; ++l) {
      double s = kernel_lambda_sym(m, l);
      CHECK(s == kernel_lambda_sym(l, m));
      CHECK(s == kernel_lambda_sym(-m, -l));
      if (m * l >= 0) {
        CHECK(s == 0.0);
      } else {
        CHECK(s != 0.0);
      }
      // integrality: the symmetrization never produces half-integers
      CHECK(s == std::floor(s));
    }
}

TEST_CASE("closed form on the mixed-sign region with positive sum") {
  for (long long m = -40; m < 0; ++m)
    for (long long l = 1 - m; l <= 60; ++l) {
      // m < 0 < l with m + l > 0
      double want = static_cast<double>(m * m) * static_cast<double>(3 * l + m);
      CHECK(kernel_lambda_sym(m, l) == want);
    }
}

TEST_CASE("region classification") {
  CHECK(region_classify(-1, 3) == KernelRegion::FI);
  CHECK(region_classify(-3, 1) == KernelRegion::FII);
  CHECK(region_classify(-3, 3) == KernelRegion::FII);  // boundary m + l = 0
  CHECK(region_classify(1, -3) == KernelRegion::FIII);
  CHECK(region_classify(3, -3) == KernelRegion::FIII);
  CHECK(region_classify(3, -1) == KernelRegion::FIV);
  CHECK(region_classify(2, 3) == KernelRegion::Zero);
  CHECK(region_classify(-2, -3) == KernelRegion::Zero);
  CHECK(region_classify(0, 7) == KernelRegion::Zero);
  CHECK(region_classify(7, 0) == KernelRegion::Zero);
  CHECK(std::string(to_string(KernelRegion::FI)) == "F_I");
}

TEST_CASE("kernel dump emits a parseable csv") {
  std::ostringstream os;
  kernel_dump(os, -1, 1, 2, 3);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "m,l,region,lambda,lambda_sym");
  std::getline(is, line);
  // lambda(-1,2) = 0 since sgn(m+l) = sgn l; the transpose contributes 10
  CHECK(line == "-1,2,F_I,0,5");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 5);  // 3 m-values x 2 l-values minus the already-read first
}

TEST_CASE("single mode closed form: Q[a cos(kx + theta)] = a^2 k^3") {
  Grid g(64);
  for (int k : {1, 2, 3, 5}) {
    for (double a : {0.5, 1.0, 2.0}) {
      for (double theta : {0.0, 0.9}) {
        PeriodicField q = q_spectral(trig(g, a, k, theta));
        double want = a * a * static_cast<double>(k) * k * k;
        for (double s : q.samples()) CHECK(std::abs(s - want) < 1e-12 * want);
      }
    }
  }
}

TEST_CASE("three independent routes to Q agree on full-band fields") {
  Grid g(64);
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
    PeriodicField f = random_field(g, seed, g.max_mode(), 1.5);
    PeriodicField qs = q_spectral(f);
    PeriodicField qc = q_commutator(f, ProductRule::exact_convolution());
    Spectrum qk = q_kernel_oracle(f);

    double scale = std::max(1.0, sobolev_norm(f, 3.0));
    scale *= scale;
    for (int k = -g.max_mode(); k <= g.max_mode(); ++k) {
      CHECK(std::abs(qs.spectrum().at(k) - qk.at(k)) < 1e-11 * scale);
      CHECK(std::abs(qc.spectrum().at(k) - qk.at(k)) < 1e-11 * scale);
    }
  }
}

TEST_CASE("dealiased commutator route matches on the protected band") {
  Grid g(128);  // K = 63, cutoff = 42
  PeriodicField f = random_field(g, 9, 42, 1.0);
  PeriodicField qc = q_commutator(f);  // default 2/3 rule
  Spectrum qk = q_kernel_oracle(f);
  double scale = std::max(1.0, sobolev_norm(f, 3.0));
  scale *= scale;
  for (int k = -42; k <= 42; ++k)
    CHECK(std::abs(qc.spectrum().at(k) - qk.at(k)) < 1e-11 * scale);
}

TEST_CASE("Q never widens the band of its input") {
  Grid g(128);
  PeriodicField f = random_field(g, 21, 30);
  PeriodicField q = q_spectral(f);
  for (int k = 31; k <= g.max_mode(); ++k) {
    CHECK(std::abs(q.spectrum().at(k)) == 0.0);
    CHECK(std::abs(q.spectrum().at(-k)) == 0.0);
  }
}

TEST_CASE("Q of a band-limited field is invariant under grid refinement") {
  PeriodicField coarse = random_field(Grid(64), 33, 31, 1.0);
  Grid fine(256);
  Spectrum embedded(fine);
  for (int k = -31; k <= 31; ++k) embedded.at(k) = coarse.spectrum().at(k);
  PeriodicField q_coarse = q_spectral(coarse);
  PeriodicField q_fine = q_spectral(PeriodicField::from_spectrum(embedded));
  for (int k = -31; k <= 31; ++k)
    CHECK(std::abs(q_fine.spectrum().at(k) - q_coarse.spectrum().at(k)) < 1e-13);
  for (int k = 32; k <= fine.max_mode(); ++k)
    CHECK(std::abs(q_fine.spectrum().at(k)) == 0.0);
}

TEST_CASE("fields with a mean are rejected") {
  Grid g(64);
  std::vector<double> c(64, 0.5);
  for (int j = 0; j < 64; ++j) c[static_cast<std::size_t>(j)] += std::cos(g.node(j));
  PeriodicField f = PeriodicField::from_samples(g, c);
  CHECK_THROWS_AS(q_spectral(f), std::invalid_argument);
  CHECK_THROWS_AS(q_commutator(f), std::invalid_argument);
  CHECK_THROWS_AS(flux_rhs(f), std::invalid_argument);
}

TEST_CASE("flux form of the rhs against hand values") {
  Grid g(64);
  PeriodicField f = trig(g, 1.0, 1, 0.0);

  // flux_rhs(cos x) = cos 2x
  PeriodicField fr = flux_rhs(f, ProductRule::exact_convolution());
  for (int j = 0; j < g.n(); ++j)
    CHECK(std::abs(fr.samples()[static_cast<std::size_t>(j)] -
                   std::cos(2.0 * g.node(j))) < 1e-11);

  // and it decomposes as -2 (H f)_x f_xx - Q[f] under the same product rule
  for (std::uint64_t seed : {11ull, 12ull}) {
    PeriodicField h = random_field(g, seed, 31, 1.0);
    PeriodicField lhs = flux_rhs(h, ProductRule::exact_convolution());
    PeriodicField gx = derivative(hilbert(h), 1);
    PeriodicField want = -2.0 * multiply(gx, derivative(h, 2), ProductRule::exact_convolution()) -
                         q_commutator(h, ProductRule::exact_convolution());
    double scale = std::max(1.0, sobolev_norm(h, 3.0));
    scale *= scale;
    for (std::size_t j = 0; j < lhs.samples().size(); ++j)
      CHECK(std::abs(lhs.samples()[j] - want.samples()[j]) < 1e-11 * scale);
  }
}

TEST_CASE("first order rhs of cos x is -sin(2x)/2") {
  Grid g(64);
  PeriodicField f = trig(g, 1.0, 1, 0.0);
  PeriodicField r = first_order_rhs(f, ProductRule::exact_convolution());
  for (int j = 0; j < g.n(); ++j)
    CHECK(std::abs(r.samples()[static_cast<std::size_t>(j)] +
                   0.5 * std::sin(2.0 * g.node(j))) < 1e-13);
}

TEST_CASE("q norm bound report is deterministic and refinement stable") {
  std::vector<int> grids = {128, 256};
  auto rows = q_norm_bound_report(40, 2.0, grids, 5);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].lemma == "q_sobolev_bound");
  CHECK(rows[0].n_points == 128);
  CHECK(rows[1].n_points == 256);
  for (const auto& r : rows) {
    CHECK(r.max_ratio > 0.0);
    CHECK(std::isfinite(r.max_ratio));
    CHECK(r.max_ratio >= r.mean_ratio);
  }
  double a = rows[0].max_ratio, b = rows[1].max_ratio;
  CHECK(std::abs(a - b) / std::max(a, b) < 0.10);

  auto again = q_norm_bound_report(40, 2.0, grids, 5);
  CHECK(again[0].max_ratio == rows[0].max_ratio);
  CHECK(again[1].mean_ratio == rows[1].mean_ratio);
}
