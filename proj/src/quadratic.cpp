#include "cvsheet/quadratic.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

#include "cvsheet/initial_data.hpp"
#include "cvsheet/multiplier.hpp"

namespace cvsheet {

namespace {

long long isgn(long long v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

long long lambda_ll(long long m, long long l) {
  return -(isgn(m + l) - isgn(l)) * l * l * (3 * m + l) * isgn(m) * isgn(l);
}

void check_mean_free(const PeriodicField& f, const char* where) {
  double scale = std::max(1.0, f.spectrum().linf());
  if (std::abs(f.mean()) > 1e-12 * scale)
    throw std::invalid_argument(std::string(where) +
                                ": input must be mean-free, got mean " +
                                std::to_string(f.mean()));
}

}  // namespace

double kernel_lambda(long long m, long long l) {
  return static_cast<double>(lambda_ll(m, l));
}

double kernel_lambda_sym(long long m, long long l) {
  long long s = lambda_ll(m, l) + lambda_ll(l, m);
  assert(s % 2 == 0);  // holds on every quadrant; see the closed forms
  return static_cast<double>(s / 2);
}

const char* to_string(KernelRegion r) {
  switch (r) {
    case KernelRegion::Zero: return "zero";
    case KernelRegion::FI: return "F_I";
    case KernelRegion::FII: return "F_II";
    case KernelRegion::FIII: return "F_III";
    default: return "F_IV";
  }
}

KernelRegion region_classify(long long m, long long l) {
  // Sign test rather than the product m*l, which could overflow for large
  // 64-bit inputs.
  bool same_sign = (m > 0 && l > 0) || (m < 0 && l < 0) || m == 0 || l == 0;
  if (same_sign) return KernelRegion::Zero;
  if (m < 0) return m + l > 0 ? KernelRegion::FI : KernelRegion::FII;
  return m + l > 0 ? KernelRegion::FIV : KernelRegion::FIII;
}

KernelPoint kernel_point(long long m, long long l) {
  return KernelPoint{m, l, region_classify(m, l), kernel_lambda(m, l),
                     kernel_lambda_sym(m, l)};
}

void kernel_dump(std::ostream& os, long long m_min, long long m_max, long long l_min,
                 long long l_max) {
  if (m_min > m_max || l_min > l_max)
    throw std::invalid_argument("kernel_dump: empty range");
  os << "m,l,region,lambda,lambda_sym\n";
  char buf[80];
  for (long long m = m_min; m <= m_max; ++m)
    for (long long l = l_min; l <= l_max; ++l) {
      KernelPoint p = kernel_point(m, l);
      std::snprintf(buf, sizeof buf, "%lld,%lld,%s,%.17g,%.17g\n", p.m, p.l,
                    to_string(p.region), p.lambda, p.lambda_sym);
      os << buf;
    }
  if (!os) throw std::runtime_error("kernel_dump: stream write failed");
}

PeriodicField q_spectral(const PeriodicField& f) {
  check_mean_free(f, "q_spectral");
  const Spectrum& s = f.spectrum();
  int K = s.max_mode();
  Spectrum out(f.grid());

  double zero = 0.0;
  for (int l = 1; l <= K; ++l) {
    double l3 = static_cast<double>(l) * l * l;
    zero += l3 * std::norm(s.at(l));
  }
  out.at(0) = 4.0 * zero;

  for (int k = 1; k <= K; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (int l = k + 1; l <= K; ++l) {
      double d = static_cast<double>(k - l);
      double w = 2.0 * d * d * (k + 2.0 * l);
      acc += w * s.at(k - l) * s.at(l);
    }
    out.at(k) = acc;
    out.at(-k) = std::conj(acc);
  }
  return PeriodicField::from_spectrum(out);
}

PeriodicField q_commutator(const PeriodicField& f, ProductRule rule) {
  check_mean_free(f, "q_commutator");
  PeriodicField g = hilbert(f);
  PeriodicField gx = derivative(g, 1);
  // [H; g_x] g_xx  and  [H; g] g_xxx
  PeriodicField c1 = commutator_h(gx, g, 2, rule);
  PeriodicField c2 = commutator_h(g, g, 3, rule);
  return -3.0 * c1 - c2;
}

PeriodicField flux_rhs(const PeriodicField& f, ProductRule rule) {
  check_mean_free(f, "flux_rhs");
  PeriodicField g = hilbert(f);
  PeriodicField fxx = derivative(f, 2);
  PeriodicField inner =
      0.5 * derivative(hilbert(multiply(g, g, rule)), 2) + multiply(g, fxx, rule);
  return derivative(inner, 1);
}

std::vector<EstimateRow> q_norm_bound_report(int trials, double r,
                                             std::span<const int> grid_sizes,
                                             std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("q_norm_bound_report: trials >= 1");
  if (grid_sizes.empty()) throw std::invalid_argument("q_norm_bound_report: no grid sizes");

  int n_min = *std::min_element(grid_sizes.begin(), grid_sizes.end());
  int band = dealias_cutoff(Grid(n_min).max_mode(), 2.0 / 3.0);
  // Steep enough that f_x genuinely lies in H^max(2, r); see the matching
  // note on commutator_estimate_report.
  double decay = r + 3.0;

  std::vector<EstimateRow> rows;
  for (int n : grid_sizes) {
    Grid grid(n);
    double max_ratio = 0.0, sum = 0.0;
    int used = 0;
    for (int t = 0; t < trials; ++t) {
      PeriodicField f = random_band_field(
          grid, seed + 1000ull * static_cast<std::uint64_t>(t), 1, band, decay, 1.0);
      PeriodicField fx = derivative(f, 1);
      double den = sobolev_norm(fx, 2.0) * sobolev_norm(fx, r);
      if (!(den > 1e-300)) continue;
      double ratio = sobolev_norm(q_spectral(f), r) / den;
      max_ratio = std::max(max_ratio, ratio);
      sum += ratio;
      ++used;
    }
    if (used == 0)
      throw std::runtime_error("q_norm_bound_report: degenerate ensemble");
    rows.push_back(EstimateRow{"q_sobolev_bound", r, 0, n, used, max_ratio, sum / used});
  }
  return rows;
}

}  // namespace cvsheet
