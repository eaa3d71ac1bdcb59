#include "cvsheet/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "cvsheet/initial_data.hpp"
#include "cvsheet/multiplier.hpp"

namespace cvsheet {

namespace {
double sgn(int k) { return k > 0 ? 1.0 : (k < 0 ? -1.0 : 0.0); }

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

Spectrum hilbert(const Spectrum& s) {
  int K = s.max_mode();
  Spectrum out(s.grid());
  for (int k = -K; k <= K; ++k)
    out.at(k) = std::complex<double>(0.0, -sgn(k)) * s.at(k);
  return out;
}

PeriodicField hilbert(const PeriodicField& f) {
  return PeriodicField::from_spectrum(hilbert(f.spectrum()));
}

double hilbert_squared_residual(const PeriodicField& f) {
  PeriodicField hh = hilbert(hilbert(f));
  Spectrum mean_part(f.grid());
  mean_part.at(0) = f.spectrum().at(0);
  PeriodicField m = PeriodicField::from_spectrum(mean_part);
  return sobolev_norm(hh + f - m, 0.0);
}

PeriodicField commutator_h(const PeriodicField& v, const PeriodicField& f, int p,
                           ProductRule rule) {
  require_same_grid(v.grid(), f.grid(), "commutator_h");
  PeriodicField u = derivative(f, p);
  return hilbert(multiply(v, u, rule)) - multiply(v, hilbert(u), rule);
}

Spectrum commutator_h_spectral(const Spectrum& v, const Spectrum& f, int p) {
  require_same_grid(v.grid(), f.grid(), "commutator_h_spectral");
  int K = v.max_mode();
  Spectrum out(v.grid());
  for (int k = -K; k <= K; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (int l = -K; l <= K; ++l) {
      int m = k - l;
      if (m < -K || m > K) continue;
      double s = sgn(k) - sgn(l);
      if (s == 0.0) continue;
      acc += s * v.at(m) * ik_power(l, p) * f.at(l);
    }
    out.at(k) = std::complex<double>(0.0, -1.0) * acc;
  }
  return out;
}

double product_identity_residual(const PeriodicField& f, const PeriodicField& g,
                                 ProductRule rule) {
  require_same_grid(f.grid(), g.grid(), "product_identity_residual");
  double scale = std::max(1.0, std::max(std::abs(f.mean()), std::abs(g.mean())));
  if (std::abs(f.mean()) > 1e-12 * scale || std::abs(g.mean()) > 1e-12 * scale)
    throw std::invalid_argument("product_identity_residual: inputs must be mean-free");

  PeriodicField hf = hilbert(f);
  PeriodicField hg = hilbert(g);
  PeriodicField lhs = hilbert(multiply(f, g, rule) - multiply(hf, hg, rule));
  PeriodicField rhs = multiply(f, hg, rule) + multiply(hf, g, rule);
  return sobolev_norm(lhs - rhs, 0.0);
}

double adjoint_residual(const PeriodicField& f, const PeriodicField& g) {
  return std::abs(inner_l2(hilbert(f), g) + inner_l2(f, hilbert(g)));
}

double commutator_selfadjoint_residual(const PeriodicField& h, const PeriodicField& f,
                                       const PeriodicField& g, ProductRule rule) {
  PeriodicField cf = commutator_h(h, f, 0, rule);
  PeriodicField cg = commutator_h(h, g, 0, rule);
  // [h; H] = -[H; h] as operators; the sign cancels in the symmetry defect.
  return std::abs(inner_l2(cf, g) - inner_l2(f, cg));
}

namespace {

struct RatioAccum {
  double max_ratio = 0.0;
  double sum = 0.0;
  int used = 0;

  void add(double num, double den) {
    if (!(den > 1e-300)) return;
    double r = num / den;
    max_ratio = std::max(max_ratio, r);
    sum += r;
    ++used;
  }
};

EstimateRow make_row(const char* lemma, double sigma, int p, int n, const RatioAccum& a) {
  if (a.used == 0)
    throw std::runtime_error("commutator_estimate_report: degenerate ensemble, "
                             "every trial had a vanishing denominator");
  return EstimateRow{lemma, sigma, p, n, a.used, a.max_ratio, a.sum / a.used};
}

}  // namespace

std::vector<EstimateRow> commutator_estimate_report(int trials, double sigma, int p,
                                                    std::span<const int> grid_sizes,
                                                    std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("commutator_estimate_report: trials >= 1");
  if (p < 0) throw std::invalid_argument("commutator_estimate_report: p >= 0");
  if (grid_sizes.empty())
    throw std::invalid_argument("commutator_estimate_report: no grid sizes");

  // One band for all grids, set by the smallest one, so every grid sees the
  // same ensemble and ratio changes under refinement measure discretization
  // alone.
  int n_min = *std::min_element(grid_sizes.begin(), grid_sizes.end());
  int band = dealias_cutoff(Grid(n_min).max_mode(), 2.0 / 3.0);

  double decay_v = sigma + p + 2.5;
  double decay_f = std::max(2.5, sigma + 1.0);

  std::vector<EstimateRow> rows;
  for (int n : grid_sizes) {
    Grid grid(n);
    RatioAccum a1, a2, a3;
    for (int t = 0; t < trials; ++t) {
      std::uint64_t base = seed + 1000ull * static_cast<std::uint64_t>(t);
      PeriodicField v = random_band_field(grid, base, 1, band, decay_v, 1.0);
      PeriodicField f = random_band_field(grid, base + 1, 1, band, decay_f, 1.0);

      if (sigma > 0.5) {
        PeriodicField c = commutator_h(v, f, 0);
        a1.add(sobolev_norm(c, 0.0), sobolev_norm(v, sigma) * sobolev_norm(f, 0.0));
      }
      {
        PeriodicField c = commutator_h(v, f, p);
        a2.add(sobolev_norm(c, sigma),
               sobolev_norm(derivative(v, p), sigma) * sobolev_norm(f, 1.0));
      }
      if (sigma >= 1.0) {
        PeriodicField c = bracket(multiply(v, f), sigma) - multiply(v, bracket(f, sigma));
        double den = sobolev_norm(v, sigma) * sobolev_norm(f, 1.0) +
                     sobolev_norm(derivative(v, 1), 1.0) * sobolev_norm(f, sigma - 1.0);
        a3.add(sobolev_norm(c, 0.0), den);
      }
    }
    if (sigma > 0.5) rows.push_back(make_row("hilbert_comm_l2", sigma, 0, n, a1));
    rows.push_back(make_row("hilbert_comm_sobolev", sigma, p, n, a2));
    if (sigma >= 1.0) rows.push_back(make_row("bracket_comm_l2", sigma, 0, n, a3));
  }
  return rows;
}

void write_estimate_csv(std::ostream& os, std::span<const EstimateRow> rows) {
  os << "lemma,sigma,p,n_points,trials,max_ratio,mean_ratio\n";
  char buf[64];
  for (const auto& r : rows) {
    os << r.lemma << ',';
    std::snprintf(buf, sizeof buf, "%.17g", r.sigma);
    os << buf << ',' << r.p << ',' << r.n_points << ',' << r.trials << ',';
    std::snprintf(buf, sizeof buf, "%.17g", r.max_ratio);
    os << buf << ',';
    std::snprintf(buf, sizeof buf, "%.17g", r.mean_ratio);
    os << buf << '\n';
  }
  if (!os) throw std::runtime_error("write_estimate_csv: stream write failed");
}

}  // namespace cvsheet
