#include "cvsheet/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cvsheet/hilbert.hpp"
#include "cvsheet/multiplier.hpp"

namespace cvsheet {

EnergyReport energy(const SolverState& state, double mu, double r,
                    double dealias_fraction) {
  const Grid& grid = state.phi.grid();
  require_same_grid(grid, state.phi_t.grid(), "energy");

  PeriodicField gx_cut = PeriodicField::from_spectrum(
      dealias(derivative(hilbert(state.phi), 1).spectrum(), dealias_fraction));
  PeriodicField v_cut = PeriodicField::from_spectrum(
      dealias(bracket(derivative(state.phi, 1), r).spectrum(), dealias_fraction));

  double quad = 0.0;
  for (int j = 0; j < grid.n(); ++j) {
    double w = mu - 2.0 * gx_cut.samples()[static_cast<std::size_t>(j)];
    double v = v_cut.samples()[static_cast<std::size_t>(j)];
    quad += w * v * v;
  }
  quad *= grid.spacing();

  double ht = sobolev_norm(state.phi_t, r);
  double e = ht * ht + quad;

  return EnergyReport{state.t,
                      e,
                      std::sqrt(std::max(e, 0.0)),
                      sobolev_norm(derivative(state.phi, 1), r),
                      ht,
                      stability_report(state.phi, mu, 0.0).margin_min};
}

RiccatiReport riccati_check(std::span<const double> t, std::span<const double> y,
                            std::span<const double> margin, double delta,
                            double rel_tol) {
  std::size_t n = t.size();
  // fewer samples than this and the centered difference quotients are noise
  if (n < 100 || y.size() != n || margin.size() != n)
    throw std::invalid_argument("riccati_check: need >= 100 equally sized samples");
  double dt0 = t[1] - t[0];
  for (std::size_t i = 1; i < n; ++i) {
    double dt = t[i] - t[i - 1];
    if (!(dt > 0.0) || std::abs(dt - dt0) > 1e-9 * std::max(dt0, dt))
      throw std::invalid_argument("riccati_check: samples must be uniform in t");
  }

  RiccatiReport rep;

  double min_margin = *std::min_element(margin.begin(), margin.end());
  if (min_margin < delta) {
    rep.skipped = true;
    rep.skip_reason = "margin dropped to " + std::to_string(min_margin) +
                      " < delta = " + std::to_string(delta) +
                      "; slope bound hypothesis not met";
    return rep;
  }

  double y_max = *std::max_element(y.begin(), y.end());
  double y_floor = 1e-14 * std::max(y_max, 1.0);

  // Largest observed slope ratio; negative slopes say nothing about the
  // quadratic growth constant and are clipped.
  double c_hat = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dy;
    if (i == 0)
      dy = (y[1] - y[0]) / (t[1] - t[0]);
    else if (i == n - 1)
      dy = (y[n - 1] - y[n - 2]) / (t[n - 1] - t[n - 2]);
    else
      dy = (y[i + 1] - y[i - 1]) / (t[i + 1] - t[i - 1]);
    if (y[i] <= y_floor) continue;
    c_hat = std::max(c_hat, dy / (y[i] * y[i]));
  }
  rep.c_hat = c_hat;

  const double inf = std::numeric_limits<double>::infinity();
  double y0 = y[0];
  bool all_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    double denom = 1.0 - c_hat * t[i] * y0;
    RiccatiSample s{t[i], y[i], inf, true};
    if (denom >= 0.5) {
      s.rhs = y0 / denom;
      s.ok = y[i] <= s.rhs * (1.0 + rel_tol);
      if (s.rhs > 0.0)
        rep.max_rel_excess = std::max(rep.max_rel_excess, (y[i] - s.rhs) / s.rhs);
      rep.checked_until = t[i];
      all_ok = all_ok && s.ok;
    }
    rep.samples.push_back(s);
  }
  rep.bound_ok = all_ok;
  return rep;
}

double syrovatskii_delta(const PlanarState& s) {
  double du = s.u_plus - s.u_minus;
  return 0.5 * (s.b_plus * s.b_plus + s.b_minus * s.b_minus) - 0.25 * du * du;
}

double bifurcation_mu(const PlanarState& zeroth, const PlanarState& first) {
  double d0 = syrovatskii_delta(zeroth);
  if (std::abs(d0) > 1e-9)
    throw std::invalid_argument(
        "bifurcation_mu: expansion point is not critical, stability functional = " +
        std::to_string(d0));
  return zeroth.b_plus * first.b_plus + zeroth.b_minus * first.b_minus -
         0.5 * (zeroth.u_plus - zeroth.u_minus) * (first.u_plus - first.u_minus);
}

}  // namespace cvsheet
