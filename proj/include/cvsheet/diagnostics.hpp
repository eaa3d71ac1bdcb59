#pragma once

#include <span>
#include <string>
#include <vector>

#include "cvsheet/evolution.hpp"

namespace cvsheet {

// Weighted energy at regularity r:
//   E_r = |phi_t|_{H^r}^2 + integral (mu - 2 g_x) |<d>^r phi_x|^2 dx
// with g = H[phi]. The integral is a node sum (the trapezoid rule collapses
// to it on a periodic grid); both the weight and the derivative factor are
// truncated to the dealias band first, which keeps the triple product below
// the grid's alias-free degree, so the quadrature of the truncated integrand
// is exact. E_r can go negative once the margin does; y reports
// sqrt(max(E_r, 0)).
struct EnergyReport {
  double t;
  double energy;
  double y;
  double h_r_phi_x;
  double h_r_phi_t;
  double margin_min;
};

EnergyReport energy(const SolverState& state, double mu, double r,
                    double dealias_fraction = 2.0 / 3.0);

// Verdict of the a-priori-slope comparison on a sampled trajectory y(t).
// c_hat is the largest observed (dy/dt) / y^2 (negative slopes clipped to
// zero, centered differences inside, one-sided at the ends). The implied
// bound y(t) <= y(0) / (1 - c_hat t y(0)) is then checked on every sample
// where the denominator is still >= 1/2; beyond that horizon the comparison
// argument asserts nothing and samples are left unjudged (ok, rhs = +inf).
struct RiccatiSample {
  double t;
  double y;
  double rhs;  // bound value; +inf outside the validity window
  bool ok;
};

struct RiccatiReport {
  bool skipped = false;       // hypothesis failed (margin dipped below delta)
  std::string skip_reason;
  double c_hat = 0.0;
  bool bound_ok = false;
  double max_rel_excess = 0.0;  // worst (y - rhs)/rhs over judged samples
  double checked_until = 0.0;   // last t inside the validity window
  std::vector<RiccatiSample> samples;
};

RiccatiReport riccati_check(std::span<const double> t, std::span<const double> y,
                            std::span<const double> margin, double delta,
                            double rel_tol = 1e-6);

// Piecewise-constant background: horizontal velocity and magnetic field on
// each side of the sheet.
struct PlanarState {
  double u_plus;
  double u_minus;
  double b_plus;
  double b_minus;
};

// Stability functional of the background,
//   (|B+|^2 + |B-|^2)/2 - |U+ - U-|^2 / 4.
// Positive: linearly stable. Negative: Kelvin-Helmholtz unstable. Zero: the
// critical sheet the amplitude equation expands around.
double syrovatskii_delta(const PlanarState& s);

// First-order coefficient of the stability functional along a perturbation
// direction, evaluated at a critical background (delta(zeroth) must vanish
// to 1e-9, else std::invalid_argument):
//   mu = B0+ B1+ + B0- B1- - (U0+ - U0-)(U1+ - U1-)/2.
double bifurcation_mu(const PlanarState& zeroth, const PlanarState& first);

}  // namespace cvsheet
