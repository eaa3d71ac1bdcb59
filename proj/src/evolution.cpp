#include "cvsheet/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cvsheet/diagnostics.hpp"
#include "cvsheet/hilbert.hpp"
#include "cvsheet/multiplier.hpp"
#include "cvsheet/quadratic.hpp"

namespace cvsheet {

StabilityReport stability_report(const PeriodicField& phi, double mu, double delta) {
  PeriodicField gx = derivative(hilbert(phi), 1);
  double min_margin = std::numeric_limits<double>::infinity();
  int argmin = 0;
  const auto& s = gx.samples();
  for (std::size_t j = 0; j < s.size(); ++j) {
    double m = mu - 2.0 * s[j];
    if (m < min_margin) {
      min_margin = m;
      argmin = static_cast<int>(j);
    }
  }
  return StabilityReport{min_margin, argmin, min_margin < delta, min_margin < 0.0};
}

PeriodicField acceleration(const PeriodicField& phi, double mu, ProductRule rule) {
  PeriodicField gx = derivative(hilbert(phi), 1);
  PeriodicField fxx = derivative(phi, 2);
  return mu * fxx - 2.0 * multiply(gx, fxx, rule) - q_commutator(phi, rule);
}

double acceleration_zero_mode(const PeriodicField& phi, double mu, ProductRule rule) {
  return acceleration(phi, mu, rule).mean();
}

PeriodicField acceleration_linear(const PeriodicField& phi, double mu) {
  return mu * derivative(phi, 2);
}

PeriodicField first_order_rhs(const PeriodicField& phi, ProductRule rule) {
  PeriodicField g = hilbert(phi);
  return -1.0 * (0.5 * derivative(hilbert(multiply(g, g, rule)), 2) +
                 multiply(g, derivative(phi, 2), rule));
}

double t0_estimate(const PeriodicField& phi0, const PeriodicField& phi1, double c1) {
  if (!(c1 > 0.0)) throw std::invalid_argument("t0_estimate: c1 must be positive");
  double a = sobolev_norm(derivative(phi0, 1), 2.0);
  double b = sobolev_norm(phi1, 2.0);
  double q = a * a + b * b;
  if (q == 0.0) return std::numeric_limits<double>::infinity();
  return c1 / std::sqrt(q);
}

SmallnessReport smallness_check(const PeriodicField& phi0, double mu, double delta) {
  double sup = derivative(hilbert(phi0), 1).linf();
  double thr = 0.5 * (mu - delta);
  StabilityReport st = stability_report(phi0, mu, delta);
  return SmallnessReport{sup, thr, st.margin_min, sup <= thr};
}

double auto_dt(const Grid& grid, double mu, const PeriodicField& phi0) {
  double excess = 2.0 * derivative(hilbert(phi0), 1).linf();
  double radicand = std::max(std::abs(mu) + excess, 0.25);
  return 0.5 / (grid.max_mode() * std::sqrt(radicand));
}

namespace {

struct Deriv {
  PeriodicField dphi;
  PeriodicField dphit;
};

Deriv rhs(const PeriodicField& phi, const PeriodicField& phi_t, const RunConfig& cfg) {
  switch (cfg.mode) {
    case EvolutionMode::SecondOrder:
      return {phi_t, acceleration(phi, cfg.mu, cfg.rule())};
    case EvolutionMode::Linearized:
      return {phi_t, acceleration_linear(phi, cfg.mu)};
    default:  // FirstOrder: phi alone evolves
      return {first_order_rhs(phi, cfg.rule()), PeriodicField::zero(phi.grid())};
  }
}

}  // namespace

SolverState step(const SolverState& s, double dt, const RunConfig& cfg) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");

  Deriv k1 = rhs(s.phi, s.phi_t, cfg);
  Deriv k2 = rhs(s.phi + (0.5 * dt) * k1.dphi, s.phi_t + (0.5 * dt) * k1.dphit, cfg);
  Deriv k3 = rhs(s.phi + (0.5 * dt) * k2.dphi, s.phi_t + (0.5 * dt) * k2.dphit, cfg);
  Deriv k4 = rhs(s.phi + dt * k3.dphi, s.phi_t + dt * k3.dphit, cfg);

  double w = dt / 6.0;
  PeriodicField phi =
      s.phi + w * (k1.dphi + 2.0 * k2.dphi + 2.0 * k3.dphi + k4.dphi);
  PeriodicField phi_t =
      s.phi_t + w * (k1.dphit + 2.0 * k2.dphit + 2.0 * k3.dphit + k4.dphit);

  return SolverState{s.t + dt, enforce_zero_mean(phi), enforce_zero_mean(phi_t)};
}

namespace {

TimeseriesRow make_row(const SolverState& s, const RunConfig& cfg) {
  TimeseriesRow row;
  row.t = s.t;
  row.h3_norm = sobolev_norm(s.phi, 3.0);
  row.h2_norm_phit = sobolev_norm(s.phi_t, 2.0);
  row.energy_r2 = energy(s, cfg.mu, 2.0, cfg.dealias_fraction).energy;
  row.margin_min = stability_report(s.phi, cfg.mu, cfg.delta).margin_min;
  row.q_l2 = sobolev_norm(q_commutator(s.phi, cfg.rule()), 0.0);
  switch (cfg.mode) {
    case EvolutionMode::SecondOrder:
      row.zero_mode_defect = std::abs(acceleration_zero_mode(s.phi, cfg.mu, cfg.rule()));
      break;
    case EvolutionMode::FirstOrder:
      row.zero_mode_defect = std::abs(first_order_rhs(s.phi, cfg.rule()).mean());
      break;
    default:
      row.zero_mode_defect = std::abs(acceleration_linear(s.phi, cfg.mu).mean());
      break;
  }
  return row;
}

}  // namespace

RunResult run_from(const RunConfig& cfg, const PeriodicField& phi0,
                   const PeriodicField& phi1, const StepCallback& cb) {
  Grid grid(cfg.n_points);
  require_same_grid(grid, phi0.grid(), "run");
  require_same_grid(grid, phi1.grid(), "run");
  if (!(cfg.t_end > 0.0)) throw std::invalid_argument("run: t_end must be positive");
  if (!(cfg.blowup_factor > 0.0))
    throw std::invalid_argument("run: blowup_factor must be positive");

  StabilityReport initial_margin = stability_report(phi0, cfg.mu, cfg.delta);
  if (cfg.enforce_stability && initial_margin.violated)
    throw std::invalid_argument(
        "run: initial data violates the stability margin (min " +
        std::to_string(initial_margin.margin_min) + " < delta " +
        std::to_string(cfg.delta) + "); disable enforce_stability for exploratory runs");

  double dt = cfg.dt > 0.0 ? cfg.dt : auto_dt(grid, cfg.mu, phi0);
  long long steps = static_cast<long long>(std::ceil(cfg.t_end / dt - 1e-9));
  if (steps < 1) steps = 1;
  double dt_used = cfg.t_end / static_cast<double>(steps);

  double a = sobolev_norm(derivative(phi0, 1), 2.0);
  double b = sobolev_norm(phi1, 2.0);

  RunResult res{RunStatus::ReachedEnd, SolverState{0.0, phi0, phi1}, dt_used,
                a * a + b * b, {}, {}};

  double h3_threshold = cfg.blowup_factor * sobolev_norm(phi0, 3.0);

  SolverState state{0.0, phi0, phi1};
  res.rows.push_back(make_row(state, cfg));
  if (cb) cb(0, state);

  bool was_violated = initial_margin.violated;
  if (was_violated)
    res.events.push_back(RunEvent{0.0, 0, "margin below delta at start (min " +
                                              std::to_string(initial_margin.margin_min) +
                                              ")"});

  for (long long i = 1; i <= steps; ++i) {
    SolverState next = step(state, dt_used, cfg);
    next.t = dt_used * static_cast<double>(i);  // avoid additive drift

    double h3 = sobolev_norm(next.phi, 3.0);
    if (!std::isfinite(h3) || (h3_threshold > 0.0 && h3 > h3_threshold)) {
      res.events.push_back(RunEvent{next.t, i,
                                    std::isfinite(h3)
                                        ? "blowup: |phi|_H3 = " + std::to_string(h3) +
                                              " exceeded threshold " +
                                              std::to_string(h3_threshold)
                                        : "blowup: non-finite state"});
      res.status = RunStatus::Blowup;
      break;  // keep the previous state as the final valid one
    }

    state = std::move(next);
    res.rows.push_back(make_row(state, cfg));
    if (cb) cb(i, state);

    StabilityReport sr = stability_report(state.phi, cfg.mu, cfg.delta);
    if (sr.violated && !was_violated)
      res.events.push_back(RunEvent{state.t, i,
                                    std::string(sr.ill_posed ? "margin negative" :
                                                               "margin below delta") +
                                        " (min " + std::to_string(sr.margin_min) +
                                        " at node " + std::to_string(sr.argmin) + ")"});
    if (!sr.violated && was_violated)
      res.events.push_back(RunEvent{state.t, i, "margin recovered (min " +
                                                    std::to_string(sr.margin_min) + ")"});
    was_violated = sr.violated;

    if (sr.violated && cfg.halt_on_violation) {
      res.status = RunStatus::MarginHalt;
      break;
    }
  }

  res.final_state = std::move(state);
  return res;
}

RunResult run(const RunConfig& cfg, const StepCallback& cb) {
  Grid grid(cfg.n_points);
  InitialData data = materialize_initial_data(cfg.initial, grid);
  return run_from(cfg, data.phi0, data.phi1, cb);
}

}  // namespace cvsheet
