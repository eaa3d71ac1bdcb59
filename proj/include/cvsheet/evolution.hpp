#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cvsheet/field.hpp"
#include "cvsheet/initial_data.hpp"
#include "cvsheet/products.hpp"

namespace cvsheet {

// Which right-hand side the stepper integrates.
//   SecondOrder: phi_tt = (mu - 2 g_x) phi_xx - Q[phi],          g = H[phi]
//   FirstOrder:  phi_t  = -H[g^2]_xx / 2 - g phi_xx              (phi_t slot unused)
//   Linearized:  phi_tt = mu phi_xx
enum class EvolutionMode { SecondOrder, FirstOrder, Linearized };

struct SolverState {
  double t;
  PeriodicField phi;
  PeriodicField phi_t;
};

// Pointwise hyperbolicity margin mu - 2 g_x at the nodes. A negative margin
// anywhere puts the frozen-coefficient problem on the wrong side of
// well-posedness; margin below delta breaks the standing assumption the
// energy argument runs on.
struct StabilityReport {
  double margin_min;
  int argmin;      // node index attaining the minimum
  bool violated;   // margin_min < delta
  bool ill_posed;  // margin_min < 0
};

StabilityReport stability_report(const PeriodicField& phi, double mu, double delta);

// Full nonlinear acceleration (mu - 2 g_x) phi_xx - Q[phi]. The zero mode of
// the result cancels between the two terms analytically; nothing is enforced
// here, so the returned field carries the raw roundoff-level zero mode and
// acceleration_zero_mode reports it.
PeriodicField acceleration(const PeriodicField& phi, double mu, ProductRule rule = {});
double acceleration_zero_mode(const PeriodicField& phi, double mu, ProductRule rule = {});

PeriodicField acceleration_linear(const PeriodicField& phi, double mu);

// Right-hand side of the one-directional reduction.
PeriodicField first_order_rhs(const PeriodicField& phi, ProductRule rule = {});

// Guaranteed-lifespan estimate c1 / sqrt(|phi0_x|_{H^2}^2 + |phi1|_{H^2}^2);
// +inf for zero data. Scaling data by s scales the estimate by 1/s.
double t0_estimate(const PeriodicField& phi0, const PeriodicField& phi1, double c1);

// Sufficient condition sup |g_x| <= (mu - delta)/2 for the margin to hold
// with room delta. The actual margin minimum is reported alongside, since
// the sup condition is conservative.
struct SmallnessReport {
  double sup_gx;
  double threshold;
  double margin_min;
  bool pass;
};

SmallnessReport smallness_check(const PeriodicField& phi0, double mu, double delta);

struct RunConfig {
  double mu = 1.0;
  double delta = 0.0;
  int n_points = 128;
  double dt = 0.0;  // <= 0 selects the automatic step
  double t_end = 1.0;
  double dealias_fraction = 2.0 / 3.0;
  EvolutionMode mode = EvolutionMode::SecondOrder;
  double blowup_factor = 1e6;  // halt when |phi|_{H^3} exceeds this times its initial value
  bool enforce_stability = false;   // reject initial data with margin < delta
  bool halt_on_violation = false;   // stop when the running margin drops below delta
  int snapshot_every = 0;           // 0 disables; the CLI consumes this
  InitialDataSpec initial;

  ProductRule rule() const { return ProductRule::dealias(dealias_fraction); }
};

// Automatic step: 0.5 / (K * sqrt(|mu| + 2 sup|g_x(0)|)), with the radicand
// floored at 0.25 so weak problems still get a bounded step. Fixed for the
// whole run.
double auto_dt(const Grid& grid, double mu, const PeriodicField& phi0);

// One classical fourth-order Runge-Kutta step of the configured system.
// Post-step the zero mode of both components is set back to exactly zero
// (the flux form preserves it analytically; this stops roundoff drift).
SolverState step(const SolverState& s, double dt, const RunConfig& cfg);

enum class RunStatus { ReachedEnd, Blowup, MarginHalt };

struct TimeseriesRow {
  double t;
  double h3_norm;           // |phi|_{H^3}
  double h2_norm_phit;      // |phi_t|_{H^2}
  double energy_r2;         // weighted energy at r = 2
  double margin_min;
  double q_l2;              // |Q[phi]|_{L^2}
  double zero_mode_defect;  // raw zero mode of the rhs before re-enforcement
};

struct RunEvent {
  double t;
  long long step;
  std::string what;
};

struct RunResult {
  RunStatus status;
  SolverState final_state;  // last valid state (pre-blowup on halt)
  double dt_used;
  double data_norm_sq;
  std::vector<TimeseriesRow> rows;
  std::vector<RunEvent> events;
};

// Called after every accepted state, including the initial one, with the step
// index (0 for t = 0).
using StepCallback = std::function<void(long long, const SolverState&)>;

// Materializes cfg.initial on cfg.n_points and integrates to t_end, or until
// a halt condition fires. Deterministic: identical config gives identical
// results bit for bit.
RunResult run(const RunConfig& cfg, const StepCallback& cb = {});

// Same loop on caller-supplied initial data (must be mean-free).
RunResult run_from(const RunConfig& cfg, const PeriodicField& phi0,
                   const PeriodicField& phi1, const StepCallback& cb = {});

}  // namespace cvsheet
