#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "cvsheet/checks.hpp"
#include "cvsheet/config.hpp"
#include "cvsheet/diagnostics.hpp"
#include "cvsheet/evolution.hpp"
#include "cvsheet/io.hpp"
#include "cvsheet/quadratic.hpp"

namespace fs = std::filesystem;
using namespace cvsheet;

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string output_root() {
  if (const char* env = std::getenv("CVSHEET_OUT_ROOT")) return env;
  return "out";
}

const char* status_name(RunStatus s) {
  switch (s) {
    case RunStatus::ReachedEnd: return "reached t_end";
    case RunStatus::Blowup: return "halted on blowup";
    default: return "halted on margin violation";
  }
}

// Executes one configured run and writes the standard file set into dir:
// resolved_config.cfg, timeseries.csv, events.log, optional snapshots.
RunResult run_into(const RunConfig& cfg, const fs::path& dir) {
  fs::create_directories(dir);

  auto snap_path = [&dir](const char* stem, long long step) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%s_%08lld.txt", stem, step);
    return (dir / buf).string();
  };

  StepCallback cb;
  if (cfg.snapshot_every > 0)
    cb = [&](long long step, const SolverState& s) {
      if (step % cfg.snapshot_every != 0) return;
      emit_snapshot(snap_path("snap_phi", step), s.phi.spectrum());
      emit_snapshot(snap_path("snap_phit", step), s.phi_t.spectrum());
    };

  RunResult res = run(cfg, cb);

  {
    std::ofstream os(dir / "resolved_config.cfg");
    if (!os) throw IoError("cannot write " + (dir / "resolved_config.cfg").string());
    write_config(os, cfg);
    os << "# dt_used = " << fmt17(res.dt_used) << '\n';
    os << "# data_norm_sq = " << fmt17(res.data_norm_sq) << '\n';
  }
  emit_timeseries((dir / "timeseries.csv").string(), res.rows);
  emit_events((dir / "events.log").string(), res.events);
  if (cfg.snapshot_every > 0) {
    emit_snapshot(snap_path("snap_phi_final", 0), res.final_state.phi.spectrum());
    emit_snapshot(snap_path("snap_phit_final", 0), res.final_state.phi_t.spectrum());
  }
  return res;
}

int cmd_run(const std::string& config_path, const std::string& mode_override,
            const std::string& seed_override, const std::string& out_dir) {
  RunConfig cfg = parse_config_file(config_path);
  if (!mode_override.empty()) {
    if (mode_override == "second") cfg.mode = EvolutionMode::SecondOrder;
    else if (mode_override == "first") cfg.mode = EvolutionMode::FirstOrder;
    else if (mode_override == "linear") cfg.mode = EvolutionMode::Linearized;
    else throw ConfigError("run: --mode must be second, first or linear");
  }
  if (!seed_override.empty()) cfg.initial.seed = std::stoull(seed_override);

  fs::path dir = out_dir.empty()
                     ? fs::path(output_root()) / fs::path(config_path).stem()
                     : fs::path(out_dir);
  RunResult res = run_into(cfg, dir);

  const TimeseriesRow& last = res.rows.back();
  std::cout << status_name(res.status) << " at t = " << fmt_short(res.final_state.t)
            << " (" << res.rows.size() << " rows, dt = " << fmt_short(res.dt_used)
            << ")\n"
            << "  |phi|_H3 = " << fmt_short(last.h3_norm)
            << ", margin_min = " << fmt_short(last.margin_min)
            << ", events = " << res.events.size() << '\n'
            << "  wrote " << (dir / "timeseries.csv").string() << '\n';
  return res.status == RunStatus::ReachedEnd ? 0 : 2;
}

int cmd_diagnose(const std::string& run_dir, double delta_override, bool has_delta,
                 double rel_tol) {
  fs::path dir(run_dir);
  RunConfig cfg = parse_config_file((dir / "resolved_config.cfg").string());
  double delta = has_delta ? delta_override : cfg.delta;

  std::vector<TimeseriesRow> rows = load_timeseries((dir / "timeseries.csv").string());
  std::vector<double> t, y, margin;
  for (const auto& r : rows) {
    t.push_back(r.t);
    y.push_back(std::sqrt(std::max(r.energy_r2, 0.0)));
    margin.push_back(r.margin_min);
  }

  RiccatiReport rep = riccati_check(t, y, margin, delta, rel_tol);

  std::vector<EnergyReportRow> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EnergyReportRow e;
    e.t = rows[i].t;
    e.energy = rows[i].energy_r2;
    e.y = y[i];
    e.margin = margin[i];
    if (rep.skipped) {
      e.riccati_lhs = y[i];
      e.riccati_rhs = std::numeric_limits<double>::quiet_NaN();
      e.bound_ok = false;
    } else {
      e.riccati_lhs = rep.samples[i].y;
      e.riccati_rhs = rep.samples[i].rhs;
      e.bound_ok = rep.samples[i].ok;
    }
    out.push_back(e);
  }
  emit_energy_report((dir / "energy_report.csv").string(), out);

  if (rep.skipped) {
    std::cout << "riccati check skipped: " << rep.skip_reason << '\n';
    return 0;
  }
  std::cout << "c_hat = " << fmt_short(rep.c_hat) << ", bound "
            << (rep.bound_ok ? "holds" : "VIOLATED") << " up to t = "
            << fmt_short(rep.checked_until)
            << " (worst excess " << fmt_short(rep.max_rel_excess) << ")\n"
            << "  wrote " << (dir / "energy_report.csv").string() << '\n';
  return rep.bound_ok ? 0 : 1;
}

int cmd_kernel_dump(long long m_min, long long m_max, long long l_min, long long l_max,
                    const std::string& out_file) {
  if (out_file.empty()) {
    kernel_dump(std::cout, m_min, m_max, l_min, l_max);
  } else {
    std::ofstream os(out_file);
    if (!os) throw IoError("cannot open '" + out_file + "' for writing");
    kernel_dump(os, m_min, m_max, l_min, l_max);
  }
  return 0;
}

int cmd_check_identities(std::uint64_t seed, int trials, int n) {
  std::vector<CheckResult> results = run_identity_checks(seed, trials, n);
  std::size_t width = 0;
  for (const auto& r : results) width = std::max(width, r.name.size());
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    std::cout << (r.pass ? "  ok   " : " FAIL  ") << r.name
              << std::string(width - r.name.size() + 2, ' ') << r.detail << '\n';
  }
  std::cout << (all ? "all checks passed\n" : "CHECKS FAILED\n");
  return all ? 0 : 1;
}

int cmd_sweep(const std::string& config_path, const std::vector<double>& mus,
              const std::vector<double>& amps, const std::string& out_dir,
              int threads) {
  RunConfig base = parse_config_file(config_path);
  fs::path root = out_dir.empty() ? fs::path(output_root()) /
                                        (fs::path(config_path).stem().string() + "_sweep")
                                  : fs::path(out_dir);

  struct Cell {
    RunConfig cfg;
    fs::path dir;
  };
  std::vector<Cell> cells;
  for (double mu : mus)
    for (double amp : amps) {
      RunConfig cfg = base;
      cfg.mu = mu;
      if (cfg.initial.kind == InitialKind::MultiMode) {
        // interpret the amplitude axis as a uniform scale on the mode list
        for (double& a : cfg.initial.amplitudes) a *= amp;
      } else {
        cfg.initial.amplitude = amp;
      }
      cells.push_back(
          Cell{cfg, root / ("mu_" + fmt_short(mu) + "_amp_" + fmt_short(amp))});
    }

  std::atomic<std::size_t> next{0};
  std::atomic<int> failures{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      try {
        run_into(cells[i].cfg, cells[i].dir);
      } catch (const std::exception& e) {
        ++failures;
        std::cerr << "sweep cell " << cells[i].dir.string() << " failed: " << e.what()
                  << '\n';
      }
    }
  };

  int nthreads = std::max(1, std::min<int>(threads, static_cast<int>(cells.size())));
  std::vector<std::thread> pool;
  for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::cout << "swept " << cells.size() << " cells into " << root.string() << " ("
            << failures.load() << " failures)\n";
  return failures.load() == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudo-spectral solver for a nonlocal quadratic amplitude equation"};
  app.require_subcommand(1);

  // run
  std::string run_config, run_mode, run_seed, run_out;
  auto* run_cmd = app.add_subcommand("run", "integrate one configured run");
  run_cmd->add_option("--config", run_config, "config file")->required();
  run_cmd->add_option("--mode", run_mode, "override mode: second | first | linear");
  run_cmd->add_option("--seed", run_seed, "override the seed");
  run_cmd->add_option("--out", run_out,
                      "output directory (default $CVSHEET_OUT_ROOT/<config stem>)");

  // diagnose
  std::string diag_dir;
  double diag_delta = 0.0, diag_tol = 1e-6;
  bool diag_has_delta = false;
  auto* diag_cmd = app.add_subcommand("diagnose", "energy and slope-bound report for a run");
  diag_cmd->add_option("--run", diag_dir, "run directory (from `run`)")->required();
  diag_cmd->add_option("--delta", diag_delta, "margin floor (default: from the run config)")
      ->each([&diag_has_delta](const std::string&) { diag_has_delta = true; });
  diag_cmd->add_option("--rel-tol", diag_tol, "relative slack for the bound check");

  // kernel-dump
  long long km0 = -8, km1 = 8, kl0 = -8, kl1 = 8;
  std::string kernel_out;
  auto* kern_cmd = app.add_subcommand("kernel-dump", "tabulate the interaction kernel");
  kern_cmd->add_option("--m-min", km0, "lower m");
  kern_cmd->add_option("--m-max", km1, "upper m");
  kern_cmd->add_option("--l-min", kl0, "lower l");
  kern_cmd->add_option("--l-max", kl1, "upper l");
  kern_cmd->add_option("--out", kernel_out, "CSV file (default stdout)");

  // check-identities
  std::uint64_t chk_seed = 12345;
  int chk_trials = 50, chk_n = 128;
  auto* chk_cmd = app.add_subcommand("check-identities", "run the property battery");
  chk_cmd->add_option("--seed", chk_seed, "ensemble seed");
  chk_cmd->add_option("--trials", chk_trials, "trials per check")->check(CLI::PositiveNumber);
  chk_cmd->add_option("--n", chk_n, "grid size")->check(CLI::PositiveNumber);

  // sweep
  std::string sweep_config, sweep_out;
  std::vector<double> sweep_mu, sweep_amp;
  int sweep_threads = static_cast<int>(std::thread::hardware_concurrency());
  auto* sweep_cmd = app.add_subcommand("sweep", "grid of runs over mu and amplitude");
  sweep_cmd->add_option("--config", sweep_config, "base config file")->required();
  sweep_cmd->add_option("--mu", sweep_mu, "mu values")->required()->delimiter(',');
  sweep_cmd
      ->add_option("--amplitude", sweep_amp,
                   "amplitude values (scales the list for multi_mode data)")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--out", sweep_out, "output root");
  sweep_cmd->add_option("--threads", sweep_threads, "worker threads")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return cmd_run(run_config, run_mode, run_seed, run_out);
    if (diag_cmd->parsed())
      return cmd_diagnose(diag_dir, diag_delta, diag_has_delta, diag_tol);
    if (kern_cmd->parsed()) return cmd_kernel_dump(km0, km1, kl0, kl1, kernel_out);
    if (chk_cmd->parsed()) return cmd_check_identities(chk_seed, chk_trials, chk_n);
    if (sweep_cmd->parsed())
      return cmd_sweep(sweep_config, sweep_mu, sweep_amp, sweep_out, sweep_threads);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
