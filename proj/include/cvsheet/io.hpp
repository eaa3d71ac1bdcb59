#pragma once

#include <span>
#include <string>
#include <vector>

#include "cvsheet/diagnostics.hpp"
#include "cvsheet/evolution.hpp"
#include "cvsheet/spectrum.hpp"

namespace cvsheet {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// timeseries.csv: header
//   t,h3_norm,h2_norm_phit,energy_r2,margin_min,q_l2,zero_mode_defect
// then one row per accepted state, every value %.17g. An empty trajectory
// produces the header alone. Identical rows give identical bytes.
void emit_timeseries(const std::string& path, std::span<const TimeseriesRow> rows);
std::vector<TimeseriesRow> load_timeseries(const std::string& path);

// Spectrum snapshot: one line per retained mode, "k re im", k ascending from
// -K to K, 17 significant digits. Round-trips bit-exactly through
// load_snapshot, which infers the grid from the line count.
void emit_snapshot(const std::string& path, const Spectrum& s);
Spectrum load_snapshot(const std::string& path);

void emit_events(const std::string& path, std::span<const RunEvent> events);

// energy_report.csv: t,energy,y,margin,riccati_lhs,riccati_rhs,bound_ok.
// riccati_lhs repeats y (the quantity the bound constrains), riccati_rhs is
// the bound value (inf outside its validity window), bound_ok is 0/1.
struct EnergyReportRow {
  double t;
  double energy;
  double y;
  double margin;
  double riccati_lhs;
  double riccati_rhs;
  bool bound_ok;
};

void emit_energy_report(const std::string& path, std::span<const EnergyReportRow> rows);

}  // namespace cvsheet
