#include "cvsheet/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

namespace cvsheet {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  return os;
}

void finish(std::ofstream& os, const std::string& path) {
  os.flush();
  if (!os) throw IoError("write to '" + path + "' failed");
}

double parse_double(const std::string& tok, const std::string& path, int line) {
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(tok.c_str(), &end);
  // ERANGE also fires on subnormal underflow, which strtod still represents
  // exactly; only overflow means the token is unusable.
  bool overflow = errno == ERANGE && (v == HUGE_VAL || v == -HUGE_VAL);
  if (end == tok.c_str() || *end != '\0' || overflow)
    throw IoError(path + " line " + std::to_string(line) + ": bad number '" + tok + "'");
  return v;
}

}  // namespace

void emit_timeseries(const std::string& path, std::span<const TimeseriesRow> rows) {
  std::ofstream os = open_out(path);
  os << "t,h3_norm,h2_norm_phit,energy_r2,margin_min,q_l2,zero_mode_defect\n";
  for (const auto& r : rows)
    os << fmt(r.t) << ',' << fmt(r.h3_norm) << ',' << fmt(r.h2_norm_phit) << ','
       << fmt(r.energy_r2) << ',' << fmt(r.margin_min) << ',' << fmt(r.q_l2) << ','
       << fmt(r.zero_mode_defect) << '\n';
  finish(os, path);
}

std::vector<TimeseriesRow> load_timeseries(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line))
    throw IoError(path + ": empty file, expected a timeseries header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,h3_norm,h2_norm_phit,energy_r2,margin_min,q_l2,zero_mode_defect")
    throw IoError(path + ": unexpected header '" + line + "'");

  std::vector<TimeseriesRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tok;
    double vals[7];
    for (int i = 0; i < 7; ++i) {
      if (!std::getline(ss, tok, ','))
        throw IoError(path + " line " + std::to_string(lineno) + ": expected 7 columns");
      vals[i] = parse_double(tok, path, lineno);
    }
    if (std::getline(ss, tok, ','))
      throw IoError(path + " line " + std::to_string(lineno) + ": expected 7 columns");
    rows.push_back(TimeseriesRow{vals[0], vals[1], vals[2], vals[3], vals[4], vals[5],
                                 vals[6]});
  }
  return rows;
}

void emit_snapshot(const std::string& path, const Spectrum& s) {
  std::ofstream os = open_out(path);
  int K = s.max_mode();
  for (int k = -K; k <= K; ++k)
    os << k << ' ' << fmt(s.at(k).real()) << ' ' << fmt(s.at(k).imag()) << '\n';
  finish(os, path);
}

Spectrum load_snapshot(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");

  struct Row {
    int k;
    double re, im;
  };
  std::vector<Row> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string k_tok, re_tok, im_tok, extra;
    if (!(ss >> k_tok >> re_tok >> im_tok) || (ss >> extra))
      throw IoError(path + " line " + std::to_string(lineno) +
                    ": expected 'k re im'");
    errno = 0;
    char* end = nullptr;
    long k = std::strtol(k_tok.c_str(), &end, 10);
    if (end == k_tok.c_str() || *end != '\0' || errno == ERANGE)
      throw IoError(path + " line " + std::to_string(lineno) + ": bad mode '" + k_tok +
                    "'");
    rows.push_back(Row{static_cast<int>(k), parse_double(re_tok, path, lineno),
                       parse_double(im_tok, path, lineno)});
  }

  if (rows.empty() || rows.size() % 2 == 0)
    throw IoError(path + ": expected an odd number of mode lines (-K..K)");
  int K = static_cast<int>(rows.size() / 2);
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].k != static_cast<int>(i) - K)
      throw IoError(path + ": modes must run from " + std::to_string(-K) + " to " +
                    std::to_string(K) + " in order; saw " + std::to_string(rows[i].k));

  Spectrum s(Grid(2 * (K + 1)));
  for (const auto& r : rows) s.at(r.k) = {r.re, r.im};
  return s;
}

void emit_events(const std::string& path, std::span<const RunEvent> events) {
  std::ofstream os = open_out(path);
  for (const auto& e : events)
    os << "t=" << fmt(e.t) << " step=" << e.step << ' ' << e.what << '\n';
  finish(os, path);
}

void emit_energy_report(const std::string& path, std::span<const EnergyReportRow> rows) {
  std::ofstream os = open_out(path);
  os << "t,energy,y,margin,riccati_lhs,riccati_rhs,bound_ok\n";
  for (const auto& r : rows)
    os << fmt(r.t) << ',' << fmt(r.energy) << ',' << fmt(r.y) << ',' << fmt(r.margin)
       << ',' << fmt(r.riccati_lhs) << ',' << fmt(r.riccati_rhs) << ','
       << (r.bound_ok ? 1 : 0) << '\n';
  finish(os, path);
}

}  // namespace cvsheet
