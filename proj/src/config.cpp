#include "cvsheet/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

namespace cvsheet {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

struct Entry {
  std::string value;
  int line;
};

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

double parse_real(const Entry& e, const std::string& key) {
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(e.value.c_str(), &end);
  // underflow to a subnormal keeps ERANGE but the value is still exact
  bool overflow = errno == ERANGE && (v == HUGE_VAL || v == -HUGE_VAL);
  if (end == e.value.c_str() || *end != '\0' || overflow)
    fail(e.line, key + ": expected a real number, got '" + e.value + "'");
  return v;
}

long long parse_int(const Entry& e, const std::string& key) {
  errno = 0;
  char* end = nullptr;
  long long v = std::strtoll(e.value.c_str(), &end, 10);
  if (end == e.value.c_str() || *end != '\0' || errno == ERANGE)
    fail(e.line, key + ": expected an integer, got '" + e.value + "'");
  return v;
}

std::uint64_t parse_u64(const Entry& e, const std::string& key) {
  if (!e.value.empty() && e.value[0] == '-')
    fail(e.line, key + ": expected a non-negative integer, got '" + e.value + "'");
  errno = 0;
  char* end = nullptr;
  unsigned long long v = std::strtoull(e.value.c_str(), &end, 10);
  if (end == e.value.c_str() || *end != '\0' || errno == ERANGE)
    fail(e.line, key + ": expected a non-negative integer, got '" + e.value + "'");
  return v;
}

bool parse_bool(const Entry& e, const std::string& key) {
  if (e.value == "true") return true;
  if (e.value == "false") return false;
  fail(e.line, key + ": expected true or false, got '" + e.value + "'");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

const char* const known_keys[] = {
    "mu", "delta", "n_points", "dt", "t_end", "dealias_fraction", "mode",
    "blowup_factor", "enforce_stability", "halt_on_margin_violation",
    "snapshot_every", "seed", "initial_kind", "amplitude", "mode_k", "phase",
    "amplitudes", "modes", "phases", "band_min", "band_max", "decay",
    "phi1_amplitude", "phi1_mode", "phi1_phase"};

bool known(const std::string& key) {
  for (const char* k : known_keys)
    if (key == k) return true;
  return false;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  std::map<std::string, Entry> kv;
  {
    std::stringstream ss(text);
    std::string raw;
    int line = 0;
    while (std::getline(ss, raw)) {
      ++line;
      std::string stripped = raw.substr(0, raw.find('#'));
      stripped = trim(stripped);
      if (stripped.empty()) continue;
      std::size_t eq = stripped.find('=');
      if (eq == std::string::npos)
        fail(line, "expected 'key = value', got '" + trim(raw) + "'");
      std::string key = trim(stripped.substr(0, eq));
      std::string value = trim(stripped.substr(eq + 1));
      if (key.empty()) fail(line, "empty key");
      if (value.empty()) fail(line, key + ": empty value");
      if (!known(key)) fail(line, "unknown key '" + key + "'");
      auto [it, fresh] = kv.emplace(key, Entry{value, line});
      if (!fresh)
        fail(line, "duplicate key '" + key + "', first set on line " +
                       std::to_string(it->second.line));
    }
  }

  auto get = [&kv](const char* key) -> const Entry* {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  auto require = [&](const char* key) -> const Entry& {
    const Entry* e = get(key);
    if (!e) throw ConfigError(std::string("config: missing required key '") + key + "'");
    return *e;
  };

  RunConfig cfg;

  cfg.mu = parse_real(require("mu"), "mu");

  if (const Entry* e = get("delta")) {
    cfg.delta = parse_real(*e, "delta");
    if (cfg.delta < 0.0) fail(e->line, "delta: must be >= 0");
  }

  {
    const Entry& e = require("n_points");
    long long n = parse_int(e, "n_points");
    if (n < 8 || n % 2 != 0 || n > 1 << 20)
      fail(e.line, "n_points: must be even and >= 8, got " + e.value);
    cfg.n_points = static_cast<int>(n);
  }

  if (const Entry* e = get("dt")) {
    if (e->value == "auto") {
      cfg.dt = 0.0;
    } else {
      cfg.dt = parse_real(*e, "dt");
      if (!(cfg.dt > 0.0)) fail(e->line, "dt: must be positive or 'auto'");
    }
  }

  if (const Entry* e = get("t_end")) {
    cfg.t_end = parse_real(*e, "t_end");
    if (!(cfg.t_end > 0.0)) fail(e->line, "t_end: must be positive");
  }

  if (const Entry* e = get("dealias_fraction")) {
    cfg.dealias_fraction = parse_real(*e, "dealias_fraction");
    if (!(cfg.dealias_fraction > 0.0) || cfg.dealias_fraction > 1.0)
      fail(e->line, "dealias_fraction: must lie in (0, 1]");
  }

  if (const Entry* e = get("mode")) {
    if (e->value == "second_order") cfg.mode = EvolutionMode::SecondOrder;
    else if (e->value == "first_order") cfg.mode = EvolutionMode::FirstOrder;
    else if (e->value == "linearized") cfg.mode = EvolutionMode::Linearized;
    else fail(e->line, "mode: expected second_order, first_order or linearized");
  }

  if (const Entry* e = get("blowup_factor")) {
    cfg.blowup_factor = parse_real(*e, "blowup_factor");
    if (!(cfg.blowup_factor > 0.0)) fail(e->line, "blowup_factor: must be positive");
  }

  if (const Entry* e = get("enforce_stability"))
    cfg.enforce_stability = parse_bool(*e, "enforce_stability");
  if (const Entry* e = get("halt_on_margin_violation"))
    cfg.halt_on_violation = parse_bool(*e, "halt_on_margin_violation");

  if (const Entry* e = get("snapshot_every")) {
    long long v = parse_int(*e, "snapshot_every");
    if (v < 0) fail(e->line, "snapshot_every: must be >= 0");
    cfg.snapshot_every = static_cast<int>(v);
  }

  if (const Entry* e = get("seed")) cfg.initial.seed = parse_u64(*e, "seed");

  {
    const Entry& e = require("initial_kind");
    if (e.value == "single_mode") cfg.initial.kind = InitialKind::SingleMode;
    else if (e.value == "multi_mode") cfg.initial.kind = InitialKind::MultiMode;
    else if (e.value == "random_band") cfg.initial.kind = InitialKind::RandomBand;
    else fail(e.line, "initial_kind: expected single_mode, multi_mode or random_band");
  }

  auto positive_mode = [&](const Entry& e, const char* key) {
    long long v = parse_int(e, key);
    if (v < 1) fail(e.line, std::string(key) + ": must be >= 1");
    return static_cast<int>(v);
  };

  switch (cfg.initial.kind) {
    case InitialKind::SingleMode: {
      cfg.initial.amplitude = parse_real(require("amplitude"), "amplitude");
      cfg.initial.mode = positive_mode(require("mode_k"), "mode_k");
      if (const Entry* e = get("phase")) cfg.initial.phase = parse_real(*e, "phase");
      break;
    }
    case InitialKind::MultiMode: {
      const Entry& amps = require("amplitudes");
      const Entry& modes = require("modes");
      for (const auto& s : split_list(amps.value))
        cfg.initial.amplitudes.push_back(parse_real(Entry{s, amps.line}, "amplitudes"));
      for (const auto& s : split_list(modes.value))
        cfg.initial.modes.push_back(positive_mode(Entry{s, modes.line}, "modes"));
      if (const Entry* e = get("phases")) {
        for (const auto& s : split_list(e->value))
          cfg.initial.phases.push_back(parse_real(Entry{s, e->line}, "phases"));
      } else {
        cfg.initial.phases.assign(cfg.initial.modes.size(), 0.0);
      }
      if (cfg.initial.amplitudes.size() != cfg.initial.modes.size() ||
          cfg.initial.phases.size() != cfg.initial.modes.size())
        fail(modes.line, "amplitudes, modes, phases: lists must have one length");
      break;
    }
    case InitialKind::RandomBand: {
      cfg.initial.amplitude = parse_real(require("amplitude"), "amplitude");
      cfg.initial.band_min = positive_mode(require("band_min"), "band_min");
      cfg.initial.band_max = positive_mode(require("band_max"), "band_max");
      if (cfg.initial.band_max < cfg.initial.band_min)
        fail(require("band_max").line, "band_max: must be >= band_min");
      if (const Entry* e = get("decay")) {
        cfg.initial.decay = parse_real(*e, "decay");
        if (cfg.initial.decay < 0.0) fail(e->line, "decay: must be >= 0");
      }
      break;
    }
  }

  if (const Entry* e = get("phi1_amplitude"))
    cfg.initial.phi1_amplitude = parse_real(*e, "phi1_amplitude");
  if (const Entry* e = get("phi1_mode"))
    cfg.initial.phi1_mode = positive_mode(*e, "phi1_mode");
  if (const Entry* e = get("phi1_phase"))
    cfg.initial.phi1_phase = parse_real(*e, "phi1_phase");

  if (cfg.mode == EvolutionMode::SecondOrder && cfg.enforce_stability) {
    if (!(cfg.delta > 0.0 && cfg.delta < cfg.mu))
      throw ConfigError(
          "config: delta must satisfy 0 < delta < mu for enforced stable runs "
          "(delta = " + std::to_string(cfg.delta) + ", mu = " + std::to_string(cfg.mu) +
          ")");
  }

  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

const char* to_string(EvolutionMode m) {
  switch (m) {
    case EvolutionMode::SecondOrder: return "second_order";
    case EvolutionMode::FirstOrder: return "first_order";
    default: return "linearized";
  }
}

const char* to_string(InitialKind k) {
  switch (k) {
    case InitialKind::SingleMode: return "single_mode";
    case InitialKind::MultiMode: return "multi_mode";
    default: return "random_band";
  }
}

namespace {
std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace

void write_config(std::ostream& os, const RunConfig& cfg) {
  os << "mu = " << fmt(cfg.mu) << '\n';
  os << "delta = " << fmt(cfg.delta) << '\n';
  os << "n_points = " << cfg.n_points << '\n';
  if (cfg.dt > 0.0)
    os << "dt = " << fmt(cfg.dt) << '\n';
  else
    os << "dt = auto\n";
  os << "t_end = " << fmt(cfg.t_end) << '\n';
  os << "dealias_fraction = " << fmt(cfg.dealias_fraction) << '\n';
  os << "mode = " << to_string(cfg.mode) << '\n';
  os << "blowup_factor = " << fmt(cfg.blowup_factor) << '\n';
  os << "enforce_stability = " << (cfg.enforce_stability ? "true" : "false") << '\n';
  os << "halt_on_margin_violation = " << (cfg.halt_on_violation ? "true" : "false")
     << '\n';
  os << "snapshot_every = " << cfg.snapshot_every << '\n';
  os << "seed = " << cfg.initial.seed << '\n';
  os << "initial_kind = " << to_string(cfg.initial.kind) << '\n';
  switch (cfg.initial.kind) {
    case InitialKind::SingleMode:
      os << "amplitude = " << fmt(cfg.initial.amplitude) << '\n';
      os << "mode_k = " << cfg.initial.mode << '\n';
      os << "phase = " << fmt(cfg.initial.phase) << '\n';
      break;
    case InitialKind::MultiMode: {
      auto join_reals = [&](const std::vector<double>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i)
          s += (i ? "," : "") + fmt(v[i]);
        return s;
      };
      std::string modes;
      for (std::size_t i = 0; i < cfg.initial.modes.size(); ++i)
        modes += (i ? "," : "") + std::to_string(cfg.initial.modes[i]);
      os << "amplitudes = " << join_reals(cfg.initial.amplitudes) << '\n';
      os << "modes = " << modes << '\n';
      os << "phases = " << join_reals(cfg.initial.phases) << '\n';
      break;
    }
    case InitialKind::RandomBand:
      os << "amplitude = " << fmt(cfg.initial.amplitude) << '\n';
      os << "band_min = " << cfg.initial.band_min << '\n';
      os << "band_max = " << cfg.initial.band_max << '\n';
      os << "decay = " << fmt(cfg.initial.decay) << '\n';
      break;
  }
  if (cfg.initial.phi1_amplitude != 0.0) {
    os << "phi1_amplitude = " << fmt(cfg.initial.phi1_amplitude) << '\n';
    os << "phi1_mode = " << cfg.initial.phi1_mode << '\n';
    os << "phi1_phase = " << fmt(cfg.initial.phi1_phase) << '\n';
  }
}

}  // namespace cvsheet
