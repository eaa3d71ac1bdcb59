#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "cvsheet/evolution.hpp"

namespace cvsheet {

// Raised for any syntactic or semantic problem in a config; the message
// carries the offending key and line number(s).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// key = value format, one pair per line, '#' starts a comment, blank lines
// ignored. Unknown keys and duplicate keys are errors (duplicates cite both
// lines). Recognized keys:
//
//   mu                        real (required)
//   delta                     real >= 0, default 0
//   n_points                  even int >= 8 (required)
//   dt                        "auto" or positive real, default auto
//   t_end                     positive real, default 1.0
//   dealias_fraction          real in (0, 1], default 2/3
//   mode                      second_order | first_order | linearized
//   blowup_factor             positive real, default 1e6
//   enforce_stability         true | false, default false
//   halt_on_margin_violation  true | false, default false
//   snapshot_every            int >= 0, default 0
//   seed                      unsigned 64-bit, default 0
//   initial_kind              single_mode | multi_mode | random_band (required)
//   amplitude                 real       (single_mode, random_band)
//   mode_k                    int >= 1   (single_mode)
//   phase                     real, default 0 (single_mode)
//   amplitudes, modes, phases comma lists, one entry per component (multi_mode;
//                             phases may be omitted for all-zero)
//   band_min, band_max        ints >= 1  (random_band)
//   decay                     real >= 0, default 2 (random_band)
//   phi1_amplitude            real, default 0 (cosine velocity component)
//   phi1_mode                 int >= 1, default 1
//   phi1_phase                real, default 0
//
// When mode = second_order and enforce_stability = true, 0 < delta < mu is
// required up front; other modes are exploratory and skip that constraint.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Re-emits a config in the same format, all keys explicit, suitable both for
// rereading and as the run record. Given the same RunConfig the bytes are
// identical.
void write_config(std::ostream& os, const RunConfig& cfg);

const char* to_string(EvolutionMode m);
const char* to_string(InitialKind k);

}  // namespace cvsheet
