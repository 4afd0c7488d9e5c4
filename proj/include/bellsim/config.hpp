#pragma once

#include <string>
#include <string_view>

#include "bellsim/analysis.hpp"
#include "bellsim/simulator.hpp"

namespace bellsim {

enum class OutputFormat { Csv, Json, Both };

// Effective options of one invocation: the experiment parameters plus the
// sweep grid and output selection. The quad member of `experiment` is a
// placeholder; subcommands instantiate it from the arrangement.
struct RunOptions {
    ExperimentConfig experiment;
    double theta_min = 0.0;
    double theta_max = kPi / 4.0;
    int theta_steps = 400;
    std::string arrangement = "standard";
    std::string output; // path stem; empty means stdout
    OutputFormat format = OutputFormat::Both;

    Arrangement make_arrangement() const;

    friend bool operator==(const RunOptions&, const RunOptions&);
};

// Defaults, with the seed taken from BELLSIM_SEED when that is set.
RunOptions default_options();

// Parses line-oriented `key = value` text with `#` comments. Unknown keys,
// duplicate keys, malformed lines and out-of-range values raise ConfigError
// with the line number and key. Angle-valued keys accept a `rad` (default)
// or `deg` suffix. Keys:
//   model            quantum | lhv_sharp | lhv_malus
//   trials           per-pair trial count; 0 disables Monte Carlo in sweeps
//   seed             64-bit unsigned
//   workers          >= 1
//   setting_policy   block | random
//   window_s         coincidence window, seconds, > 0
//   jitter_s         timestamp jitter sigma, seconds, >= 0
//   delay_s          pair delay, seconds
//   efficiency       per-channel detector efficiency in [0, 1]
//   theta_min        sweep start (angle)
//   theta_max        sweep end (angle)
//   theta_steps      grid size, >= 1
//   arrangement      standard
//   output           output path stem
//   format           csv | json | both
RunOptions parse_config(std::string_view text);

// Applies one key/value pair; shared by the file parser and CLI overrides.
// line is used in error messages (0 = not from a file).
void apply_config_key(RunOptions& options, std::string_view key, std::string_view value,
                      int line = 0);

// Emits the options in the same key = value format; round-trips exactly
// through parse_config.
std::string config_to_text(const RunOptions& options);

} // namespace bellsim
