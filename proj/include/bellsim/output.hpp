#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include <json.hpp>

#include "bellsim/analysis.hpp"
#include "bellsim/config.hpp"

namespace bellsim {

// Shortest of 9 significant digits, printf %.9g.
std::string format_sig9(double value);

// Header: theta_rad,ch_analytic,ch_mc,ch_mc_stderr,p_cond,criterion,violation
// Numbers carry 9 significant digits, booleans are true/false, Monte Carlo
// columns are empty when absent, newlines are Unix.
void emit_sweep_csv(std::span<const SweepRow> rows, std::ostream& out);
std::string sweep_csv_string(std::span<const SweepRow> rows);

// Per-row counts and estimates of one experiment run.
std::string counts_csv_string(const CountsTable& counts);

// Fixed-order summary objects. wall_clock_s is always the last key.
struct AnalysisSummary {
    std::optional<double> ch_max;
    std::optional<double> theta_max;
    std::optional<double> theta_boundary;
    std::optional<double> eta_threshold;
    std::optional<bool> violation;
    std::optional<bool> containment;
};

nlohmann::ordered_json config_json(const RunOptions& options);
nlohmann::ordered_json analysis_results_json(const AnalysisSummary& analysis);
nlohmann::ordered_json summary_json(const std::string& command, const RunOptions& options,
                                    const AnalysisSummary& analysis, double wall_clock_s);

// Counts, per-field estimates and per-row conditionals of one run,
// appended under "results". A conditional is null when its row has no
// channel-1 singles.
nlohmann::ordered_json run_json(const RunOptions& options, const CountsTable& counts,
                                const JointProbabilityEstimates& estimates,
                                const std::array<std::optional<EstimateWithError>, 4>& conditionals,
                                const AnalysisSummary& analysis, double wall_clock_s);

} // namespace bellsim
