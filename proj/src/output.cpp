#include "bellsim/output.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

namespace bellsim {

namespace {

using nlohmann::ordered_json;

const char* model_name(ModelKind kind) {
    switch (kind) {
    case ModelKind::Quantum: return "quantum";
    case ModelKind::LhvSharp: return "lhv_sharp";
    case ModelKind::LhvMalus: return "lhv_malus";
    }
    return "?";
}

const char* format_name(OutputFormat format) {
    switch (format) {
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Json: return "json";
    case OutputFormat::Both: return "both";
    }
    return "?";
}

ordered_json optional_number(const std::optional<double>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json optional_flag(const std::optional<bool>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json estimate_json(const EstimateWithError& e) {
    const char* method = e.method == ErrorMethod::Analytic
                             ? "analytic"
                             : (e.method == ErrorMethod::Binomial ? "binomial" : "bootstrap");
    return ordered_json{{"value", e.value}, {"stderr", e.std_error}, {"method", method}};
}

} // namespace

std::string format_sig9(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

void emit_sweep_csv(std::span<const SweepRow> rows, std::ostream& out) {
    if (rows.empty()) {
        throw DomainError("emit_sweep_csv: no rows");
    }
    out << "theta_rad,ch_analytic,ch_mc,ch_mc_stderr,p_cond,criterion,violation\n";
    for (const SweepRow& row : rows) {
        out << format_sig9(row.theta) << ',' << format_sig9(row.ch_analytic) << ',';
        if (row.ch_mc) {
            out << format_sig9(row.ch_mc->value) << ',' << format_sig9(row.ch_mc->std_error);
        } else {
            out << ',';
        }
        out << ',' << format_sig9(row.p_cond) << ',' << (row.criterion ? "true" : "false") << ','
            << (row.violation ? "true" : "false") << '\n';
    }
}

std::string sweep_csv_string(std::span<const SweepRow> rows) {
    std::ostringstream out;
    emit_sweep_csv(rows, out);
    return out.str();
}

std::string counts_csv_string(const CountsTable& counts) {
    static constexpr const char* kRowNames[4] = {"a_b", "a_bprime", "aprime_b", "aprime_bprime"};
    std::ostringstream out;
    out << "pair,n_pairs_emitted,n_singles1,n_singles2,n_coincidences\n";
    for (int row = 0; row < 4; ++row) {
        out << kRowNames[row] << ',' << counts.rows[row].n_pairs_emitted << ','
            << counts.rows[row].n_singles1 << ',' << counts.rows[row].n_singles2 << ','
            << counts.rows[row].n_coincidences << '\n';
    }
    return out.str();
}

ordered_json config_json(const RunOptions& options) {
    const ExperimentConfig& exp = options.experiment;
    return ordered_json{{"model", model_name(exp.model.kind)},
                        {"trials", exp.trials_per_pair},
                        {"seed", exp.seed},
                        {"workers", exp.workers},
                        {"setting_policy",
                         exp.setting_policy == SettingPolicy::FixedPerBlock ? "block" : "random"},
                        {"window_s", exp.coincidence_window},
                        {"jitter_s", exp.model.timing_jitter_sigma},
                        {"delay_s", exp.model.pair_delay},
                        {"efficiency", exp.model.detector_efficiency},
                        {"theta_min", options.theta_min},
                        {"theta_max", options.theta_max},
                        {"theta_steps", options.theta_steps},
                        {"arrangement", options.arrangement},
                        {"output", options.output},
                        {"format", format_name(options.format)}};
}

ordered_json analysis_results_json(const AnalysisSummary& analysis) {
    ordered_json results;
    results["ch_max"] = optional_number(analysis.ch_max);
    results["theta_max"] = optional_number(analysis.theta_max);
    results["theta_boundary"] = optional_number(analysis.theta_boundary);
    results["eta_threshold"] = optional_number(analysis.eta_threshold);
    results["violation"] = optional_flag(analysis.violation);
    results["containment"] = optional_flag(analysis.containment);
    return results;
}

ordered_json summary_json(const std::string& command, const RunOptions& options,
                          const AnalysisSummary& analysis, double wall_clock_s) {
    ordered_json j;
    j["command"] = command;
    j["config"] = config_json(options);
    j["results"] = analysis_results_json(analysis);
    j["wall_clock_s"] = wall_clock_s;
    return j;
}

ordered_json run_json(const RunOptions& options, const CountsTable& counts,
                      const JointProbabilityEstimates& estimates,
                      const std::array<std::optional<EstimateWithError>, 4>& conditionals,
                      const AnalysisSummary& analysis, double wall_clock_s) {
    ordered_json j = summary_json("run", options, analysis, 0.0);
    static constexpr const char* kRowNames[4] = {"a_b", "a_bprime", "aprime_b", "aprime_bprime"};
    ordered_json rows = ordered_json::array();
    for (int row = 0; row < 4; ++row) {
        rows.push_back(ordered_json{
            {"pair", kRowNames[row]},
            {"n_pairs_emitted", counts.rows[row].n_pairs_emitted},
            {"n_singles1", counts.rows[row].n_singles1},
            {"n_singles2", counts.rows[row].n_singles2},
            {"n_coincidences", counts.rows[row].n_coincidences},
            {"p_cond", conditionals[row] ? estimate_json(*conditionals[row])
                                         : ordered_json(nullptr)}});
    }
    ordered_json& results = j["results"];
    results["counts"] = rows;
    results["estimates"] = ordered_json{{"p_ab", estimate_json(estimates.p_ab)},
                                        {"p_ab_prime", estimate_json(estimates.p_ab_prime)},
                                        {"p_aprime_b", estimate_json(estimates.p_aprime_b)},
                                        {"p_aprime_bprime",
                                         estimate_json(estimates.p_aprime_bprime)},
                                        {"p1_at_aprime", estimate_json(estimates.p1_at_aprime)},
                                        {"p2_at_b", estimate_json(estimates.p2_at_b)}};
    results["ch_mc"] = estimate_json(ch_estimate(estimates));
    j["wall_clock_s"] = wall_clock_s;
    return j;
}

} // namespace bellsim
