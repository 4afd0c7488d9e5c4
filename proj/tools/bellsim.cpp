// Command-line front end: angle sweeps, single experiment runs, violation
// boundary and detector-efficiency analysis, and model comparison, with
// CSV/JSON emission for plotting and regression testing.

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "bellsim/analysis.hpp"
#include "bellsim/config.hpp"
#include "bellsim/output.hpp"

namespace {

using namespace bellsim;
using nlohmann::ordered_json;

struct CliOverrides {
    std::string config_path;
    // Flag overrides keyed by config key, applied on top of the file.
    std::map<std::string, std::string> values;
};

void add_common_options(CLI::App* cmd, CliOverrides& overrides) {
    cmd->add_option("-c,--config", overrides.config_path,
                    "Path to a key = value configuration file");
    static constexpr const char* kKeys[] = {
        "model",      "trials",    "seed",        "workers", "setting_policy",
        "window_s",   "jitter_s",  "delay_s",     "efficiency", "theta_min",
        "theta_max",  "theta_steps", "arrangement", "output",  "format"};
    for (const char* key : kKeys) {
        std::string flag = "--" + std::string(key);
        for (char& c : flag) {
            if (c == '_') c = '-';
        }
        if (std::string(key) == "output") flag += ",-o";
        cmd->add_option_function<std::string>(
            flag,
            [&overrides, key](const std::string& value) { overrides.values[key] = value; },
            std::string("Overrides the '") + key + "' config key");
    }
}

RunOptions resolve_options(const CliOverrides& overrides) {
    RunOptions options = default_options();
    if (!overrides.config_path.empty()) {
        std::ifstream in(overrides.config_path);
        if (!in) {
            throw ConfigError("cannot open config file '" + overrides.config_path + "'");
        }
        std::ostringstream text;
        text << in.rdbuf();
        options = parse_config(text.str());
    }
    for (const auto& [key, value] : overrides.values) {
        apply_config_key(options, key, value);
    }
    if (options.theta_max < options.theta_min) {
        throw ConfigError("theta_max must be >= theta_min");
    }
    return options;
}

void write_text(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot open output file '" + path + "'");
    }
    out << body;
    if (!out) {
        throw Error("failed writing output file '" + path + "'");
    }
}

void deliver(const RunOptions& options, const std::optional<std::string>& csv,
             const std::optional<std::string>& json_text) {
    const bool want_csv = options.format != OutputFormat::Json && csv.has_value();
    const bool want_json = options.format != OutputFormat::Csv && json_text.has_value();
    if (options.output.empty()) {
        if (want_csv) std::cout << *csv;
        if (want_json) std::cout << *json_text << '\n';
        return;
    }
    if (want_csv) write_text(options.output + ".csv", *csv);
    if (want_json) write_text(options.output + ".json", *json_text + "\n");
}

// Full analytic characterization of a model on the configured grid. The
// boundary is null for non-violating models unless required, in which case
// the error propagates (exit code 2).
AnalysisSummary analyze_model(const ModelSpec& model, const Arrangement& arrangement,
                              const RunOptions& options, bool require_boundary) {
    AnalysisSummary summary;
    const MaxViolation peak = max_violation(model, arrangement);
    summary.ch_max = peak.ch_max;
    summary.theta_max = peak.theta_max;
    summary.violation = peak.ch_max > 1.0;
    if (require_boundary) {
        summary.theta_boundary = find_violation_boundary(model, arrangement);
    } else {
        try {
            summary.theta_boundary = find_violation_boundary(model, arrangement);
        } catch (const NoViolationError&) {
            summary.theta_boundary = std::nullopt;
        }
    }
    summary.eta_threshold = efficiency_threshold(model, arrangement);
    const std::vector<double> grid =
        theta_grid(options.theta_min, options.theta_max, options.theta_steps);
    summary.containment = criterion_region(model, grid, arrangement).containment;
    return summary;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int run_command(const std::string& command, const CliOverrides& overrides) {
    const auto start = std::chrono::steady_clock::now();
    const RunOptions options = resolve_options(overrides);
    const Arrangement arrangement = options.make_arrangement();
    const ModelSpec& model = options.experiment.model;

    if (command == "sweep") {
        const std::vector<double> grid =
            theta_grid(options.theta_min, options.theta_max, options.theta_steps);
        const std::vector<SweepRow> rows =
            options.experiment.trials_per_pair > 0
                ? sweep_ch_mc(options.experiment, arrangement, grid)
                : sweep_ch(model, arrangement, grid);
        const AnalysisSummary summary = analyze_model(model, arrangement, options, false);
        deliver(options, sweep_csv_string(rows),
                summary_json(command, options, summary, seconds_since(start)).dump(2));
        return 0;
    }
    if (command == "run") {
        if (options.experiment.trials_per_pair < 1) {
            throw ConfigError("key 'trials': must be >= 1 for run");
        }
        ExperimentConfig config = options.experiment;
        config.quad = arrangement.quad(options.theta_min);
        const CountsTable counts = run_experiment(config);
        const JointProbabilityEstimates estimates = estimate_probabilities(counts);
        std::array<std::optional<EstimateWithError>, 4> conditionals;
        for (int row = 0; row < 4; ++row) {
            if (counts.rows[row].n_singles1 > 0) {
                conditionals[row] = estimate_conditional(counts.rows[row]);
            }
        }
        const AnalysisSummary summary = analyze_model(model, arrangement, options, false);
        deliver(options, counts_csv_string(counts),
                run_json(options, counts, estimates, conditionals, summary,
                         seconds_since(start))
                    .dump(2));
        return 0;
    }
    if (command == "boundary" || command == "efficiency") {
        const AnalysisSummary summary =
            analyze_model(model, arrangement, options, command == "boundary");
        deliver(options, std::nullopt,
                summary_json(command, options, summary, seconds_since(start)).dump(2));
        return 0;
    }
    if (command == "compare") {
        ordered_json j;
        j["command"] = command;
        j["config"] = config_json(options);
        ordered_json models;
        for (ModelKind kind : {ModelKind::Quantum, ModelKind::LhvSharp, ModelKind::LhvMalus}) {
            ModelSpec candidate = model;
            candidate.kind = kind;
            const char* name = kind == ModelKind::Quantum
                                   ? "quantum"
                                   : (kind == ModelKind::LhvSharp ? "lhv_sharp" : "lhv_malus");
            models[name] =
                analysis_results_json(analyze_model(candidate, arrangement, options, false));
        }
        j["results"] = ordered_json{{"models", models}};
        j["wall_clock_s"] = seconds_since(start);
        deliver(options, std::nullopt, j.dump(2));
        return 0;
    }
    throw Error("unknown command '" + command + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator and analysis toolkit for two-photon polarization experiments"};
    app.require_subcommand(1);

    std::array<std::pair<const char*, const char*>, 5> commands = {{
        {"sweep", "Evaluate the counting-form statistic over an angle grid"},
        {"run", "Run one trial-by-trial experiment and report counts and estimates"},
        {"boundary", "Locate the maximum violation and the violation boundary"},
        {"efficiency", "Find the detector-efficiency threshold for violation"},
        {"compare", "Report the analytic characterization of all three models"},
    }};
    std::array<CliOverrides, 5> overrides;
    for (std::size_t i = 0; i < commands.size(); ++i) {
        CLI::App* cmd = app.add_subcommand(commands[i].first, commands[i].second);
        add_common_options(cmd, overrides[i]);
    }

    try {
        app.parse(argc, argv);
        for (std::size_t i = 0; i < commands.size(); ++i) {
            if (app.get_subcommand(commands[i].first)->parsed()) {
                return run_command(commands[i].first, overrides[i]);
            }
        }
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1; // flag/usage problems are config errors
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
