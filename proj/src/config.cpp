#include "bellsim/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>

namespace bellsim {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

[[noreturn]] void fail(int line, const std::string& message) {
    if (line > 0) {
        throw ConfigError("line " + std::to_string(line) + ": " + message);
    }
    throw ConfigError(message);
}

double parse_double(std::string_view value, std::string_view key, int line) {
    const std::string buf(value);
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || buf.empty() || !std::isfinite(v)) {
        fail(line, "key '" + std::string(key) + "': expected a number, got '" + buf + "'");
    }
    return v;
}

long long parse_integer(std::string_view value, std::string_view key, int line) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        fail(line, "key '" + std::string(key) + "': expected an integer, got '" +
                       std::string(value) + "'");
    }
    return v;
}

std::uint64_t parse_seed(std::string_view value, std::string_view key, int line) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        fail(line, "key '" + std::string(key) + "': expected an unsigned integer");
    }
    return v;
}

// Angles accept `rad` (default) or `deg` suffixes, e.g. "45 deg".
double parse_angle_radians(std::string_view value, std::string_view key, int line) {
    std::string_view number = value;
    double factor = 1.0;
    if (value.size() >= 3) {
        const std::string_view suffix = value.substr(value.size() - 3);
        if (suffix == "deg") {
            factor = kPi / 180.0;
            number = trim(value.substr(0, value.size() - 3));
        } else if (suffix == "rad") {
            number = trim(value.substr(0, value.size() - 3));
        }
    }
    return factor * parse_double(number, key, line);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

Arrangement RunOptions::make_arrangement() const {
    if (arrangement == "standard") {
        return Arrangement::standard();
    }
    throw ConfigError("unknown arrangement '" + arrangement + "'");
}

bool operator==(const RunOptions& lhs, const RunOptions& rhs) {
    const ExperimentConfig& a = lhs.experiment;
    const ExperimentConfig& b = rhs.experiment;
    return a.model.kind == b.model.kind &&
           a.model.detector_efficiency == b.model.detector_efficiency &&
           a.model.timing_jitter_sigma == b.model.timing_jitter_sigma &&
           a.model.pair_delay == b.model.pair_delay && a.trials_per_pair == b.trials_per_pair &&
           a.setting_policy == b.setting_policy &&
           a.coincidence_window == b.coincidence_window && a.seed == b.seed &&
           a.workers == b.workers && lhs.theta_min == rhs.theta_min &&
           lhs.theta_max == rhs.theta_max && lhs.theta_steps == rhs.theta_steps &&
           lhs.arrangement == rhs.arrangement && lhs.output == rhs.output &&
           lhs.format == rhs.format;
}

RunOptions default_options() {
    RunOptions options;
    options.experiment.quad = Arrangement::standard().quad(kPi / 8.0);
    if (const char* env = std::getenv("BELLSIM_SEED")) {
        options.experiment.seed = parse_seed(trim(env), "BELLSIM_SEED", 0);
    }
    return options;
}

void apply_config_key(RunOptions& options, std::string_view key, std::string_view value,
                      int line) {
    ExperimentConfig& exp = options.experiment;
    if (key == "model") {
        if (value == "quantum") {
            exp.model.kind = ModelKind::Quantum;
        } else if (value == "lhv_sharp") {
            exp.model.kind = ModelKind::LhvSharp;
        } else if (value == "lhv_malus") {
            exp.model.kind = ModelKind::LhvMalus;
        } else {
            fail(line, "key 'model': expected quantum|lhv_sharp|lhv_malus");
        }
    } else if (key == "trials") {
        const long long v = parse_integer(value, key, line);
        if (v < 0) fail(line, "key 'trials': must be >= 0");
        exp.trials_per_pair = v;
    } else if (key == "seed") {
        exp.seed = parse_seed(value, key, line);
    } else if (key == "workers") {
        const long long v = parse_integer(value, key, line);
        if (v < 1 || v > 1024) fail(line, "key 'workers': must be in [1, 1024]");
        exp.workers = static_cast<int>(v);
    } else if (key == "setting_policy") {
        if (value == "block") {
            exp.setting_policy = SettingPolicy::FixedPerBlock;
        } else if (value == "random") {
            exp.setting_policy = SettingPolicy::RandomPerTrial;
        } else {
            fail(line, "key 'setting_policy': expected block|random");
        }
    } else if (key == "window_s") {
        const double v = parse_double(value, key, line);
        if (!(v > 0.0)) fail(line, "key 'window_s': must be > 0");
        exp.coincidence_window = v;
    } else if (key == "jitter_s") {
        const double v = parse_double(value, key, line);
        if (v < 0.0) fail(line, "key 'jitter_s': must be >= 0");
        exp.model.timing_jitter_sigma = v;
    } else if (key == "delay_s") {
        exp.model.pair_delay = parse_double(value, key, line);
    } else if (key == "efficiency") {
        const double v = parse_double(value, key, line);
        if (v < 0.0 || v > 1.0) fail(line, "key 'efficiency': must lie in [0, 1]");
        exp.model.detector_efficiency = v;
    } else if (key == "theta_min") {
        const double v = parse_angle_radians(value, key, line);
        if (v < 0.0 || v > kPi) fail(line, "key 'theta_min': must lie in [0, pi]");
        options.theta_min = v;
    } else if (key == "theta_max") {
        const double v = parse_angle_radians(value, key, line);
        if (v < 0.0 || v > kPi) fail(line, "key 'theta_max': must lie in [0, pi]");
        options.theta_max = v;
    } else if (key == "theta_steps") {
        const long long v = parse_integer(value, key, line);
        if (v < 1 || v > 10000000) fail(line, "key 'theta_steps': must be in [1, 1e7]");
        options.theta_steps = static_cast<int>(v);
    } else if (key == "arrangement") {
        if (value != "standard") fail(line, "key 'arrangement': expected standard");
        options.arrangement = std::string(value);
    } else if (key == "output") {
        options.output = std::string(value);
    } else if (key == "format") {
        if (value == "csv") {
            options.format = OutputFormat::Csv;
        } else if (value == "json") {
            options.format = OutputFormat::Json;
        } else if (value == "both") {
            options.format = OutputFormat::Both;
        } else {
            fail(line, "key 'format': expected csv|json|both");
        }
    } else {
        fail(line, "unknown key '" + std::string(key) + "'");
    }
}

RunOptions parse_config(std::string_view text) {
    RunOptions options = default_options();
    std::set<std::string, std::less<>> seen;
    int line_number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        std::string_view raw = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_number;

        const std::size_t hash = raw.find('#');
        if (hash != std::string_view::npos) raw = raw.substr(0, hash);
        const std::string_view stripped = trim(raw);
        if (stripped.empty()) continue;

        const std::size_t eq = stripped.find('=');
        if (eq == std::string_view::npos) {
            fail(line_number, "expected 'key = value'");
        }
        const std::string_view key = trim(stripped.substr(0, eq));
        const std::string_view value = trim(stripped.substr(eq + 1));
        if (key.empty()) {
            fail(line_number, "expected 'key = value'");
        }
        if (!seen.insert(std::string(key)).second) {
            fail(line_number, "duplicate key '" + std::string(key) + "'");
        }
        apply_config_key(options, key, value, line_number);
    }
    if (options.theta_max < options.theta_min) {
        throw ConfigError("theta_max must be >= theta_min");
    }
    return options;
}

std::string config_to_text(const RunOptions& options) {
    const ExperimentConfig& exp = options.experiment;
    std::string text;
    auto kv = [&text](std::string_view key, const std::string& value) {
        text += std::string(key) + " = " + value + "\n";
    };
    switch (exp.model.kind) {
    case ModelKind::Quantum: kv("model", "quantum"); break;
    case ModelKind::LhvSharp: kv("model", "lhv_sharp"); break;
    case ModelKind::LhvMalus: kv("model", "lhv_malus"); break;
    }
    kv("trials", std::to_string(exp.trials_per_pair));
    kv("seed", std::to_string(exp.seed));
    kv("workers", std::to_string(exp.workers));
    kv("setting_policy",
       exp.setting_policy == SettingPolicy::FixedPerBlock ? "block" : "random");
    kv("window_s", format_double(exp.coincidence_window));
    kv("jitter_s", format_double(exp.model.timing_jitter_sigma));
    kv("delay_s", format_double(exp.model.pair_delay));
    kv("efficiency", format_double(exp.model.detector_efficiency));
    kv("theta_min", format_double(options.theta_min));
    kv("theta_max", format_double(options.theta_max));
    kv("theta_steps", std::to_string(options.theta_steps));
    kv("arrangement", options.arrangement);
    kv("output", options.output);
    switch (options.format) {
    case OutputFormat::Csv: kv("format", "csv"); break;
    case OutputFormat::Json: kv("format", "json"); break;
    case OutputFormat::Both: kv("format", "both"); break;
    }
    return text;
}

} // namespace bellsim
