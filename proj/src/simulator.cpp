#include "bellsim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

namespace bellsim {

namespace {

// Emissions are spaced far apart relative to any sane window, so matching
// never crosses trials and partitioned runs merge exactly.
constexpr double kTrialSpacing = 1.0; // seconds

std::array<std::pair<Angle, Angle>, 4> pair_settings(const SettingsQuad& quad) {
    return {{{quad.a, quad.b},
             {quad.a, quad.b_prime},
             {quad.a_prime, quad.b},
             {quad.a_prime, quad.b_prime}}};
}

struct RowEvents {
    std::int64_t emitted = 0;
    std::vector<double> channel1;
    std::vector<double> channel2;
};

EstimateWithError binomial_estimate(std::int64_t hits, std::int64_t n) {
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    return EstimateWithError{p, std::sqrt(p * (1.0 - p) / static_cast<double>(n)),
                             ErrorMethod::Binomial};
}

} // namespace

void ExperimentConfig::validate() const {
    model.validate();
    if (trials_per_pair < 1) {
        throw DomainError("ExperimentConfig: trials_per_pair must be >= 1");
    }
    if (!(coincidence_window > 0.0) || !std::isfinite(coincidence_window)) {
        throw DomainError("ExperimentConfig: coincidence window must be > 0");
    }
    if (workers < 1) {
        throw DomainError("ExperimentConfig: workers must be >= 1");
    }
}

void CountsRow::validate() const {
    if (n_pairs_emitted < 0 || n_singles1 < 0 || n_singles2 < 0 || n_coincidences < 0) {
        throw DomainError("CountsRow: negative count");
    }
    if (n_singles1 > n_pairs_emitted || n_singles2 > n_pairs_emitted) {
        throw DomainError("CountsRow: singles exceed emitted pairs");
    }
    if (n_coincidences > std::min(n_singles1, n_singles2)) {
        throw DomainError("CountsRow: coincidences exceed singles");
    }
}

void CountsTable::validate() const {
    for (const CountsRow& row : rows) row.validate();
}

std::int64_t CountsTable::total_pairs_emitted() const {
    std::int64_t total = 0;
    for (const CountsRow& row : rows) total += row.n_pairs_emitted;
    return total;
}

CountsTable run_experiment_range(const ExperimentConfig& config, std::int64_t begin,
                                 std::int64_t end) {
    config.validate();
    const std::int64_t total = 4 * config.trials_per_pair;
    if (begin < 0 || end > total || begin > end) {
        throw DomainError("run_experiment_range: bad trial range");
    }

    const auto settings = pair_settings(config.quad);
    const int workers = static_cast<int>(
        std::min<std::int64_t>(config.workers, std::max<std::int64_t>(end - begin, 1)));
    std::vector<std::array<RowEvents, 4>> per_worker(workers);

    auto generate = [&](int w, std::int64_t lo, std::int64_t hi) {
        std::array<RowEvents, 4>& acc = per_worker[w];
        for (std::int64_t i = lo; i < hi; ++i) {
            TrialRng rng(config.seed, static_cast<std::uint64_t>(i));
            int row;
            if (config.setting_policy == SettingPolicy::FixedPerBlock) {
                row = static_cast<int>(i / config.trials_per_pair);
            } else {
                const bool station1_a = rng.uniform() < 0.5;
                const bool station2_b = rng.uniform() < 0.5;
                row = (station1_a ? 0 : 2) + (station2_b ? 0 : 1);
            }
            TrialRecord tr = sample_trial(config.model, settings[row].first,
                                          settings[row].second, rng,
                                          static_cast<double>(i) * kTrialSpacing);
            tr.trial_index = i;
            tr.side1_label = row < 2 ? Station1Setting::A : Station1Setting::APrime;
            tr.side2_label = (row % 2) == 0 ? Station2Setting::B : Station2Setting::BPrime;

            RowEvents& slot = acc[row];
            ++slot.emitted;
            if (tr.detected1) slot.channel1.push_back(tr.t1);
            if (tr.detected2) slot.channel2.push_back(tr.t2);
        }
    };

    if (workers == 1) {
        generate(0, begin, end);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::int64_t span = end - begin;
        for (int w = 0; w < workers; ++w) {
            const std::int64_t lo = begin + span * w / workers;
            const std::int64_t hi = begin + span * (w + 1) / workers;
            pool.emplace_back(generate, w, lo, hi);
        }
        for (std::thread& t : pool) t.join();
    }

    CountsTable table;
    table.quad = config.quad;
    for (int row = 0; row < 4; ++row) {
        std::int64_t emitted = 0;
        std::vector<double> events1;
        std::vector<double> events2;
        for (const auto& acc : per_worker) {
            emitted += acc[row].emitted;
            events1.insert(events1.end(), acc[row].channel1.begin(), acc[row].channel1.end());
            events2.insert(events2.end(), acc[row].channel2.begin(), acc[row].channel2.end());
        }
        std::sort(events1.begin(), events1.end());
        std::sort(events2.begin(), events2.end());
        table.rows[row] = CountsRow{
            emitted, static_cast<std::int64_t>(events1.size()),
            static_cast<std::int64_t>(events2.size()),
            pair_coincidences(events1, events2, config.coincidence_window,
                              config.model.pair_delay)};
    }
    table.validate();
    return table;
}

CountsTable run_experiment(const ExperimentConfig& config) {
    config.validate();
    return run_experiment_range(config, 0, 4 * config.trials_per_pair);
}

std::int64_t pair_coincidences(std::span<const double> events1, std::span<const double> events2,
                               double window, double delay) {
    if (!(window > 0.0)) {
        throw DomainError("pair_coincidences: window must be > 0");
    }
    if (!std::is_sorted(events1.begin(), events1.end()) ||
        !std::is_sorted(events2.begin(), events2.end())) {
        throw DomainError("pair_coincidences: event lists must be time ordered");
    }
    const double half = window / 2.0;
    std::int64_t matched = 0;
    std::size_t j = 0;
    for (const double t1 : events1) {
        while (j < events2.size() && events2[j] - t1 - delay < -half) ++j;
        if (j == events2.size()) break;
        if (events2[j] - t1 - delay <= half) {
            ++matched;
            ++j;
        }
    }
    return matched;
}

JointProbabilitySet JointProbabilityEstimates::central() const {
    return JointProbabilitySet{p_ab.value,          p_ab_prime.value, p_aprime_b.value,
                               p_aprime_bprime.value, p1_at_aprime.value, p2_at_b.value};
}

JointProbabilityEstimates estimate_probabilities(const CountsTable& counts) {
    counts.validate();
    for (const CountsRow& row : counts.rows) {
        if (row.n_pairs_emitted <= 0) {
            throw DomainError("estimate_probabilities: empty row");
        }
    }
    JointProbabilityEstimates est;
    est.p_ab = binomial_estimate(counts.rows[kRowAB].n_coincidences,
                                 counts.rows[kRowAB].n_pairs_emitted);
    est.p_ab_prime = binomial_estimate(counts.rows[kRowABPrime].n_coincidences,
                                       counts.rows[kRowABPrime].n_pairs_emitted);
    est.p_aprime_b = binomial_estimate(counts.rows[kRowAPrimeB].n_coincidences,
                                       counts.rows[kRowAPrimeB].n_pairs_emitted);
    est.p_aprime_bprime = binomial_estimate(counts.rows[kRowAPrimeBPrime].n_coincidences,
                                            counts.rows[kRowAPrimeBPrime].n_pairs_emitted);
    // Both singles come from the (a', b) row, matching the statistic's
    // denominator.
    est.p1_at_aprime = binomial_estimate(counts.rows[kRowAPrimeB].n_singles1,
                                         counts.rows[kRowAPrimeB].n_pairs_emitted);
    est.p2_at_b = binomial_estimate(counts.rows[kRowAPrimeB].n_singles2,
                                    counts.rows[kRowAPrimeB].n_pairs_emitted);
    return est;
}

EstimateWithError estimate_conditional(const CountsRow& row, int resamples, std::uint64_t seed) {
    row.validate();
    if (row.n_singles1 <= 0) {
        throw DomainError("estimate_conditional: no channel-1 singles");
    }
    if (resamples < 2) {
        throw DomainError("estimate_conditional: needs at least 2 resamples");
    }
    const double value =
        static_cast<double>(row.n_coincidences) / static_cast<double>(row.n_singles1);

    // Trial-level bootstrap: each emitted trial falls into one of
    // {coincidence, channel-1 only, rest}; resampling the trials is a
    // multinomial redraw of those categories.
    const std::int64_t n = row.n_pairs_emitted;
    const double p_coinc = static_cast<double>(row.n_coincidences) / static_cast<double>(n);
    const std::int64_t singles1_only = row.n_singles1 - row.n_coincidences;

    TrialRng rng(seed, 0x626f6f74ULL);
    auto binomial = [&rng](std::int64_t trials, double p) -> std::int64_t {
        if (trials <= 0 || p <= 0.0) return 0;
        if (p >= 1.0) return trials;
        std::binomial_distribution<std::int64_t> draw(trials, p);
        return draw(rng);
    };
    std::vector<double> ratios;
    ratios.reserve(static_cast<std::size_t>(resamples));
    for (int k = 0; k < resamples; ++k) {
        const std::int64_t c = binomial(n, p_coinc);
        std::int64_t s1 = c;
        if (singles1_only > 0) {
            const double p_rest = static_cast<double>(singles1_only) /
                                  static_cast<double>(n - row.n_coincidences);
            s1 += binomial(n - c, p_rest);
        }
        if (s1 > 0) {
            ratios.push_back(static_cast<double>(c) / static_cast<double>(s1));
        }
    }
    if (ratios.size() < 2) {
        return EstimateWithError{value, 0.0, ErrorMethod::Bootstrap};
    }
    double mean = 0.0;
    for (double r : ratios) mean += r;
    mean /= static_cast<double>(ratios.size());
    double ss = 0.0;
    for (double r : ratios) ss += (r - mean) * (r - mean);
    const double std_error = std::sqrt(ss / static_cast<double>(ratios.size() - 1));
    return EstimateWithError{value, std_error, ErrorMethod::Bootstrap};
}

CountsTable merge_counts(std::span<const CountsTable> parts) {
    if (parts.empty()) {
        throw DomainError("merge_counts: nothing to merge");
    }
    CountsTable merged = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) {
        if (!(parts[i].quad == merged.quad)) {
            throw DomainError("merge_counts: mismatched settings quad");
        }
        for (int row = 0; row < 4; ++row) {
            merged.rows[row].n_pairs_emitted += parts[i].rows[row].n_pairs_emitted;
            merged.rows[row].n_singles1 += parts[i].rows[row].n_singles1;
            merged.rows[row].n_singles2 += parts[i].rows[row].n_singles2;
            merged.rows[row].n_coincidences += parts[i].rows[row].n_coincidences;
        }
    }
    return merged;
}

} // namespace bellsim
