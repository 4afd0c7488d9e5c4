#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "bellsim/bell_core.hpp"
#include "bellsim/models.hpp"

namespace bellsim {

enum class SettingPolicy { FixedPerBlock, RandomPerTrial };

struct ExperimentConfig {
    ModelSpec model;
    SettingsQuad quad;
    std::int64_t trials_per_pair = 10000;
    SettingPolicy setting_policy = SettingPolicy::FixedPerBlock;
    double coincidence_window = 1e-3; // seconds, full width
    std::uint64_t seed = 42;
    int workers = 1;

    void validate() const;
};

// Setting-pair rows, in the fixed order (a,b), (a,b'), (a',b), (a',b').
inline constexpr int kRowAB = 0;
inline constexpr int kRowABPrime = 1;
inline constexpr int kRowAPrimeB = 2;
inline constexpr int kRowAPrimeBPrime = 3;

struct CountsRow {
    std::int64_t n_pairs_emitted = 0;
    std::int64_t n_singles1 = 0;
    std::int64_t n_singles2 = 0;
    std::int64_t n_coincidences = 0;

    void validate() const;

    friend bool operator==(const CountsRow&, const CountsRow&) = default;
};

struct CountsTable {
    SettingsQuad quad;
    std::array<CountsRow, 4> rows{};

    void validate() const;
    std::int64_t total_pairs_emitted() const;

    friend bool operator==(const CountsTable&, const CountsTable&) = default;
};

// Generates trials_per_pair trials for each setting pair (FixedPerBlock)
// or 4 * trials_per_pair trials with per-trial uniform random pair choice
// (RandomPerTrial), counts detections, and counts window-matched
// coincidences. The result is bit-identical for identical (config, seed)
// regardless of the worker count.
CountsTable run_experiment(const ExperimentConfig& config);

// Same, restricted to the global trial indices [begin, end) of the full
// run. Partitions of [0, total) merge back to the full run's table.
CountsTable run_experiment_range(const ExperimentConfig& config, std::int64_t begin,
                                 std::int64_t end);

// Greedy one-to-one matching in time order: each channel-1 event matches
// the earliest unmatched channel-2 event with |t2 - t1 - delay| <= window/2.
// Both lists must be sorted ascending.
std::int64_t pair_coincidences(std::span<const double> events1, std::span<const double> events2,
                               double window, double delay);

// Per-field estimates of the six CH inputs. Joints are normalized by
// emitted pairs; singles are read from the (a',b) row. Binomial standard
// errors attached.
struct JointProbabilityEstimates {
    EstimateWithError p_ab;
    EstimateWithError p_ab_prime;
    EstimateWithError p_aprime_b;
    EstimateWithError p_aprime_bprime;
    EstimateWithError p1_at_aprime;
    EstimateWithError p2_at_b;

    JointProbabilitySet central() const;
};

JointProbabilityEstimates estimate_probabilities(const CountsTable& counts);

// Conditional probability n_coincidences / n_singles1 with a bootstrap
// standard error from trial-level resamples of the row's emitted trials.
EstimateWithError estimate_conditional(const CountsRow& row, int resamples = 1000,
                                       std::uint64_t seed = 0x9e3779b97f4a7c15ULL);

// Field-wise sum. All parts must share the same quad.
CountsTable merge_counts(std::span<const CountsTable> parts);

} // namespace bellsim
