#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bellsim/simulator.hpp"

namespace bellsim {

// One evaluated point of an angle sweep.
struct SweepRow {
    double theta = 0.0;       // sweep parameter, radians
    double ch_analytic = 0.0; // counting-form statistic from closed forms
    std::optional<EstimateWithError> ch_mc;
    double p_cond = 0.0;  // analytic conditional at the (a,b) pair
    bool criterion = false; // p_cond strictly exceeds the singles probability
    bool violation = false; // ch_analytic > 1
};

// Maps the sweep parameter onto a concrete settings quad. The standard
// family is the ladder (a, a', b, b') = (0, 2t, t, 3t), whose relative
// angles are (t, 3t, t, t); pair angles beyond pi/2 fold automatically.
struct Arrangement {
    std::string name;
    std::function<SettingsQuad(double)> quad_of;

    SettingsQuad quad(double theta) const { return quad_of(theta); }

    // Relative angles of the pairs (a,b), (a,b'), (a',b), (a',b').
    std::array<double, 4> pair_angles(double theta) const;

    static Arrangement standard();
};

// Inclusive linear grid with `steps` points; steps == 1 yields {lo}.
std::vector<double> theta_grid(double lo, double hi, int steps);

// Counting-form statistic from the model's closed forms at a given quad,
// with the model's detector efficiency applied (joints scale by eta^2,
// singles by eta).
double ch_from_model(const ModelSpec& model, const SettingsQuad& quad);

// Correlation-form statistic from the model's ideal correlations.
double chsh_from_model(const ModelSpec& model, const SettingsQuad& quad);

// Propagated estimate of the counting-form statistic from per-field
// estimates (independent-field Gaussian propagation).
EstimateWithError ch_estimate(const JointProbabilityEstimates& estimates);

// Analytic sweep over the grid.
std::vector<SweepRow> sweep_ch(const ModelSpec& model, const Arrangement& arrangement,
                               std::span<const double> grid);

// Analytic sweep with a Monte Carlo estimate attached per row. proto
// supplies everything but the quad; each row's sub-run seed is derived
// from (proto.seed, row index).
std::vector<SweepRow> sweep_ch_mc(const ExperimentConfig& proto, const Arrangement& arrangement,
                                  std::span<const double> grid);

struct MaxViolation {
    double theta_max = 0.0;
    double ch_max = 0.0;
};

// Maximizer of the analytic statistic over [0, pi/4] by golden-section
// refinement to 1e-9.
MaxViolation max_violation(const ModelSpec& model, const Arrangement& arrangement);

// Upper boundary of the violation interval: the root of ch(theta) - 1 on
// [theta_max, pi/4], located by bisection to 1e-6 after a grid pre-scan
// confirms a single sign change. Throws NoViolationError when the model
// never violates.
double find_violation_boundary(const ModelSpec& model, const Arrangement& arrangement);

struct CriterionRegion {
    std::vector<bool> criterion; // per grid point
    std::vector<bool> violation; // per grid point
    bool containment = false;    // every violating point satisfies the criterion
};

CriterionRegion criterion_region(const ModelSpec& model, std::span<const double> grid,
                                 const Arrangement& arrangement = Arrangement::standard());

// Smallest symmetric per-channel efficiency at which the model still
// violates (max-over-theta analytic statistic > 1), by scan plus bisection
// to 1e-4. Empty when the model never violates even at unit efficiency.
std::optional<double> efficiency_threshold(const ModelSpec& model, const Arrangement& arrangement);

} // namespace bellsim
