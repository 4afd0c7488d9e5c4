#include "bellsim/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace bellsim {

namespace {

constexpr double kPiQuarter = kPi / 4.0;
constexpr double kGoldenRatio = 0.6180339887498949; // (sqrt(5) - 1) / 2

double thinned_singles(const ModelSpec& model) {
    return model.detector_efficiency * 0.5;
}

JointProbabilitySet thinned_joint_set(const ModelSpec& model,
                                      const std::array<double, 4>& pair_angles) {
    const double eta2 = model.detector_efficiency * model.detector_efficiency;
    const double singles = thinned_singles(model);
    return JointProbabilitySet{eta2 * model_joint(model.kind, pair_angles[0]),
                               eta2 * model_joint(model.kind, pair_angles[1]),
                               eta2 * model_joint(model.kind, pair_angles[2]),
                               eta2 * model_joint(model.kind, pair_angles[3]),
                               singles, singles};
}

std::array<double, 4> quad_pair_angles(const SettingsQuad& quad) {
    return {relative_angle(quad.a, quad.b), relative_angle(quad.a, quad.b_prime),
            relative_angle(quad.a_prime, quad.b), relative_angle(quad.a_prime, quad.b_prime)};
}

// Golden-section maximum of f on [lo, hi], refined to the given interval
// tolerance. Assumes f is unimodal there.
double golden_section_max(double lo, double hi, double tol,
                          const std::function<double(double)>& f) {
    double a = lo, b = hi;
    double x1 = b - kGoldenRatio * (b - a);
    double x2 = a + kGoldenRatio * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGoldenRatio * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGoldenRatio * (b - a);
            f1 = f(x1);
        }
    }
    return (a + b) / 2.0;
}

} // namespace

std::array<double, 4> Arrangement::pair_angles(double theta) const {
    return quad_pair_angles(quad_of(theta));
}

Arrangement Arrangement::standard() {
    Arrangement arrangement;
    arrangement.name = "standard";
    arrangement.quad_of = [](double theta) {
        return SettingsQuad{Angle::from_radians(0.0), Angle::from_radians(2.0 * theta),
                            Angle::from_radians(theta), Angle::from_radians(3.0 * theta)};
    };
    return arrangement;
}

std::vector<double> theta_grid(double lo, double hi, int steps) {
    if (steps < 1) {
        throw DomainError("theta_grid: steps must be >= 1");
    }
    if (!(hi >= lo)) {
        throw DomainError("theta_grid: hi must be >= lo");
    }
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(steps));
    if (steps == 1) {
        grid.push_back(lo);
        return grid;
    }
    for (int i = 0; i < steps; ++i) {
        grid.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1));
    }
    return grid;
}

double ch_from_model(const ModelSpec& model, const SettingsQuad& quad) {
    model.validate();
    return ch_value(thinned_joint_set(model, quad_pair_angles(quad)));
}

double chsh_from_model(const ModelSpec& model, const SettingsQuad& quad) {
    model.validate();
    const auto angles = quad_pair_angles(quad);
    return chsh_value(model_correlation(model, angles[0]), model_correlation(model, angles[1]),
                      model_correlation(model, angles[2]), model_correlation(model, angles[3]));
}

EstimateWithError ch_estimate(const JointProbabilityEstimates& estimates) {
    const double num = estimates.p_ab.value - estimates.p_ab_prime.value +
                       estimates.p_aprime_b.value + estimates.p_aprime_bprime.value;
    const double den = estimates.p1_at_aprime.value + estimates.p2_at_b.value;
    if (den <= 0.0) {
        throw DomainError("ch_estimate: singles estimates sum to zero");
    }
    auto sq = [](double x) { return x * x; };
    const double var_num = sq(estimates.p_ab.std_error) + sq(estimates.p_ab_prime.std_error) +
                           sq(estimates.p_aprime_b.std_error) +
                           sq(estimates.p_aprime_bprime.std_error);
    const double var_den = sq(estimates.p1_at_aprime.std_error) + sq(estimates.p2_at_b.std_error);
    const double value = num / den;
    const double std_error = std::sqrt(var_num / sq(den) + sq(num) * var_den / sq(sq(den)));
    return EstimateWithError{value, std_error, ErrorMethod::Binomial};
}

namespace {

// Local models can sit exactly on the bound over whole intervals; the
// slack absorbs closed-form rounding there without admitting any real
// violation.
constexpr double kViolationTol = 1e-12;

SweepRow analytic_row(const ModelSpec& model, const Arrangement& arrangement, double theta) {
    SweepRow row;
    row.theta = theta;
    const auto angles = arrangement.pair_angles(theta);
    row.ch_analytic = ch_value(thinned_joint_set(model, angles));
    // Thinning scales the conditional and the singles by the same factor,
    // so both sides are built as eta times the ideal quantity.
    const double eta = model.detector_efficiency;
    row.p_cond = eta * conditional_probability(model_joint(model.kind, angles[0]), 0.5);
    row.criterion = criterion_exceeds_singles(row.p_cond, thinned_singles(model));
    row.violation = row.ch_analytic > 1.0 + kViolationTol;
    return row;
}

} // namespace

std::vector<SweepRow> sweep_ch(const ModelSpec& model, const Arrangement& arrangement,
                               std::span<const double> grid) {
    model.validate();
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (const double theta : grid) {
        rows.push_back(analytic_row(model, arrangement, theta));
    }
    return rows;
}

std::vector<SweepRow> sweep_ch_mc(const ExperimentConfig& proto, const Arrangement& arrangement,
                                  std::span<const double> grid) {
    proto.validate();
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        SweepRow row = analytic_row(proto.model, arrangement, grid[i]);
        ExperimentConfig config = proto;
        config.quad = arrangement.quad(grid[i]);
        config.seed = mix64(proto.seed ^ (0x5357454550ULL + i)); // per-row sub-seed
        row.ch_mc = ch_estimate(estimate_probabilities(run_experiment(config)));
        rows.push_back(row);
    }
    return rows;
}

MaxViolation max_violation(const ModelSpec& model, const Arrangement& arrangement) {
    model.validate();
    auto ch_at = [&](double theta) { return ch_from_model(model, arrangement.quad(theta)); };
    const double theta_max = golden_section_max(0.0, kPiQuarter, 1e-9, ch_at);
    return MaxViolation{theta_max, ch_at(theta_max)};
}

double find_violation_boundary(const ModelSpec& model, const Arrangement& arrangement) {
    const MaxViolation peak = max_violation(model, arrangement);
    if (peak.ch_max <= 1.0) {
        throw NoViolationError("find_violation_boundary: statistic never exceeds 1");
    }
    auto excess = [&](double theta) {
        return ch_from_model(model, arrangement.quad(theta)) - 1.0;
    };

    // Pre-scan from the maximizer outward; the curve must cross 1 exactly
    // once on [theta_max, pi/4] for the bisection bracket to be meaningful.
    constexpr int kScanPoints = 2048;
    double lo = peak.theta_max;
    double hi = kPiQuarter;
    double bracket_lo = lo;
    double bracket_hi = hi;
    int sign_changes = 0;
    double prev_theta = lo;
    double prev_value = excess(lo);
    for (int i = 1; i <= kScanPoints; ++i) {
        const double theta = lo + (hi - lo) * static_cast<double>(i) / kScanPoints;
        const double value = excess(theta);
        if ((prev_value > 0.0) != (value > 0.0)) {
            ++sign_changes;
            bracket_lo = prev_theta;
            bracket_hi = theta;
        }
        prev_theta = theta;
        prev_value = value;
    }
    if (sign_changes != 1) {
        throw DomainError("find_violation_boundary: statistic is not unimodal on the interval");
    }

    while (bracket_hi - bracket_lo > 1e-6) {
        const double mid = (bracket_lo + bracket_hi) / 2.0;
        if (excess(mid) > 0.0) {
            bracket_lo = mid;
        } else {
            bracket_hi = mid;
        }
    }
    return (bracket_lo + bracket_hi) / 2.0;
}

CriterionRegion criterion_region(const ModelSpec& model, std::span<const double> grid,
                                 const Arrangement& arrangement) {
    CriterionRegion region;
    region.criterion.reserve(grid.size());
    region.violation.reserve(grid.size());
    region.containment = true;
    for (const SweepRow& row : sweep_ch(model, arrangement, grid)) {
        region.criterion.push_back(row.criterion);
        region.violation.push_back(row.violation);
        if (row.violation && !row.criterion) region.containment = false;
    }
    return region;
}

std::optional<double> efficiency_threshold(const ModelSpec& model,
                                           const Arrangement& arrangement) {
    auto ch_max_at = [&](double eta) {
        ModelSpec thinned = model;
        thinned.detector_efficiency = eta;
        return max_violation(thinned, arrangement).ch_max;
    };
    if (ch_max_at(1.0) <= 1.0) {
        return std::nullopt;
    }

    // The statistic scales linearly in the symmetric efficiency, so a
    // coarse scan brackets the single crossing and bisection refines it.
    double lo = 0.01;
    double hi = 1.0;
    constexpr int kScanSteps = 40;
    for (int i = 1; i <= kScanSteps; ++i) {
        const double eta = 0.01 + (1.0 - 0.01) * static_cast<double>(i) / kScanSteps;
        if (ch_max_at(eta) > 1.0) {
            hi = eta;
            lo = 0.01 + (1.0 - 0.01) * static_cast<double>(i - 1) / kScanSteps;
            break;
        }
    }
    while (hi - lo > 1e-4) {
        const double mid = (lo + hi) / 2.0;
        if (ch_max_at(mid) > 1.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return (lo + hi) / 2.0;
}

} // namespace bellsim
