#include "bellsim/models.hpp"

#include <cmath>

namespace bellsim {

namespace {

constexpr double kPiHalf = kPi / 2.0;
constexpr double kPiQuarter = kPi / 4.0;

void check_relative_angle(double theta) {
    if (!(theta >= 0.0 && theta <= kPiHalf)) {
        throw DomainError("relative angle must lie in [0, pi/2]");
    }
}

} // namespace

void ModelSpec::validate() const {
    if (!(detector_efficiency >= 0.0 && detector_efficiency <= 1.0)) {
        throw DomainError("ModelSpec: detector efficiency outside [0, 1]");
    }
    if (!(timing_jitter_sigma >= 0.0) || !std::isfinite(timing_jitter_sigma)) {
        throw DomainError("ModelSpec: timing jitter must be >= 0");
    }
    if (!std::isfinite(pair_delay)) {
        throw DomainError("ModelSpec: pair delay must be finite");
    }
}

double quantum_joint(double theta) {
    check_relative_angle(theta);
    // cos^2(theta)/2 in half-angle form; shares its rounding with the
    // outcome-set entries so the two routes agree bit for bit.
    return 0.25 + std::cos(2.0 * theta) / 4.0;
}

double quantum_singles() { return 0.5; }

OutcomeJointSet quantum_outcome_joints(double theta) {
    check_relative_angle(theta);
    const double q = std::cos(2.0 * theta) / 4.0;
    return OutcomeJointSet{0.25 + q, 0.25 - q, 0.25 - q, 0.25 + q};
}

double lhv_sharp_joint(double theta) {
    check_relative_angle(theta);
    return 0.5 - theta / kPi;
}

double lhv_malus_joint(double theta) {
    check_relative_angle(theta);
    return 0.25 + std::cos(2.0 * theta) / 8.0;
}

double model_joint(ModelKind kind, double theta) {
    switch (kind) {
    case ModelKind::Quantum: return quantum_joint(theta);
    case ModelKind::LhvSharp: return lhv_sharp_joint(theta);
    case ModelKind::LhvMalus: return lhv_malus_joint(theta);
    }
    throw DomainError("model_joint: unknown model kind");
}

OutcomeJointSet model_outcome_joints(ModelKind kind, double theta) {
    check_relative_angle(theta);
    switch (kind) {
    case ModelKind::Quantum: return quantum_outcome_joints(theta);
    case ModelKind::LhvSharp: {
        const double u = theta / kPi;
        return OutcomeJointSet{0.5 - u, u, u, 0.5 - u};
    }
    case ModelKind::LhvMalus: {
        const double q = std::cos(2.0 * theta) / 8.0;
        return OutcomeJointSet{0.25 + q, 0.25 - q, 0.25 - q, 0.25 + q};
    }
    }
    throw DomainError("model_outcome_joints: unknown model kind");
}

double model_correlation(const ModelSpec& model, double theta) {
    check_relative_angle(theta);
    switch (model.kind) {
    case ModelKind::Quantum: return std::cos(2.0 * theta);
    case ModelKind::LhvSharp: return 1.0 - 4.0 * (theta / kPi);
    case ModelKind::LhvMalus: return std::cos(2.0 * theta) / 2.0;
    }
    throw DomainError("model_correlation: unknown model kind");
}

TrialRecord sample_trial(const ModelSpec& model, Angle side1, Angle side2, TrialRng& rng,
                         double emission_time) {
    model.validate();

    TrialRecord tr;
    tr.side1_angle = side1;
    tr.side2_angle = side2;

    bool pass1 = false;
    bool pass2 = false;
    switch (model.kind) {
    case ModelKind::Quantum: {
        const OutcomeJointSet o = quantum_outcome_joints(relative_angle(side1, side2));
        const double u = rng.uniform();
        if (u < o.pp) {
            pass1 = pass2 = true;
        } else if (u < o.pp + o.pm) {
            pass1 = true;
        } else if (u < o.pp + o.pm + o.mp) {
            pass2 = true;
        }
        break;
    }
    case ModelKind::LhvSharp: {
        const double lambda = rng.uniform() * kPi;
        tr.lambda = lambda;
        const Angle axis = Angle::from_radians(lambda);
        pass1 = relative_angle(axis, side1) < kPiQuarter;
        pass2 = relative_angle(axis, side2) < kPiQuarter;
        break;
    }
    case ModelKind::LhvMalus: {
        const double lambda = rng.uniform() * kPi;
        tr.lambda = lambda;
        const double c1 = std::cos(lambda - side1.radians());
        const double c2 = std::cos(lambda - side2.radians());
        pass1 = rng.uniform() < c1 * c1;
        pass2 = rng.uniform() < c2 * c2;
        break;
    }
    }

    tr.outcome1 = pass1 ? Outcome::Pass : Outcome::Absorb;
    tr.outcome2 = pass2 ? Outcome::Pass : Outcome::Absorb;
    tr.detected1 = pass1 && rng.uniform() < model.detector_efficiency;
    tr.detected2 = pass2 && rng.uniform() < model.detector_efficiency;

    double jitter1 = 0.0;
    double jitter2 = 0.0;
    if (model.timing_jitter_sigma > 0.0) {
        jitter1 = model.timing_jitter_sigma * rng.normal();
        jitter2 = model.timing_jitter_sigma * rng.normal();
    }
    tr.t1 = emission_time + jitter1;
    tr.t2 = emission_time + model.pair_delay + jitter2;
    return tr;
}

} // namespace bellsim
