#include "bellsim/bell_core.hpp"

#include <algorithm>
#include <cmath>

namespace bellsim {

namespace {

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

} // namespace

void JointProbabilitySet::validate() const {
    for (double p : {p_ab, p_ab_prime, p_aprime_b, p_aprime_bprime, p1_at_aprime, p2_at_b}) {
        if (!is_probability(p)) {
            throw DomainError("JointProbabilitySet: field outside [0, 1]");
        }
    }
    if (p_aprime_b > p1_at_aprime || p_aprime_b > p2_at_b) {
        throw DomainError("JointProbabilitySet: joint exceeds a marginal");
    }
}

void OutcomeJointSet::validate() const {
    for (double p : {pp, pm, mp, mm}) {
        if (!is_probability(p)) {
            throw DomainError("OutcomeJointSet: field outside [0, 1]");
        }
    }
}

bool OutcomeJointSet::is_normalized(double tol) const {
    return std::abs(pp + pm + mp + mm - 1.0) <= tol;
}

void EstimateWithError::validate() const {
    if (!std::isfinite(value) || !std::isfinite(std_error) || std_error < 0.0) {
        throw DomainError("EstimateWithError: bad value or standard error");
    }
    if (method == ErrorMethod::Analytic && std_error != 0.0) {
        throw DomainError("EstimateWithError: analytic estimates carry no error");
    }
}

double ch_value(const JointProbabilitySet& joints) {
    joints.validate();
    const double denom = joints.p1_at_aprime + joints.p2_at_b;
    if (denom <= 0.0) {
        throw DomainError("ch_value: singles probabilities sum to zero");
    }
    const double num =
        joints.p_ab - joints.p_ab_prime + joints.p_aprime_b + joints.p_aprime_bprime;
    return num / denom;
}

double chsh_value(double e_ab, double e_ab_prime, double e_aprime_b, double e_aprime_bprime) {
    constexpr double kSlack = 1.0 + 1e-12;
    for (double e : {e_ab, e_ab_prime, e_aprime_b, e_aprime_bprime}) {
        if (!std::isfinite(e) || std::abs(e) > kSlack) {
            throw DomainError("chsh_value: correlation outside [-1, 1]");
        }
    }
    return e_ab - e_ab_prime + e_aprime_b + e_aprime_bprime;
}

double correlation_from_joints(const OutcomeJointSet& outcomes) {
    outcomes.validate();
    if (!outcomes.is_normalized(1e-6)) {
        throw DomainError("correlation_from_joints: outcome probabilities must sum to 1");
    }
    const double e = outcomes.pp + outcomes.mm - outcomes.pm - outcomes.mp;
    return std::clamp(e, -1.0, 1.0);
}

double conditional_probability(double p12, double p1) {
    if (!is_probability(p12) || !is_probability(p1)) {
        throw DomainError("conditional_probability: inputs outside [0, 1]");
    }
    if (p1 == 0.0) {
        throw DomainError("conditional_probability: undefined, p1 = 0");
    }
    if (p12 > p1) {
        throw DomainError("conditional_probability: joint exceeds marginal");
    }
    return p12 / p1;
}

bool criterion_exceeds_singles(double p_cond, double p_single) {
    return p_cond > p_single;
}

ChChshConsistency ch_chsh_consistency(const std::array<OutcomeJointSet, 4>& sets) {
    constexpr double kTol = 1e-9;
    double worst_deviation = 0.0;
    for (const OutcomeJointSet& s : sets) {
        s.validate();
        const double dev = std::max({std::abs(s.pp - s.mm), std::abs(s.pm - s.mp),
                                     std::abs(s.marginal1() - 0.5),
                                     std::abs(s.marginal2() - 0.5)});
        if (dev > kTol) {
            throw DomainError(
                "ch_chsh_consistency: requires symmetric outcomes with half marginals");
        }
        worst_deviation = std::max(worst_deviation, dev);
    }

    const double chsh = chsh_value(
        correlation_from_joints(sets[0]), correlation_from_joints(sets[1]),
        correlation_from_joints(sets[2]), correlation_from_joints(sets[3]));
    const double ch = ch_value(JointProbabilitySet{sets[0].pp, sets[1].pp, sets[2].pp,
                                                   sets[3].pp, 0.5, 0.5});

    // Identity residual grows linearly with the allowed precondition slack.
    const double identity_tol = kTol + 16.0 * worst_deviation;
    if (std::abs(chsh - (4.0 * ch - 2.0)) > identity_tol) {
        throw DomainError("ch_chsh_consistency: corollary identity violated");
    }
    return ChChshConsistency{chsh, ch, (chsh <= 2.0) == (ch <= 1.0)};
}

} // namespace bellsim
