#pragma once

#include <array>

#include "bellsim/angle.hpp"
#include "bellsim/errors.hpp"

namespace bellsim {

// The six probabilities entering the counting-form (CH) statistic: four
// joint detection probabilities plus the two single-count probabilities
// appearing in the denominator.
struct JointProbabilitySet {
    double p_ab = 0.0;
    double p_ab_prime = 0.0;
    double p_aprime_b = 0.0;
    double p_aprime_bprime = 0.0;
    double p1_at_aprime = 0.0; // channel-1 singles at setting a'
    double p2_at_b = 0.0;      // channel-2 singles at setting b

    // Every field in [0, 1]; a joint never exceeds its marginals.
    void validate() const;
};

// Joint probabilities of the four (+,-) outcome combinations for one
// setting pair.
struct OutcomeJointSet {
    double pp = 0.0; // both instruments record +
    double pm = 0.0; // first +, second -
    double mp = 0.0; // first -, second +
    double mm = 0.0; // both -

    void validate() const;                       // range checks only
    bool is_normalized(double tol = 1e-12) const; // sums to 1 within tol

    double marginal1() const { return pp + pm; } // P(first records +)
    double marginal2() const { return pp + mp; } // P(second records +)
};

enum class ErrorMethod { Analytic, Binomial, Bootstrap };

struct EstimateWithError {
    double value = 0.0;
    double std_error = 0.0;
    ErrorMethod method = ErrorMethod::Analytic;

    // Analytic values carry no statistical error.
    void validate() const;
};

// Counting-form statistic
//   (p_ab - p_ab' + p_a'b + p_a'b') / (p1(a') + p2(b)).
// Local models satisfy ch_value <= 1. Throws DomainError when the singles
// sum to zero.
double ch_value(const JointProbabilitySet& joints);

// Correlation-form statistic E(a,b) - E(a,b') + E(a',b) + E(a',b').
// Local models satisfy chsh_value <= 2. Each correlation must lie in
// [-1, 1] (tolerance 1e-12).
double chsh_value(double e_ab, double e_ab_prime, double e_aprime_b, double e_aprime_bprime);

// E = p++ + p-- - p+- - p-+ for one setting pair. The set must be
// normalized; the result is clamped to [-1, 1].
double correlation_from_joints(const OutcomeJointSet& outcomes);

// p(2|1) = p12 / p1. Throws DomainError when p1 = 0 or p12 > p1.
double conditional_probability(double p12, double p1);

// Strict comparison p(2|1) > p2; the boundary case is excluded.
bool criterion_exceeds_singles(double p_cond, double p_single);

struct ChChshConsistency {
    double chsh = 0.0;       // correlation-form value
    double ch_from_pp = 0.0; // counting-form value built from the p++ entries
    bool consistent = false; // (chsh <= 2) holds iff (ch_from_pp <= 1)
};

// Verifies that the correlation form is a corollary of the counting form
// for outcome sets with the symmetric half-marginal structure
// (p++ = p--, p+- = p-+, both marginals 1/2, tolerance 1e-9). Under that
// structure the identity  chsh = 4 * numerator(ch) - 2  holds, so the two
// bounds are equivalent. The four sets are ordered (a,b), (a,b'), (a',b),
// (a',b').
ChChshConsistency ch_chsh_consistency(const std::array<OutcomeJointSet, 4>& sets);

} // namespace bellsim
