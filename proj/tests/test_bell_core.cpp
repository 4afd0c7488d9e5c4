// Unit tests for the angle algebra and the inequality functionals.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "bellsim/bell_core.hpp"

using namespace bellsim;

namespace {

constexpr double kPiHalf = kPi / 2.0;
constexpr double kPiQuarter = kPi / 4.0;
constexpr double kPiEighth = kPi / 8.0;
constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kChMaxQuantum = (1.0 + kSqrt2) / 2.0; // 1.2071067811865476

// Independent oracle: the acute axis separation is the minimum of
// |x - y + k*pi| over integer shifts.
double brute_force_axis_separation(double x, double y) {
    double best = std::numeric_limits<double>::infinity();
    for (int k = -8; k <= 8; ++k) {
        best = std::min(best, std::abs(x - y + k * kPi));
    }
    return best;
}

JointProbabilitySet quantum_joint_set_at(double theta) {
    // Closed forms evaluated inline, independent of the models module:
    // joints cos^2(rel)/2 on the (t, 3t, t, t) pattern, singles 1/2.
    auto j = [](double rel) { return 0.5 * std::cos(rel) * std::cos(rel); };
    return JointProbabilitySet{j(theta), j(3.0 * theta), j(theta), j(theta), 0.5, 0.5};
}

OutcomeJointSet symmetric_outcomes(double pp) {
    return OutcomeJointSet{pp, 0.5 - pp, 0.5 - pp, pp};
}

} // namespace

TEST_CASE("relative_angle spec points") {
    CHECK(relative_angle(Angle::from_radians(0.0), Angle::from_radians(0.0)) == 0.0);
    CHECK(relative_angle(Angle::from_radians(0.0), Angle::from_radians(kPiEighth)) ==
          doctest::Approx(kPiEighth).epsilon(1e-15));
    // Folding across pi: |0.1 - 3.0| exceeds pi/2, so the supplement wins.
    const double expected = kPi - 2.9; // 0.2415926535897931
    CHECK(relative_angle(Angle::from_radians(0.1), Angle::from_radians(3.0)) ==
          doctest::Approx(expected).epsilon(1e-14));
    CHECK(relative_angle(Angle::from_radians(0.1), Angle::from_radians(3.0)) ==
          doctest::Approx(brute_force_axis_separation(0.1, 3.0)).epsilon(1e-14));
}

TEST_CASE("relative_angle properties against brute force") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> any(-10.0, 10.0);
    for (int i = 0; i < 100000; ++i) {
        const double x = any(rng);
        const double y = any(rng);
        const Angle ax = Angle::from_radians(x);
        const Angle ay = Angle::from_radians(y);
        const double d = relative_angle(ax, ay);
        CHECK(d >= 0.0);
        CHECK(d <= kPiHalf);
        CHECK(d == relative_angle(ay, ax));
        CHECK(relative_angle(ax, ax) == 0.0);
        CHECK(d == doctest::Approx(brute_force_axis_separation(x, y)).epsilon(1e-9));
    }
}

TEST_CASE("angle canonicalization") {
    CHECK(Angle::from_radians(kPi).radians() == 0.0);
    CHECK(Angle::from_radians(-0.25).radians() == doctest::Approx(kPi - 0.25));
    CHECK(Angle::from_radians(7.0).radians() == doctest::Approx(7.0 - 2.0 * kPi));
    CHECK(Angle::from_degrees(180.0).radians() == 0.0);
    CHECK(Angle::from_degrees(45.0).radians() == doctest::Approx(kPiQuarter).epsilon(1e-15));
    CHECK_THROWS_AS(Angle::from_radians(std::nan("")), DomainError);
    CHECK_THROWS_AS(Angle::from_radians(std::numeric_limits<double>::infinity()), DomainError);
    for (double v : {-9.9, -3.2, 0.0, 1.5, 3.15, 9.42, 100.0}) {
        const double c = Angle::from_radians(v).radians();
        CHECK(c >= 0.0);
        CHECK(c < kPi);
    }
}

TEST_CASE("ch_value at the quantum optimum equals (1+sqrt2)/2") {
    const double ch = ch_value(quantum_joint_set_at(kPiEighth));
    CHECK(ch == doctest::Approx(kChMaxQuantum).epsilon(1e-12));
}

TEST_CASE("ch_value trivial points") {
    // Independent detectors: all joints 1/4, singles 1/2.
    CHECK(ch_value({0.25, 0.25, 0.25, 0.25, 0.5, 0.5}) == 0.5);
    // Perfectly correlated boundary.
    CHECK(ch_value({0.5, 0.5, 0.5, 0.5, 0.5, 0.5}) == 1.0);
}

TEST_CASE("ch_value errors") {
    CHECK_THROWS_AS(ch_value({0.25, 0.25, 0.25, 0.25, 0.0, 0.0}), DomainError);
    // Joint above a marginal.
    CHECK_THROWS_AS(ch_value({0.25, 0.25, 0.6, 0.25, 0.5, 0.5}), DomainError);
    // Out-of-range probability.
    CHECK_THROWS_AS(ch_value({1.25, 0.25, 0.25, 0.25, 0.5, 0.5}), DomainError);
    CHECK_THROWS_AS(ch_value({-0.1, 0.25, 0.25, 0.25, 0.5, 0.5}), DomainError);
}

TEST_CASE("ch_value is invariant under scaling of all six probabilities") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        JointProbabilitySet j;
        j.p1_at_aprime = 0.05 + 0.95 * unit(rng);
        j.p2_at_b = 0.05 + 0.95 * unit(rng);
        j.p_ab = unit(rng);
        j.p_ab_prime = unit(rng);
        j.p_aprime_b = unit(rng) * std::min(j.p1_at_aprime, j.p2_at_b);
        j.p_aprime_bprime = unit(rng);
        const double k = 0.01 + 0.99 * unit(rng);
        JointProbabilitySet scaled{k * j.p_ab,          k * j.p_ab_prime,
                                   k * j.p_aprime_b,    k * j.p_aprime_bprime,
                                   k * j.p1_at_aprime,  k * j.p2_at_b};
        CHECK(ch_value(scaled) == doctest::Approx(ch_value(j)).epsilon(1e-12));
    }
}

TEST_CASE("chsh_value at the quantum optimum equals 2*sqrt2") {
    const double e1 = std::cos(2.0 * kPiEighth);
    const double e2 = std::cos(2.0 * 3.0 * kPiEighth);
    const double s = chsh_value(e1, e2, e1, e1);
    CHECK(s == doctest::Approx(2.0 * kSqrt2).epsilon(1e-12));
}

TEST_CASE("chsh_value trivial points and domain") {
    CHECK(chsh_value(0.0, 0.0, 0.0, 0.0) == 0.0);
    // Algebraic maximum, unphysical for the models here.
    CHECK(chsh_value(1.0, -1.0, 1.0, 1.0) == 4.0);
    CHECK_THROWS_AS(chsh_value(1.1, 0.0, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(chsh_value(0.0, 0.0, -1.01, 0.0), DomainError);
    CHECK_NOTHROW(chsh_value(1.0 + 1e-13, 0.0, 0.0, 0.0)); // inside tolerance
}

TEST_CASE("correlation_from_joints") {
    CHECK(correlation_from_joints({0.5, 0.0, 0.0, 0.5}) == 1.0);
    CHECK(correlation_from_joints({0.25, 0.25, 0.25, 0.25}) == 0.0);
    const double q = std::cos(2.0 * kPiEighth) / 4.0;
    CHECK(correlation_from_joints({0.25 + q, 0.25 - q, 0.25 - q, 0.25 + q}) ==
          doctest::Approx(std::cos(kPiQuarter)).epsilon(1e-12));
    CHECK_THROWS_AS(correlation_from_joints({0.5, 0.5, 0.5, 0.5}), DomainError); // not normalized
    CHECK_THROWS_AS(correlation_from_joints({1.2, 0.0, 0.0, -0.2}), DomainError);
}

TEST_CASE("correlation_from_joints stays in [-1, 1] on random normalized sets") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 20000; ++i) {
        double w[4] = {unit(rng), unit(rng), unit(rng), unit(rng)};
        const double sum = w[0] + w[1] + w[2] + w[3];
        if (sum == 0.0) continue;
        OutcomeJointSet o{w[0] / sum, w[1] / sum, w[2] / sum, w[3] / sum};
        const double e = correlation_from_joints(o);
        CHECK(e >= -1.0);
        CHECK(e <= 1.0);
    }
}

TEST_CASE("conditional_probability spec points") {
    const double joint = 0.5 * std::cos(kPiEighth) * std::cos(kPiEighth);
    CHECK(conditional_probability(joint, 0.5) ==
          doctest::Approx(std::cos(kPiEighth) * std::cos(kPiEighth)).epsilon(1e-15));
    CHECK(conditional_probability(0.25, 0.5) == 0.5);
    CHECK(conditional_probability(0.0, 0.5) == 0.0);
}

TEST_CASE("conditional_probability errors") {
    CHECK_THROWS_AS(conditional_probability(0.1, 0.0), DomainError);
    CHECK_THROWS_AS(conditional_probability(0.6, 0.5), DomainError);
    CHECK_THROWS_AS(conditional_probability(-0.1, 0.5), DomainError);
    CHECK_THROWS_AS(conditional_probability(0.1, 1.5), DomainError);
}

TEST_CASE("conditional_probability round trip") {
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 20000; ++i) {
        const double p1 = 1e-6 + (1.0 - 1e-6) * unit(rng);
        const double cond = unit(rng);
        CHECK(conditional_probability(p1 * cond, p1) == doctest::Approx(cond).epsilon(1e-15));
    }
}

TEST_CASE("criterion_exceeds_singles is strict") {
    const double cos2_pi8 = std::cos(kPiEighth) * std::cos(kPiEighth);
    CHECK(criterion_exceeds_singles(cos2_pi8, 0.5));
    CHECK_FALSE(criterion_exceeds_singles(0.5, 0.5));
    CHECK_FALSE(criterion_exceeds_singles(0.3, 0.5));
}

TEST_CASE("ch_chsh_consistency at the quantum optimum") {
    auto qset = [](double rel) {
        const double q = std::cos(2.0 * rel) / 4.0;
        return OutcomeJointSet{0.25 + q, 0.25 - q, 0.25 - q, 0.25 + q};
    };
    const auto r = ch_chsh_consistency(
        {qset(kPiEighth), qset(3.0 * kPiEighth), qset(kPiEighth), qset(kPiEighth)});
    CHECK(r.chsh == doctest::Approx(2.0 * kSqrt2).epsilon(1e-9));
    CHECK(r.ch_from_pp == doctest::Approx(kChMaxQuantum).epsilon(1e-9));
    CHECK(r.consistent);
    CHECK(r.chsh > 2.0);       // both forms violated together
    CHECK(r.ch_from_pp > 1.0);
}

TEST_CASE("ch_chsh_consistency trivial points") {
    const OutcomeJointSet indep{0.25, 0.25, 0.25, 0.25};
    auto r = ch_chsh_consistency({indep, indep, indep, indep});
    CHECK(r.chsh == 0.0);
    CHECK(r.ch_from_pp == 0.5);
    CHECK(r.consistent);

    const OutcomeJointSet perfect{0.5, 0.0, 0.0, 0.5};
    r = ch_chsh_consistency({perfect, perfect, perfect, perfect});
    CHECK(r.chsh == 2.0);
    CHECK(r.ch_from_pp == 1.0);
    CHECK(r.consistent); // both exactly on the boundary
}

TEST_CASE("ch_chsh_consistency rejects non-conforming sets") {
    const OutcomeJointSet asym{0.4, 0.1, 0.2, 0.3}; // pp != mm
    const OutcomeJointSet ok{0.3, 0.2, 0.2, 0.3};
    CHECK_THROWS_AS(ch_chsh_consistency({asym, ok, ok, ok}), DomainError);
    const OutcomeJointSet off_marginal{0.4, 0.2, 0.2, 0.4}; // marginals 0.6
    CHECK_THROWS_AS(ch_chsh_consistency({ok, off_marginal, ok, ok}), DomainError);
}

TEST_CASE("ch_chsh identity on random conforming sets") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> half(0.0, 0.5);
    for (int i = 0; i < 20000; ++i) {
        const auto r = ch_chsh_consistency({symmetric_outcomes(half(rng)),
                                            symmetric_outcomes(half(rng)),
                                            symmetric_outcomes(half(rng)),
                                            symmetric_outcomes(half(rng))});
        // chsh = 4 * numerator - 2 under the half-marginal structure, hence
        // the two bounds agree.
        CHECK(r.chsh == doctest::Approx(4.0 * r.ch_from_pp - 2.0).epsilon(1e-9));
        CHECK(r.consistent);
    }
}

TEST_CASE("deterministic local strategies reach at most chsh 2 and ch 1") {
    double max_chsh = -std::numeric_limits<double>::infinity();
    double max_ch = -std::numeric_limits<double>::infinity();
    for (int bits = 0; bits < 16; ++bits) {
        const int a = (bits & 1) ? 1 : -1;
        const int ap = (bits & 2) ? 1 : -1;
        const int b = (bits & 4) ? 1 : -1;
        const int bp = (bits & 8) ? 1 : -1;
        max_chsh = std::max(max_chsh, chsh_value(a * b, a * bp, ap * b, ap * bp));

        // Counting form of the same strategy: detection = outcome +1.
        auto det = [](int v) { return v == 1 ? 1.0 : 0.0; };
        const double denom = det(ap) + det(b);
        if (denom > 0.0) {
            JointProbabilitySet j{det(a) * det(b),  det(a) * det(bp), det(ap) * det(b),
                                  det(ap) * det(bp), det(ap),          det(b)};
            max_ch = std::max(max_ch, ch_value(j));
        }
    }
    CHECK(max_chsh == 2.0);
    CHECK(max_ch == 1.0);
}

TEST_CASE("estimate validation") {
    CHECK_NOTHROW((EstimateWithError{0.5, 0.0, ErrorMethod::Analytic}).validate());
    CHECK_NOTHROW((EstimateWithError{0.5, 0.01, ErrorMethod::Binomial}).validate());
    CHECK_NOTHROW((EstimateWithError{0.0, 0.0, ErrorMethod::Binomial}).validate()); // degenerate
    CHECK_THROWS_AS((EstimateWithError{0.5, 0.01, ErrorMethod::Analytic}).validate(),
                    DomainError);
    CHECK_THROWS_AS((EstimateWithError{0.5, -0.01, ErrorMethod::Binomial}).validate(),
                    DomainError);
}
