#pragma once

#include <cstdint>
#include <optional>

#include "bellsim/angle.hpp"
#include "bellsim/bell_core.hpp"
#include "bellsim/rng.hpp"

namespace bellsim {

// Quantum: the entangled parallel-polarization photon pair.
// LhvSharp: deterministic hidden-axis model; a photon passes iff its shared
//           axis lambda lies within pi/4 of the local polarizer axis.
// LhvMalus: stochastic hidden-axis model; each side passes independently
//           with probability cos^2(lambda - setting).
enum class ModelKind { Quantum, LhvSharp, LhvMalus };

struct ModelSpec {
    ModelKind kind = ModelKind::Quantum;
    double detector_efficiency = 1.0; // per-channel Bernoulli thinning
    double timing_jitter_sigma = 0.0; // seconds, Gaussian
    double pair_delay = 0.0;          // seconds, channel 2 relative to channel 1

    void validate() const;
};

enum class Outcome { Pass, Absorb };
enum class Station1Setting { A, APrime };
enum class Station2Setting { B, BPrime };

// One simulated emission of a photon pair.
struct TrialRecord {
    std::int64_t trial_index = 0;
    Station1Setting side1_label = Station1Setting::A;
    Station2Setting side2_label = Station2Setting::B;
    Angle side1_angle;
    Angle side2_angle;
    std::optional<double> lambda; // hidden axis, present iff an LHV model
    Outcome outcome1 = Outcome::Absorb;
    Outcome outcome2 = Outcome::Absorb;
    bool detected1 = false; // implies outcome1 == Pass
    bool detected2 = false;
    double t1 = 0.0; // detector timestamps, seconds
    double t2 = 0.0;
};

// Closed forms. theta is the relative angle between the two analyzer axes,
// in [0, pi/2].

// Coincidence probability of the entangled pair: cos^2(theta) / 2.
double quantum_joint(double theta);

// Either channel's singles probability, independent of both settings.
double quantum_singles();

// The four outcome probabilities of the entangled pair:
// (c2/2, s2/2, s2/2, c2/2) with c2 = cos^2(theta), s2 = sin^2(theta).
OutcomeJointSet quantum_outcome_joints(double theta);

// Arc-overlap joint of the deterministic hidden-axis model: 1/2 - theta/pi.
double lhv_sharp_joint(double theta);

// <cos^2(l - a) cos^2(l - b)> over uniform l: 1/4 + cos(2 theta)/8.
double lhv_malus_joint(double theta);

double model_joint(ModelKind kind, double theta);
OutcomeJointSet model_outcome_joints(ModelKind kind, double theta);

// Ideal correlation function of the model (efficiency plays no role):
// Quantum -> cos(2 theta), LhvSharp -> 1 - 4 theta/pi, LhvMalus -> cos(2 theta)/2.
double model_correlation(const ModelSpec& model, double theta);

// Draws one trial from the model's exact joint outcome distribution,
// thins detections with the per-channel efficiency, and stamps detector
// times relative to emission_time. All randomness comes from the
// caller-supplied stream. Setting labels default to (A, B); callers that
// select settings overwrite them.
TrialRecord sample_trial(const ModelSpec& model, Angle side1, Angle side2, TrialRng& rng,
                         double emission_time = 0.0);

} // namespace bellsim
