#pragma once

#include "bellsim/errors.hpp"

namespace bellsim {

inline constexpr double kPi = 3.14159265358979323846;

// Orientation of a polarizer axis. An axis is a line, not a ray, so the
// stored value is canonical in [0, pi).
class Angle {
public:
    Angle() = default;

    // Folds any finite value into [0, pi). Throws DomainError on NaN/inf.
    static Angle from_radians(double radians);
    static Angle from_degrees(double degrees);

    double radians() const { return radians_; }

    friend bool operator==(Angle lhs, Angle rhs) { return lhs.radians_ == rhs.radians_; }
    friend bool operator!=(Angle lhs, Angle rhs) { return !(lhs == rhs); }

private:
    explicit Angle(double canonical) : radians_(canonical) {}

    double radians_ = 0.0;
};

// The four analyzer orientations of a two-station experiment.
struct SettingsQuad {
    Angle a;
    Angle a_prime;
    Angle b;
    Angle b_prime;

    friend bool operator==(const SettingsQuad& lhs, const SettingsQuad& rhs) {
        return lhs.a == rhs.a && lhs.a_prime == rhs.a_prime && lhs.b == rhs.b &&
               lhs.b_prime == rhs.b_prime;
    }
};

// Acute angle between two axes, in [0, pi/2]. Symmetric in its arguments.
double relative_angle(Angle x, Angle y);

} // namespace bellsim
