#include "bellsim/angle.hpp"

#include <algorithm>
#include <cmath>

namespace bellsim {

Angle Angle::from_radians(double radians) {
    if (!std::isfinite(radians)) {
        throw DomainError("Angle: value must be finite");
    }
    double v = std::fmod(radians, kPi);
    if (v < 0.0) v += kPi;
    if (v >= kPi) v = 0.0; // rounding of v + pi can land exactly on pi
    return Angle(v);
}

Angle Angle::from_degrees(double degrees) {
    return from_radians(degrees * kPi / 180.0);
}

double relative_angle(Angle x, Angle y) {
    const double d = std::abs(x.radians() - y.radians()); // in [0, pi)
    return std::min(d, kPi - d);
}

} // namespace bellsim
