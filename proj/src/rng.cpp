#include "bellsim/rng.hpp"

#include <cmath>

#include "bellsim/angle.hpp"

namespace bellsim {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kStreamMul = 0xd1342543de82ef95ULL;

} // namespace

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t stream)
    : state_(mix64(mix64(seed + kGamma) ^ (stream * kStreamMul + 0x2545f4914f6cdd1dULL))) {}

std::uint64_t TrialRng::next_u64() {
    state_ += kGamma;
    return mix64(state_);
}

double TrialRng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double TrialRng::normal() {
    if (has_spare_normal_) {
        has_spare_normal_ = false;
        return spare_normal_;
    }
    const double u1 = 1.0 - uniform(); // (0, 1], keeps the log finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * kPi * u2;
    spare_normal_ = r * std::sin(phi);
    has_spare_normal_ = true;
    return r * std::cos(phi);
}

} // namespace bellsim
