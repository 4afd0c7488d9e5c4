#pragma once

#include <cstdint>
#include <limits>

namespace bellsim {

// SplitMix64 step over a state derived from (seed, stream). Every trial of
// a run owns stream = trial index, which is what makes results independent
// of how trials are partitioned across workers.
class TrialRng {
public:
    TrialRng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform();

    // Standard normal via Box-Muller; the second deviate of each pair is
    // cached within this stream.
    double normal();

    // UniformRandomBitGenerator interface.
    using result_type = std::uint64_t;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() { return next_u64(); }

private:
    std::uint64_t state_ = 0;
    double spare_normal_ = 0.0;
    bool has_spare_normal_ = false;
};

// 64-bit avalanche mix (SplitMix64 finalizer), used to derive sub-seeds.
std::uint64_t mix64(std::uint64_t x);

} // namespace bellsim
