#pragma once

// Trial-sampling kernels.
//
// Trial i of a run always consumes draw i of the SplitMix64 stream, so the
// OpenMP kernels compute each trial's draw by jump-ahead and reproduce the
// serial reference bit for bit at any thread count.

#include <array>
#include <cstdint>

#include "catbox/quantum.hpp"

namespace catbox::kernels {

enum class Backend { Serial, Parallel };

struct OutcomeCounts {
    std::array<std::uint64_t, 2> counts{};
    RngStream rng;  // stream after the last trial
};

struct JointCounts {
    std::array<std::uint64_t, 4> counts{};
    RngStream rng;
};

// Reference: re-prepares `state` and calls measure() for every trial.
OutcomeCounts sample_outcomes_serial(const DensityMatrix& state, const Observable& obs,
                                     std::uint64_t n, RngStream rng);
OutcomeCounts sample_outcomes_parallel(const DensityMatrix& state, const Observable& obs,
                                       std::uint64_t n, RngStream rng);

// Index of the first cumulative bucket exceeding u; the last bucket absorbs
// rounding slack.
std::size_t pick_joint(const std::array<double, 4>& probs, double u) noexcept;

JointCounts sample_joint_serial(const std::array<double, 4>& probs, std::uint64_t n,
                                RngStream rng);
JointCounts sample_joint_parallel(const std::array<double, 4>& probs, std::uint64_t n,
                                  RngStream rng);

inline OutcomeCounts sample_outcomes(Backend b, const DensityMatrix& state, const Observable& obs,
                                     std::uint64_t n, RngStream rng) {
    return b == Backend::Serial ? sample_outcomes_serial(state, obs, n, rng)
                                : sample_outcomes_parallel(state, obs, n, rng);
}

inline JointCounts sample_joint(Backend b, const std::array<double, 4>& probs, std::uint64_t n,
                                RngStream rng) {
    return b == Backend::Serial ? sample_joint_serial(probs, n, rng)
                                : sample_joint_parallel(probs, n, rng);
}

// Threads OpenMP would use; 1 in builds without OpenMP.
int max_threads();

}  // namespace catbox::kernels
