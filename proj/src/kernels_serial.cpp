#include "catbox/kernels.hpp"

namespace catbox::kernels {

OutcomeCounts sample_outcomes_serial(const DensityMatrix& state, const Observable& obs,
                                     std::uint64_t n, RngStream rng) {
    OutcomeCounts out;
    for (std::uint64_t i = 0; i < n; ++i) {
        auto [record, next] = measure(state, obs, rng);
        ++out.counts[record.outcome_index];
        rng = next;
    }
    out.rng = rng;
    return out;
}

std::size_t pick_joint(const std::array<double, 4>& probs, double u) noexcept {
    double cumulative = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        cumulative += probs[k];
        if (u < cumulative) return k;
    }
    return probs.size() - 1;
}

JointCounts sample_joint_serial(const std::array<double, 4>& probs, std::uint64_t n,
                                RngStream rng) {
    JointCounts out;
    for (std::uint64_t i = 0; i < n; ++i) {
        const auto draw = rng_next(rng);
        ++out.counts[pick_joint(probs, draw.u)];
        rng = draw.next;
    }
    out.rng = rng;
    return out;
}

}  // namespace catbox::kernels
