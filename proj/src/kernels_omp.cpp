#include "catbox/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace catbox::kernels {

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

OutcomeCounts sample_outcomes_parallel(const DensityMatrix& state, const Observable& obs,
                                       std::uint64_t n, RngStream rng) {
    const double p0 = born_probability(state, obs.eigenstates[0]);
    const double p1 = born_probability(state, obs.eigenstates[1]);
    const auto trials = static_cast<std::int64_t>(n);
    std::uint64_t first = 0;

#ifdef _OPENMP
#pragma omp parallel for reduction(+ : first) schedule(static)
#endif
    for (std::int64_t i = 0; i < trials; ++i) {
        const double u = rng_next(rng_advance(rng, static_cast<std::uint64_t>(i))).u;
        first += select_outcome(p0, p1, u) == 0 ? 1 : 0;
    }

    return {{first, n - first}, rng_advance(rng, n)};
}

JointCounts sample_joint_parallel(const std::array<double, 4>& probs, std::uint64_t n,
                                  RngStream rng) {
    const auto trials = static_cast<std::int64_t>(n);
    std::uint64_t c0 = 0, c1 = 0, c2 = 0, c3 = 0;

#ifdef _OPENMP
#pragma omp parallel for reduction(+ : c0, c1, c2, c3) schedule(static)
#endif
    for (std::int64_t i = 0; i < trials; ++i) {
        const double u = rng_next(rng_advance(rng, static_cast<std::uint64_t>(i))).u;
        switch (pick_joint(probs, u)) {
            case 0: ++c0; break;
            case 1: ++c1; break;
            case 2: ++c2; break;
            default: ++c3; break;
        }
    }

    return {{c0, c1, c2, c3}, rng_advance(rng, n)};
}

}  // namespace catbox::kernels
