#include "catbox/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <gtest/gtest.h>

#include "catbox/two_qubit.hpp"
#include "test_support.hpp"

using namespace catbox;
using namespace catbox::kernels;
using namespace catbox::testing;

TEST(kernels, outcome_counts_parallel_matches_serial) {
    std::mt19937_64 gen(31);
    for (int trial = 0; trial < 200; ++trial) {
        const auto rho = random_density(gen);
        const auto obs = random_observable(gen);
        const std::uint64_t n = 1 + gen() % 3000;
        const RngStream rng{gen()};
        const auto serial = sample_outcomes_serial(rho, obs, n, rng);
        const auto parallel = sample_outcomes_parallel(rho, obs, n, rng);
        ASSERT_EQ(serial.counts, parallel.counts);
        ASSERT_EQ(serial.rng, parallel.rng);
        ASSERT_EQ(serial.counts[0] + serial.counts[1], n);
    }
}

TEST(kernels, joint_counts_parallel_matches_serial) {
    std::mt19937_64 gen(32);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    const auto pair = singlet();
    for (int trial = 0; trial < 100; ++trial) {
        const auto probs = joint_probabilities(pair, observable_rotated(angle(gen)),
                                               observable_rotated(angle(gen)));
        const std::uint64_t n = 1 + gen() % 5000;
        const RngStream rng{gen()};
        const auto serial = sample_joint_serial(probs, n, rng);
        const auto parallel = sample_joint_parallel(probs, n, rng);
        ASSERT_EQ(serial.counts, parallel.counts);
        ASSERT_EQ(serial.rng, parallel.rng);
    }
}

TEST(kernels, pick_joint_cumulative_order) {
    const std::array<double, 4> p{0.1, 0.2, 0.3, 0.4};
    EXPECT_EQ(pick_joint(p, 0.0), 0u);
    EXPECT_EQ(pick_joint(p, 0.0999), 0u);
    EXPECT_EQ(pick_joint(p, 0.1), 1u);
    EXPECT_EQ(pick_joint(p, 0.35), 2u);
    EXPECT_EQ(pick_joint(p, 0.61), 3u);
    // Rounding slack falls into the last bucket.
    EXPECT_EQ(pick_joint({0.25, 0.25, 0.25, 0.2499999}, 0.99999999), 3u);
}

TEST(kernels, thread_count_does_not_change_result) {
#ifdef _OPENMP
    const auto rho = density_of(prepare_cat(0.3));
    const auto obs = observable_rotated(0.9);
    const auto reference = sample_outcomes_serial(rho, obs, 20000, RngStream{5});
    const int original = omp_get_max_threads();
    for (int threads : {1, 2, 3, 8}) {
        omp_set_num_threads(threads);
        EXPECT_EQ(sample_outcomes_parallel(rho, obs, 20000, RngStream{5}).counts, reference.counts);
    }
    omp_set_num_threads(original);
#else
    GTEST_SKIP() << "built without OpenMP";
#endif
}
