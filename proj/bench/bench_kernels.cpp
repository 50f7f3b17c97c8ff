// Serial vs OpenMP sampling kernels. Both produce identical counts.

#include <benchmark/benchmark.h>

#include "catbox/kernels.hpp"
#include "catbox/two_qubit.hpp"

using namespace catbox;
using namespace catbox::kernels;

namespace {

template <Backend B>
void BM_sample_outcomes(benchmark::State& state) {
    const auto rho = density_of(prepare_cat(0.0));
    const auto& obs = observable_H();
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_outcomes(B, rho, obs, n, RngStream{2024}));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Backend B>
void BM_sample_joint(benchmark::State& state) {
    const auto probs = joint_probabilities(singlet(), observable_rotated(0.0), observable_rotated(0.7853981633974483));
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_joint(B, probs, n, RngStream{2024}));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_sample_outcomes<Backend::Serial>)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_sample_outcomes<Backend::Parallel>)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_sample_joint<Backend::Serial>)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_sample_joint<Backend::Parallel>)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);

BENCHMARK_MAIN();
