#pragma once

// Seeded statistical experiments: trial ensembles, the pure-vs-mixed
// distinguisher, and the sampled CHSH harness.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "catbox/kernels.hpp"
#include "catbox/quantum.hpp"
#include "catbox/two_qubit.hpp"

namespace catbox {

using kernels::Backend;

struct PurePrep {
    double phase = 0.0;
};
struct MixedPrep {};
struct DephasedPrep {
    double strength = 0.0;
};

// How each trial prepares the cat. Text form: "pure", "pure:<phase>",
// "mixed", "dephased:<strength>".
using StateSpec = std::variant<PurePrep, MixedPrep, DephasedPrep>;

struct ObsH {};
struct ObsS {};
struct ObsRotated {
    double theta = 0.0;
};

// Text form: "h", "s", "rotated:<theta>".
using ObservableSpec = std::variant<ObsH, ObsS, ObsRotated>;

// Throw DomainError on malformed text.
StateSpec parse_state_spec(std::string_view text);
ObservableSpec parse_observable_spec(std::string_view text);
std::string to_string(const StateSpec& spec);
std::string to_string(const ObservableSpec& spec);

// Throw DomainError on out-of-range parameters.
DensityMatrix prepare(const StateSpec& spec);
Observable make_observable(const ObservableSpec& spec);

struct FrequencyTable {
    std::string observable_name;
    std::array<std::string, 2> labels;
    std::array<std::uint64_t, 2> counts{};
    std::uint64_t total = 0;

    double frequency(std::size_t k) const {
        return total == 0 ? 0.0 : static_cast<double>(counts[k]) / static_cast<double>(total);
    }
};

// n re-preparations of `prep`, each measured once with `obs`; trial i uses
// draw i of the stream seeded by `seed`. Throws DomainError when n < 1.
FrequencyTable run_trials(const StateSpec& prep, const ObservableSpec& obs, std::uint64_t n,
                          std::uint64_t seed, Backend backend = Backend::Parallel);

enum class Decision { Pure, Mixed };

struct Verdict {
    Decision decision = Decision::Pure;
    std::uint64_t trials = 0;
    std::uint64_t minus_count = 0;
    // Probability that the mixture produces only "+1" in `trials` runs.
    double error_bound = 1.0;
};

// Only pure(0) and mixed are accepted as the hidden preparation; anything
// else throws DomainError. Decision is Pure iff no "-1" was seen under S.
Verdict distinguish(const StateSpec& hidden, std::uint64_t n, std::uint64_t seed,
                    Backend backend = Backend::Parallel);

struct ChshSample {
    double estimate = 0.0;
    double std_error = 0.0;
    // Setting pairs (a,b), (a,b'), (a',b), (a',b'); joint outcomes in
    // canonical order (+,+), (+,-), (-,+), (-,-).
    std::array<std::array<std::uint64_t, 4>, 4> counts{};
    std::array<double, 4> correlations{};
    std::uint64_t n_per_setting = 0;
};

// Samples fresh singlets, one draw per trial against the cumulative joint
// Born distribution; the four setting pairs consume consecutive blocks of n
// draws. Throws DomainError when n_per_setting < 1 or an angle is not finite.
ChshSample chsh_sampled(const ChshSettings& settings, std::uint64_t n_per_setting,
                        std::uint64_t seed, Backend backend = Backend::Parallel);

struct ChshReport {
    ChshSettings settings;
    double analytic = 0.0;
    double lhv_bound = 0.0;
    double tsirelson_bound = 0.0;
    std::optional<ChshSample> sampled;
};

ChshReport bell_report(const ChshSettings& settings, std::optional<std::uint64_t> n,
                       std::uint64_t seed, Backend backend = Backend::Parallel);

}  // namespace catbox
