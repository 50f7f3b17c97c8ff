#include "catbox/experiments.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace catbox {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double parse_number(std::string_view text, std::string_view what) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
        throw DomainError("invalid " + std::string(what) + ": '" + std::string(text) + "'");
    }
    return value;
}

// Splits "name:arg" into its parts; arg is empty when no colon is present.
std::pair<std::string_view, std::string_view> split_spec(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) return {text, {}};
    return {text.substr(0, colon), text.substr(colon + 1)};
}

std::string format_number(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void require_trials(std::uint64_t n) {
    if (n < 1) throw DomainError("at least one trial is required");
}

}  // namespace

StateSpec parse_state_spec(std::string_view text) {
    auto [name, arg] = split_spec(text);
    if (name == "pure") {
        return PurePrep{arg.empty() ? 0.0 : parse_number(arg, "phase")};
    }
    if (name == "mixed" && text.find(':') == std::string_view::npos) return MixedPrep{};
    if (name == "dephased" && !arg.empty()) {
        DephasedPrep spec{parse_number(arg, "dephasing strength")};
        if (!(spec.strength >= 0.0 && spec.strength <= 1.0)) {
            throw DomainError("dephasing strength must lie in [0, 1]");
        }
        return spec;
    }
    throw DomainError("unknown preparation '" + std::string(text) +
                      "' (expected pure[:phase], mixed or dephased:strength)");
}

ObservableSpec parse_observable_spec(std::string_view text) {
    auto [name, arg] = split_spec(text);
    const bool bare = text.find(':') == std::string_view::npos;
    if ((name == "h" || name == "H") && bare) return ObsH{};
    if ((name == "s" || name == "S") && bare) return ObsS{};
    if (name == "rotated" && !arg.empty()) return ObsRotated{parse_number(arg, "angle")};
    throw DomainError("unknown observable '" + std::string(text) +
                      "' (expected h, s or rotated:theta)");
}

std::string to_string(const StateSpec& spec) {
    return std::visit(overloaded{
                          [](const PurePrep& p) { return "pure:" + format_number(p.phase); },
                          [](const MixedPrep&) { return std::string("mixed"); },
                          [](const DephasedPrep& d) {
                              return "dephased:" + format_number(d.strength);
                          },
                      },
                      spec);
}

std::string to_string(const ObservableSpec& spec) {
    return std::visit(overloaded{
                          [](const ObsH&) { return std::string("h"); },
                          [](const ObsS&) { return std::string("s"); },
                          [](const ObsRotated& r) { return "rotated:" + format_number(r.theta); },
                      },
                      spec);
}

DensityMatrix prepare(const StateSpec& spec) {
    return std::visit(overloaded{
                          [](const PurePrep& p) { return density_of(prepare_cat(p.phase)); },
                          [](const MixedPrep&) { return mixed_dead_alive(); },
                          [](const DephasedPrep& d) {
                              return dephase(density_of(prepare_cat(0.0)), d.strength);
                          },
                      },
                      spec);
}

Observable make_observable(const ObservableSpec& spec) {
    return std::visit(overloaded{
                          [](const ObsH&) { return observable_H(); },
                          [](const ObsS&) { return observable_S(); },
                          [](const ObsRotated& r) { return observable_rotated(r.theta); },
                      },
                      spec);
}

FrequencyTable run_trials(const StateSpec& prep, const ObservableSpec& obs_spec, std::uint64_t n,
                          std::uint64_t seed, Backend backend) {
    require_trials(n);
    const DensityMatrix state = prepare(prep);
    const Observable obs = make_observable(obs_spec);
    const auto sampled = kernels::sample_outcomes(backend, state, obs, n, RngStream{seed});
    return FrequencyTable{obs.name, obs.labels, sampled.counts, n};
}

Verdict distinguish(const StateSpec& hidden, std::uint64_t n, std::uint64_t seed,
                    Backend backend) {
    const bool allowed = std::holds_alternative<MixedPrep>(hidden) ||
                         (std::holds_alternative<PurePrep>(hidden) &&
                          std::get<PurePrep>(hidden).phase == 0.0);
    if (!allowed) {
        throw DomainError("distinguish: hidden preparation must be pure:0 or mixed");
    }
    const FrequencyTable table = run_trials(hidden, ObsS{}, n, seed, backend);
    const std::uint64_t minus = table.counts[1];
    return Verdict{minus == 0 ? Decision::Pure : Decision::Mixed, n, minus,
                   std::ldexp(1.0, -static_cast<int>(std::min<std::uint64_t>(n, 2000)))};
}

ChshSample chsh_sampled(const ChshSettings& s, std::uint64_t n, std::uint64_t seed,
                        Backend backend) {
    require_trials(n);
    for (double angle : {s.a, s.a_prime, s.b, s.b_prime}) {
        if (!std::isfinite(angle)) throw DomainError("CHSH angles must be finite");
    }
    const TwoQubitState pair = singlet();
    const std::array<std::pair<double, double>, 4> settings{
        {{s.a, s.b}, {s.a, s.b_prime}, {s.a_prime, s.b}, {s.a_prime, s.b_prime}}};

    ChshSample out;
    out.n_per_setting = n;
    RngStream rng{seed};
    double variance = 0.0;
    for (std::size_t k = 0; k < settings.size(); ++k) {
        const auto probs = joint_probabilities(pair, observable_rotated(settings[k].first),
                                               observable_rotated(settings[k].second));
        const auto sampled = kernels::sample_joint(backend, probs, n, rng);
        rng = sampled.rng;
        out.counts[k] = sampled.counts;
        const auto& c = sampled.counts;
        const double total = static_cast<double>(n);
        const double e = (static_cast<double>(c[0] + c[3]) - static_cast<double>(c[1] + c[2])) / total;
        out.correlations[k] = e;
        // Each trial's product is +-1, so Var(E_hat) = (1 - E^2) / n.
        variance += (1.0 - e * e) / total;
    }
    const auto& e = out.correlations;
    out.estimate = e[0] - e[1] + e[2] + e[3];
    out.std_error = std::sqrt(variance);
    return out;
}

ChshReport bell_report(const ChshSettings& settings, std::optional<std::uint64_t> n,
                       std::uint64_t seed, Backend backend) {
    for (double angle : {settings.a, settings.a_prime, settings.b, settings.b_prime}) {
        if (!std::isfinite(angle)) throw DomainError("CHSH angles must be finite");
    }
    ChshReport report{settings, chsh_value(singlet(), settings), lhv_chsh_max(),
                      2.0 * std::sqrt(2.0), std::nullopt};
    if (n) report.sampled = chsh_sampled(settings, *n, seed, backend);
    return report;
}

}  // namespace catbox
