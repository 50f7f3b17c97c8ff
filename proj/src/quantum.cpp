#include "catbox/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace catbox {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

Complex inner(const PureState& a, const PureState& b) {
    return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
}

}  // namespace

PureState pure_state(Complex amp_dead, Complex amp_alive) {
    if (!finite(amp_dead) || !finite(amp_alive)) {
        throw DomainError("pure_state: non-finite amplitude");
    }
    const double norm_sq = std::norm(amp_dead) + std::norm(amp_alive);
    if (norm_sq <= kAlgebraTol) {
        throw ZeroVector("pure_state: amplitudes have (near) zero norm");
    }
    const double norm = std::sqrt(norm_sq);
    return PureState(amp_dead / norm, amp_alive / norm);
}

PureState unit_state_unchecked(Complex amp_dead, Complex amp_alive) {
    return PureState(amp_dead, amp_alive);
}

PureState dead_state() { return unit_state_unchecked({1.0, 0.0}, {0.0, 0.0}); }
PureState alive_state() { return unit_state_unchecked({0.0, 0.0}, {1.0, 0.0}); }

PureState prepare_cat(double phase) {
    if (!std::isfinite(phase)) {
        throw DomainError("prepare_cat: phase must be finite");
    }
    return unit_state_unchecked({kInvSqrt2, 0.0},
                                {kInvSqrt2 * std::cos(phase), kInvSqrt2 * std::sin(phase)});
}

std::array<double, 2> hermitian_eigenvalues(const Matrix2& m) {
    const double a = m[0].real();
    const double d = m[3].real();
    const double mean = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), std::abs(m[1]));
    return {mean - radius, mean + radius};
}

bool is_valid_density(const Matrix2& m, double tol) {
    if (!std::all_of(m.begin(), m.end(), finite)) return false;
    if (std::abs(m[0].imag()) > tol || std::abs(m[3].imag()) > tol) return false;
    if (std::abs(m[1] - std::conj(m[2])) > tol) return false;
    if (std::abs(m[0].real() + m[3].real() - 1.0) > tol) return false;
    return hermitian_eigenvalues(m)[0] >= -tol;
}

DensityMatrix DensityMatrix::from_entries(const Matrix2& entries, double tol) {
    if (!is_valid_density(entries, tol)) {
        throw DomainError("not a density matrix (Hermitian, unit trace, PSD)");
    }
    return DensityMatrix(entries);
}

std::array<double, 2> DensityMatrix::eigenvalues() const { return hermitian_eigenvalues(m_); }

DensityMatrix density_of(const PureState& s) {
    return DensityMatrix(Matrix2{s[0] * std::conj(s[0]), s[0] * std::conj(s[1]),
                                 s[1] * std::conj(s[0]), s[1] * std::conj(s[1])});
}

DensityMatrix mixed_dead_alive() {
    return DensityMatrix(Matrix2{Complex{0.5, 0.0}, Complex{}, Complex{}, Complex{0.5, 0.0}});
}

std::size_t Observable::index_of(std::string_view label) const {
    for (std::size_t k = 0; k < labels.size(); ++k) {
        if (labels[k] == label) return k;
    }
    throw DomainError("observable " + name + " has no outcome '" + std::string(label) + "'");
}

const Observable& observable_H() {
    static const Observable h{"H", {dead_state(), alive_state()}, {"dead", "alive"}};
    return h;
}

const Observable& observable_S() {
    static const Observable s{"S",
                              {unit_state_unchecked({kInvSqrt2, 0.0}, {kInvSqrt2, 0.0}),
                               unit_state_unchecked({kInvSqrt2, 0.0}, {-kInvSqrt2, 0.0})},
                              {"+1", "-1"}};
    return s;
}

Observable observable_rotated(double theta) {
    if (!std::isfinite(theta)) {
        throw DomainError("observable_rotated: angle must be finite");
    }
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    char name[40];
    std::snprintf(name, sizeof name, "R(%.9g)", theta);
    return Observable{name,
                      {unit_state_unchecked({c, 0.0}, {s, 0.0}),
                       unit_state_unchecked({-s, 0.0}, {c, 0.0})},
                      {"+1", "-1"}};
}

double Distribution::at(std::string_view label) const {
    for (const auto& o : outcomes_) {
        if (o.label == label) return o.probability;
    }
    throw DomainError("distribution has no outcome '" + std::string(label) + "'");
}

double Distribution::total() const {
    double sum = 0.0;
    for (const auto& o : outcomes_) sum += o.probability;
    return sum;
}

double born_probability(const DensityMatrix& rho, const PureState& e) {
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            acc += std::conj(e[i]) * rho(i, j) * e[j];
        }
    }
    return std::clamp(acc.real(), 0.0, 1.0);
}

Distribution born_probabilities(const DensityMatrix& state, const Observable& obs) {
    return Distribution({{obs.labels[0], born_probability(state, obs.eigenstates[0])},
                         {obs.labels[1], born_probability(state, obs.eigenstates[1])}});
}

std::size_t select_outcome(double p_first, double p_second, double u) noexcept {
    if (p_first >= 1.0 - kDecisionTol) return 0;
    if (p_second >= 1.0 - kDecisionTol) return 1;
    return u < p_first ? 0 : 1;
}

MeasurementResult measure(const DensityMatrix& state, const Observable& obs, RngStream rng) {
    const auto draw = rng_next(rng);
    const double p0 = born_probability(state, obs.eigenstates[0]);
    const double p1 = born_probability(state, obs.eigenstates[1]);
    const std::size_t k = select_outcome(p0, p1, draw.u);
    return {MeasurementRecord{obs.name, obs.labels[k], k, k == 0 ? p0 : p1, state,
                              density_of(obs.eigenstates[k]), draw.u},
            draw.next};
}

DensityMatrix dephase(const DensityMatrix& state, double strength) {
    if (!(strength >= 0.0 && strength <= 1.0)) {
        throw DomainError("dephase: strength must lie in [0, 1]");
    }
    const double keep = 1.0 - strength;
    Matrix2 m = state.entries();
    m[1] *= keep;
    m[2] *= keep;
    return DensityMatrix(m);
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    Matrix2 diff;
    for (std::size_t i = 0; i < 4; ++i) diff[i] = a.entries()[i] - b.entries()[i];
    const auto ev = hermitian_eigenvalues(diff);
    return 0.5 * (std::abs(ev[0]) + std::abs(ev[1]));
}

std::array<std::array<double, 2>, 2> overlap_probabilities(const Observable& a, const Observable& b) {
    std::array<std::array<double, 2>, 2> out{};
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            out[i][j] = std::norm(inner(a.eigenstates[i], b.eigenstates[j]));
        }
    }
    return out;
}

bool mutually_unbiased(const Observable& a, const Observable& b, double tol) {
    for (const auto& row : overlap_probabilities(a, b)) {
        for (double p : row) {
            if (std::abs(p - 0.5) > tol) return false;
        }
    }
    return true;
}

std::optional<std::size_t> eigenstate_index(const DensityMatrix& state, const Observable& obs) {
    for (std::size_t k = 0; k < 2; ++k) {
        if (born_probability(state, obs.eigenstates[k]) >= 1.0 - kDecisionTol) return k;
    }
    return std::nullopt;
}

}  // namespace catbox
