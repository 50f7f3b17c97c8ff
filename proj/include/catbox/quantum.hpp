#pragma once

// Two-level quantum core over the {dead, alive} basis.
//
// Every measurement, channel and distance works on DensityMatrix so that the
// superposed cat and the ignorance mixture go through one code path. PureState
// is a constructor-level convenience converted with density_of().

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "catbox/rng.hpp"

namespace catbox {

using Complex = std::complex<double>;

inline constexpr double kAlgebraTol = 1e-12;
inline constexpr double kDecisionTol = 1e-9;

class ZeroVector : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class PureState {
public:
    static constexpr std::size_t kDead = 0;
    static constexpr std::size_t kAlive = 1;

    const Complex& operator[](std::size_t i) const { return amps_[i]; }
    Complex dead() const { return amps_[kDead]; }
    Complex alive() const { return amps_[kAlive]; }
    double norm_squared() const { return std::norm(amps_[0]) + std::norm(amps_[1]); }

private:
    friend PureState pure_state(Complex, Complex);
    friend PureState unit_state_unchecked(Complex, Complex);
    PureState(Complex dead, Complex alive) : amps_{dead, alive} {}

    std::array<Complex, 2> amps_;
};

// Normalizes (dead, alive). Throws ZeroVector when the norm is <= 1e-12.
PureState pure_state(Complex amp_dead, Complex amp_alive);

// Wraps amplitudes the caller has already normalized analytically. Skipping the
// division keeps canonical states bit-stable across implementations.
PureState unit_state_unchecked(Complex amp_dead, Complex amp_alive);

PureState dead_state();
PureState alive_state();

// (|dead> + e^{i phase}|alive>) / sqrt(2); phase = 0 is the prepared cat.
PureState prepare_cat(double phase = 0.0);

// Row-major 2x2 complex matrix.
using Matrix2 = std::array<Complex, 4>;

class DensityMatrix {
public:
    // Checks Hermiticity, unit trace and positivity to `tol`; throws DomainError.
    static DensityMatrix from_entries(const Matrix2& entries, double tol = kAlgebraTol);

    const Complex& operator()(std::size_t row, std::size_t col) const { return m_[2 * row + col]; }
    const Matrix2& entries() const { return m_; }

    double trace() const { return m_[0].real() + m_[3].real(); }
    // Ascending eigenvalues of the Hermitian matrix.
    std::array<double, 2> eigenvalues() const;

    friend bool operator==(const DensityMatrix&, const DensityMatrix&) = default;

private:
    friend DensityMatrix density_of(const PureState&);
    friend DensityMatrix mixed_dead_alive();
    friend DensityMatrix dephase(const DensityMatrix&, double);
    explicit DensityMatrix(const Matrix2& m) : m_(m) {}

    Matrix2 m_;
};

bool is_valid_density(const Matrix2& m, double tol = kAlgebraTol);

// Ascending eigenvalues of a 2x2 Hermitian matrix (closed form).
std::array<double, 2> hermitian_eigenvalues(const Matrix2& m);

DensityMatrix density_of(const PureState& state);

// (|dead><dead| + |alive><alive|) / 2
DensityMatrix mixed_dead_alive();

struct Observable {
    std::string name;
    std::array<PureState, 2> eigenstates;
    std::array<std::string, 2> labels;

    // Index of `label`, or throws DomainError.
    std::size_t index_of(std::string_view label) const;
};

// Dead/alive: eigenstates |dead>, |alive>.
const Observable& observable_H();
// Plus/minus: eigenstates (|dead> +- |alive>)/sqrt(2), eigenvalues +1, -1.
const Observable& observable_S();
// Eigenstates (cos t/2, sin t/2) and (-sin t/2, cos t/2), labels "+1", "-1".
// theta = 0 gives the H basis, theta = pi/2 the S basis.
Observable observable_rotated(double theta);

struct Outcome {
    std::string label;
    double probability;
};

class Distribution {
public:
    explicit Distribution(std::vector<Outcome> outcomes) : outcomes_(std::move(outcomes)) {}

    std::span<const Outcome> outcomes() const { return outcomes_; }
    std::size_t size() const { return outcomes_.size(); }
    const Outcome& operator[](std::size_t i) const { return outcomes_[i]; }
    // Probability of `label`; throws DomainError for an unknown label.
    double at(std::string_view label) const;
    double total() const;

private:
    std::vector<Outcome> outcomes_;
};

// <e|rho|e>, clamped to [0, 1].
double born_probability(const DensityMatrix& state, const PureState& eigenstate);

// Tr(rho P_k) for both eigenstates, in the observable's canonical order.
Distribution born_probabilities(const DensityMatrix& state, const Observable& obs);

struct MeasurementRecord {
    std::string observable_name;
    std::string outcome_label;
    std::size_t outcome_index = 0;
    double probability_of_outcome = 0.0;
    DensityMatrix pre_state;
    DensityMatrix post_state;
    double rng_draw = 0.0;
};

struct MeasurementResult {
    MeasurementRecord record;
    RngStream rng;
};

// Picks the outcome index for Born weight `p_first` and draw `u`. An outcome
// with probability >= 1 - 1e-9 is returned regardless of u; otherwise the
// first outcome wins when u < p_first.
std::size_t select_outcome(double p_first, double p_second, double u) noexcept;

// Projective measurement with collapse. Always consumes exactly one draw.
MeasurementResult measure(const DensityMatrix& state, const Observable& obs, RngStream rng);

// Phase damping in the dead/alive basis: off-diagonals scaled by (1 - strength).
// Throws DomainError unless 0 <= strength <= 1.
DensityMatrix dephase(const DensityMatrix& state, double strength);

// (1/2) sum |eig(a - b)|
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

// |<a_i|b_j>|^2 for all i, j, row i = eigenstate of a.
std::array<std::array<double, 2>, 2> overlap_probabilities(const Observable& a, const Observable& b);

bool mutually_unbiased(const Observable& a, const Observable& b, double tol = kDecisionTol);

// Label of the eigenstate of `obs` that `state` occupies with probability
// >= 1 - 1e-9, if any.
std::optional<std::size_t> eigenstate_index(const DensityMatrix& state, const Observable& obs);

}  // namespace catbox
