#pragma once

// Two-qubit states over the basis {dd, da, ad, aa} (side A first) and the
// CHSH machinery built on them.

#include <array>

#include <Eigen/Core>

#include "catbox/quantum.hpp"

namespace catbox {

using Matrix4 = Eigen::Matrix4cd;

class TwoQubitState {
public:
    // Validates Hermiticity, unit trace and positivity to `tol`; throws DomainError.
    static TwoQubitState from_entries(const Matrix4& entries, double tol = kAlgebraTol);

    const Matrix4& entries() const { return m_; }
    Complex operator()(Eigen::Index row, Eigen::Index col) const { return m_(row, col); }

private:
    explicit TwoQubitState(Matrix4 m) : m_(std::move(m)) {}
    Matrix4 m_;
};

bool is_valid_two_qubit(const Matrix4& m, double tol = kAlgebraTol);

// Projector onto (|da> - |ad>)/sqrt(2).
TwoQubitState singlet();

TwoQubitState product_state(const DensityMatrix& a, const DensityMatrix& b);

DensityMatrix reduced_a(const TwoQubitState& state);
DensityMatrix reduced_b(const TwoQubitState& state);

// Joint Born probabilities in the order (0,0), (0,1), (1,0), (1,1) of the two
// observables' canonical outcomes; for H x H this is dd, da, ad, aa.
std::array<double, 4> joint_probabilities(const TwoQubitState& state, const Observable& a,
                                          const Observable& b);

// Tr(rho (A x B)) with A, B the +-1 valued rotated observables.
double correlation(const TwoQubitState& state, double theta_a, double theta_b);

struct ChshSettings {
    double a = 0.0;
    double a_prime = 0.0;
    double b = 0.0;
    double b_prime = 0.0;
};

// (0, pi/2, pi/4, 3pi/4): |S| = 2 sqrt 2 on the singlet.
ChshSettings tsirelson_settings();

// E(a,b) - E(a,b') + E(a',b) + E(a',b')
double chsh_value(const TwoQubitState& state, const ChshSettings& s);

// CHSH combination for each of the 16 deterministic local strategies, indexed
// by the bits of (A(a), A(a'), B(b), B(b')) with bit set meaning -1.
std::array<int, 16> lhv_strategy_values();

// max |value| over lhv_strategy_values(); exactly 2.
double lhv_chsh_max();

}  // namespace catbox
