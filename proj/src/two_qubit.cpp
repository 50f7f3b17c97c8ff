#include "catbox/two_qubit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include <Eigen/Eigenvalues>

namespace catbox {

namespace {

using Matrix2cd = Eigen::Matrix2cd;

Matrix2cd to_eigen(const DensityMatrix& rho) {
    Matrix2cd m;
    m << rho(0, 0), rho(0, 1), rho(1, 0), rho(1, 1);
    return m;
}

Eigen::Vector2cd to_eigen(const PureState& s) { return Eigen::Vector2cd(s[0], s[1]); }

// +-1 valued observable P_0 - P_1.
Matrix2cd signed_operator(const Observable& obs) {
    const Eigen::Vector2cd e0 = to_eigen(obs.eigenstates[0]);
    const Eigen::Vector2cd e1 = to_eigen(obs.eigenstates[1]);
    return e0 * e0.adjoint() - e1 * e1.adjoint();
}

Matrix4 kron(const Matrix2cd& a, const Matrix2cd& b) {
    Matrix4 out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        }
    }
    return out;
}

DensityMatrix to_density(const Matrix2cd& m) {
    return DensityMatrix::from_entries(Matrix2{m(0, 0), m(0, 1), m(1, 0), m(1, 1)});
}

}  // namespace

bool is_valid_two_qubit(const Matrix4& m, double tol) {
    if (!m.allFinite()) return false;
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
    if (std::abs(m.trace() - Complex{1.0, 0.0}) > tol) return false;
    Eigen::SelfAdjointEigenSolver<Matrix4> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff() >= -tol;
}

TwoQubitState TwoQubitState::from_entries(const Matrix4& entries, double tol) {
    if (!is_valid_two_qubit(entries, tol)) {
        throw DomainError("not a two-qubit density matrix (Hermitian, unit trace, PSD)");
    }
    return TwoQubitState(entries);
}

TwoQubitState singlet() {
    const double r = 1.0 / std::sqrt(2.0);
    const Eigen::Vector4cd psi(0.0, r, -r, 0.0);
    return TwoQubitState::from_entries(psi * psi.adjoint());
}

TwoQubitState product_state(const DensityMatrix& a, const DensityMatrix& b) {
    return TwoQubitState::from_entries(kron(to_eigen(a), to_eigen(b)));
}

DensityMatrix reduced_a(const TwoQubitState& state) {
    const Matrix4& m = state.entries();
    Matrix2cd out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out(i, j) = m(2 * i, 2 * j) + m(2 * i + 1, 2 * j + 1);
        }
    }
    return to_density(out);
}

DensityMatrix reduced_b(const TwoQubitState& state) {
    const Matrix4& m = state.entries();
    Matrix2cd out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out(i, j) = m(i, j) + m(2 + i, 2 + j);
        }
    }
    return to_density(out);
}

std::array<double, 4> joint_probabilities(const TwoQubitState& state, const Observable& a,
                                          const Observable& b) {
    std::array<double, 4> p{};
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            const Eigen::Vector2cd ea = to_eigen(a.eigenstates[x]);
            const Eigen::Vector2cd eb = to_eigen(b.eigenstates[y]);
            Eigen::Vector4cd v;
            v << ea(0) * eb(0), ea(0) * eb(1), ea(1) * eb(0), ea(1) * eb(1);
            const Complex amp = v.dot(state.entries() * v);  // <v|rho|v>
            p[2 * x + y] = std::clamp(amp.real(), 0.0, 1.0);
        }
    }
    return p;
}

double correlation(const TwoQubitState& state, double theta_a, double theta_b) {
    const Matrix4 ab = kron(signed_operator(observable_rotated(theta_a)),
                            signed_operator(observable_rotated(theta_b)));
    return (state.entries() * ab).trace().real();
}

ChshSettings tsirelson_settings() {
    const double pi = std::acos(-1.0);
    return {0.0, pi / 2.0, pi / 4.0, 3.0 * pi / 4.0};
}

double chsh_value(const TwoQubitState& state, const ChshSettings& s) {
    return correlation(state, s.a, s.b) - correlation(state, s.a, s.b_prime) +
           correlation(state, s.a_prime, s.b) + correlation(state, s.a_prime, s.b_prime);
}

std::array<int, 16> lhv_strategy_values() {
    std::array<int, 16> values{};
    for (unsigned bits = 0; bits < 16; ++bits) {
        auto v = [bits](unsigned i) { return (bits >> i) & 1U ? -1 : 1; };
        const int a = v(0), a_prime = v(1), b = v(2), b_prime = v(3);
        values[bits] = a * b - a * b_prime + a_prime * b + a_prime * b_prime;
    }
    return values;
}

double lhv_chsh_max() {
    int best = 0;
    for (int v : lhv_strategy_values()) best = std::max(best, std::abs(v));
    return best;
}

}  // namespace catbox
