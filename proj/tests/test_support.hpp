#pragma once

// Test-only helpers: random generators for property tests and an Eigen-based
// eigen-solver that serves as an independent oracle for the closed forms.

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "catbox/quantum.hpp"

namespace catbox::testing {

inline constexpr double kPi = std::numbers::pi;
inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

inline PureState random_pure(std::mt19937_64& gen) {
    std::normal_distribution<double> g;
    return pure_state({g(gen), g(gen)}, {g(gen), g(gen)});
}

// Convex mixture of two random pure states.
inline DensityMatrix random_density(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> w(0.0, 1.0);
    const double t = w(gen);
    const auto a = density_of(random_pure(gen));
    const auto b = density_of(random_pure(gen));
    Matrix2 m;
    for (std::size_t i = 0; i < 4; ++i) m[i] = t * a.entries()[i] + (1.0 - t) * b.entries()[i];
    return DensityMatrix::from_entries(m, 1e-10);
}

inline Observable random_observable(std::mt19937_64& gen) {
    const PureState e0 = random_pure(gen);
    // Orthogonal complement of (a, b) is (-conj(b), conj(a)).
    const PureState e1 = pure_state(-std::conj(e0[1]), std::conj(e0[0]));
    return Observable{"rand", {e0, e1}, {"+1", "-1"}};
}

inline Eigen::Matrix2cd to_eigen(const Matrix2& m) {
    Eigen::Matrix2cd e;
    e << m[0], m[1], m[2], m[3];
    return e;
}

// Oracle: (1/2) sum |eig(a - b)| via Eigen's Hermitian solver.
inline double trace_distance_oracle(const DensityMatrix& a, const DensityMatrix& b) {
    const Eigen::Matrix2cd d = to_eigen(a.entries()) - to_eigen(b.entries());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(d, Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

inline double max_entry_diff(const DensityMatrix& a, const DensityMatrix& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
    return worst;
}

}  // namespace catbox::testing
