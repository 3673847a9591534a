#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <vector>

#include "qemit/errors.hpp"

namespace qemit::quadrature {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

namespace detail {

// Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix of the
// orthonormal recurrence, weights are mu0 * v0^2 of the eigenvectors.
inline Rule golub_welsch(const Eigen::VectorXd& off_diagonal, double mu0) {
    const Eigen::Index n = off_diagonal.size() + 1;
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        jacobi(i, i + 1) = off_diagonal(i);
        jacobi(i + 1, i) = off_diagonal(i);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    if (solver.info() != Eigen::Success)
        throw NumericalError("quadrature eigensolver failed");
    Rule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        rule.nodes[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
        const double v0 = solver.eigenvectors()(0, i);
        rule.weights[static_cast<std::size_t>(i)] = mu0 * v0 * v0;
    }
    return rule;
}

}  // namespace detail

inline constexpr int max_order = 512;

// Nodes/weights for integrating over [-1, 1]: exact for polynomials up to
// degree 2n-1.
inline Rule gauss_legendre(int n) {
    if (n < 1 || n > max_order) throw UsageError("gauss_legendre order must be in [1, 512]");
    if (n == 1) return Rule{{0.0}, {2.0}};
    Eigen::VectorXd b(n - 1);
    for (int i = 1; i < n; ++i) {
        const double k = static_cast<double>(i);
        b(i - 1) = k / std::sqrt(4.0 * k * k - 1.0);
    }
    return detail::golub_welsch(b, 2.0);
}

// Nodes/weights for the weight exp(-x^2) over the real line
// (physicists' convention).
inline Rule gauss_hermite(int n) {
    if (n < 1 || n > max_order) throw UsageError("gauss_hermite order must be in [1, 512]");
    if (n == 1) return Rule{{0.0}, {std::sqrt(std::numbers::pi)}};
    Eigen::VectorXd b(n - 1);
    for (int i = 1; i < n; ++i) b(i - 1) = std::sqrt(static_cast<double>(i) / 2.0);
    return detail::golub_welsch(b, std::sqrt(std::numbers::pi));
}

// gauss_legendre rescaled to [a, b].
inline Rule gauss_legendre_on(double a, double b, int n) {
    Rule rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (auto& x : rule.nodes) x = mid + half * x;
    for (auto& w : rule.weights) w *= half;
    return rule;
}

}  // namespace qemit::quadrature
