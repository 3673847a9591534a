#pragma once

#include <Eigen/Dense>
#include <complex>
#include <sstream>

#include "qemit/errors.hpp"

namespace qemit {

// 2x2 density matrix of the optical qubit in the {|0> ground, |1> excited}
// basis. Construction enforces Hermiticity and unit trace to 1e-12 and
// eigenvalues >= -1e-10, so any instance reachable at runtime is a valid
// physical state.
class DensityMatrix {
public:
    static constexpr double hermiticity_tol = 1e-12;
    static constexpr double trace_tol = 1e-12;
    static constexpr double eigenvalue_floor = -1e-10;

    explicit DensityMatrix(const Eigen::Matrix2cd& m) : m_(m) { validate(); }

    static DensityMatrix ground() {
        Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
        m(0, 0) = 1.0;
        return DensityMatrix(m);
    }

    static DensityMatrix excited() {
        Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
        m(1, 1) = 1.0;
        return DensityMatrix(m);
    }

    const Eigen::Matrix2cd& matrix() const { return m_; }

    std::complex<double> coherence() const { return m_(0, 1); }
    double population_ground() const { return m_(0, 0).real(); }
    double population_excited() const { return m_(1, 1).real(); }

    double purity() const { return (m_ * m_).trace().real(); }

private:
    void validate() const {
        if (!m_.allFinite()) throw NumericalError("density matrix has non-finite entries");
        if (std::abs(m_(1, 0) - std::conj(m_(0, 1))) > hermiticity_tol ||
            std::abs(m_(0, 0).imag()) > hermiticity_tol ||
            std::abs(m_(1, 1).imag()) > hermiticity_tol) {
            throw NumericalError("density matrix is not Hermitian within 1e-12");
        }
        const std::complex<double> tr = m_(0, 0) + m_(1, 1);
        if (std::abs(tr - 1.0) > trace_tol) {
            std::ostringstream os;
            os << "density matrix trace deviates from 1 by " << std::abs(tr - 1.0);
            throw NumericalError(os.str());
        }
        // Closed form for the eigenvalues of a Hermitian 2x2 with unit trace.
        const double a = m_(0, 0).real();
        const double d = m_(1, 1).real();
        const double off = std::abs(m_(0, 1));
        const double mean = 0.5 * (a + d);
        const double radius = std::sqrt(0.25 * (a - d) * (a - d) + off * off);
        if (mean - radius < eigenvalue_floor) {
            std::ostringstream os;
            os << "density matrix has eigenvalue " << (mean - radius) << " below -1e-10";
            throw NumericalError(os.str());
        }
    }

    Eigen::Matrix2cd m_;
};

}  // namespace qemit
