#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <complex>
#include <span>
#include <sstream>
#include <vector>

#include "qemit/density_matrix.hpp"
#include "qemit/emitter.hpp"
#include "qemit/errors.hpp"

// Master equation of the driven two-level emitter:
//
//   drho/dt = -i [H, rho] + sum_i ( c_i rho c_i^+ - 1/2 {c_i^+ c_i, rho} )
//
// with H = (Omega/2)(cos(phi) sx + sin(phi) sy) + (delta/2) sz in the
// {|0>, |1>} basis, c1 = sqrt(Gamma0) |0><1| and c2 = sqrt(Gamma_PD/2) sz.
// While the laser is off, Omega = 0 and the laser-induced dephasing drops
// out. Segments are piecewise constant, so propagation is the exact matrix
// exponential of a 4x4 superoperator acting on the column-stacked rho.

namespace qemit {

struct Liouvillian {
    Eigen::Matrix4cd matrix;  // rad/ns entries, acts on vec(rho)
};

inline Eigen::Vector4cd vectorize(const Eigen::Matrix2cd& m) {
    return Eigen::Vector4cd(m(0, 0), m(1, 0), m(0, 1), m(1, 1));
}

inline Eigen::Matrix2cd unvectorize(const Eigen::Vector4cd& v) {
    Eigen::Matrix2cd m;
    m(0, 0) = v(0);
    m(1, 0) = v(1);
    m(0, 1) = v(2);
    m(1, 1) = v(3);
    return m;
}

namespace pauli {
inline const Eigen::Matrix2cd sx = (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
inline const Eigen::Matrix2cd sy =
    (Eigen::Matrix2cd() << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0)
        .finished();
inline const Eigen::Matrix2cd sz = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();
inline const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
// |0><1|: spontaneous emission lowers the excited state into the ground state.
inline const Eigen::Matrix2cd lower = (Eigen::Matrix2cd() << 0, 1, 0, 0).finished();
}  // namespace pauli

namespace detail {

inline Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

// Column-stacking identities: vec(A rho) = (I (x) A) vec(rho),
// vec(rho A) = (A^T (x) I) vec(rho), vec(A rho B) = (B^T (x) A) vec(rho).
inline void add_collapse(Eigen::Matrix4cd& l, const Eigen::Matrix2cd& c) {
    const Eigen::Matrix2cd cdc = c.adjoint() * c;
    l += kron2(c.conjugate(), c);
    l -= 0.5 * kron2(pauli::id, cdc);
    l -= 0.5 * kron2(cdc.transpose(), pauli::id);
}

}  // namespace detail

// Hamiltonian of one segment, including an extra quasi-static detuning
// (the spectral-diffusion ensemble node).
inline Eigen::Matrix2cd segment_hamiltonian(const DriveSegment& segment, double extra_detuning) {
    const double omega = segment.laser_on ? segment.rabi_rate : 0.0;
    const double delta = segment.detuning + extra_detuning;
    return 0.5 * omega *
               (std::cos(segment.phase) * pauli::sx + std::sin(segment.phase) * pauli::sy) +
           0.5 * delta * pauli::sz;
}

inline Liouvillian build_liouvillian(const DriveSegment& segment, const EmitterParams& emitter,
                                     double extra_detuning = 0.0) {
    const Eigen::Matrix2cd h = segment_hamiltonian(segment, extra_detuning);
    const std::complex<double> i_unit(0.0, 1.0);
    Eigen::Matrix4cd l = -i_unit * detail::kron2(pauli::id, h) +
                         i_unit * detail::kron2(h.transpose(), pauli::id);
    const double gamma_pd = emitter.gamma_pd(segment.laser_on);
    detail::add_collapse(l, std::sqrt(emitter.gamma0()) * pauli::lower);
    if (gamma_pd > 0.0) detail::add_collapse(l, std::sqrt(0.5 * gamma_pd) * pauli::sz);
    return Liouvillian{l};
}

namespace detail {

inline DensityMatrix state_from_vector(const Eigen::Vector4cd& v, const char* where) {
    Eigen::Matrix2cd m = unvectorize(v);
    // Round off the O(1e-16) propagation residue; validation still enforces
    // the full invariant set.
    m = 0.5 * (m + m.adjoint().eval());
    try {
        return DensityMatrix(m);
    } catch (const NumericalError& e) {
        std::ostringstream os;
        os << where << ": " << e.what();
        throw NumericalError(os.str());
    }
}

}  // namespace detail

// rho(t) at each sample time via the matrix exponential of the (constant)
// segment Liouvillian. sample_times must be sorted and lie in
// [0, segment.duration].
inline std::vector<DensityMatrix> propagate_segment(const DensityMatrix& rho,
                                                    const DriveSegment& segment,
                                                    const EmitterParams& emitter,
                                                    double extra_detuning,
                                                    std::span<const double> sample_times) {
    for (std::size_t i = 0; i < sample_times.size(); ++i) {
        if (sample_times[i] < 0.0 || sample_times[i] > segment.duration_ns + 1e-12)
            throw UsageError("sample times must lie within the segment duration");
        if (i > 0 && sample_times[i] < sample_times[i - 1])
            throw UsageError("sample times must be sorted");
    }
    const Liouvillian liou = build_liouvillian(segment, emitter, extra_detuning);
    std::vector<DensityMatrix> out;
    out.reserve(sample_times.size());
    Eigen::Vector4cd v = vectorize(rho.matrix());
    double t_prev = 0.0;
    // Uniform grids reuse one propagator; distinct steps each get their own.
    double cached_dt = -1.0;
    Eigen::Matrix4cd cached_propagator;
    for (const double t : sample_times) {
        const double dt = t - t_prev;
        if (dt > 0.0) {
            if (dt != cached_dt) {
                cached_propagator = (liou.matrix * dt).exp();
                cached_dt = dt;
            }
            v = cached_propagator * v;
            t_prev = t;
        }
        out.push_back(detail::state_from_vector(v, "propagate_segment"));
    }
    return out;
}

// Final state after the whole segment.
inline DensityMatrix propagate_full_segment(const DensityMatrix& rho, const DriveSegment& segment,
                                            const EmitterParams& emitter,
                                            double extra_detuning = 0.0) {
    if (segment.duration_ns == 0.0) return rho;
    const double t = segment.duration_ns;
    return propagate_segment(rho, segment, emitter, extra_detuning, std::span(&t, 1)).back();
}

// Fixed-step classical Runge-Kutta integration of the same master equation.
// Exists purely as a cross-check for the exponential propagator.
inline DensityMatrix propagate_rk4(const DensityMatrix& rho, const DriveSegment& segment,
                                   const EmitterParams& emitter, double extra_detuning,
                                   double dt) {
    if (segment.duration_ns == 0.0) return rho;
    if (!(dt > 0.0)) throw UsageError("rk4 step must be > 0");
    if (dt > segment.duration_ns)
        throw UsageError("rk4 step exceeds the segment duration");
    const Liouvillian liou = build_liouvillian(segment, emitter, extra_detuning);
    const auto n_steps =
        static_cast<std::size_t>(std::ceil(segment.duration_ns / dt - 1e-12));
    const double h = segment.duration_ns / static_cast<double>(n_steps);
    Eigen::Vector4cd v = vectorize(rho.matrix());
    for (std::size_t i = 0; i < n_steps; ++i) {
        const Eigen::Vector4cd k1 = liou.matrix * v;
        const Eigen::Vector4cd k2 = liou.matrix * (v + 0.5 * h * k1);
        const Eigen::Vector4cd k3 = liou.matrix * (v + 0.5 * h * k2);
        const Eigen::Vector4cd k4 = liou.matrix * (v + h * k3);
        v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return detail::state_from_vector(v, "propagate_rk4");
}

// Null vector of the Liouvillian, normalized to unit trace.
inline DensityMatrix steady_state(const DriveSegment& segment, const EmitterParams& emitter,
                                  double extra_detuning = 0.0) {
    const Liouvillian liou = build_liouvillian(segment, emitter, extra_detuning);
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(liou.matrix, Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    const double tol = 1e-12 * sigma(0);
    int null_dim = 0;
    for (int i = 0; i < 4; ++i)
        if (sigma(i) <= tol) ++null_dim;
    if (null_dim != 1) {
        throw DegenerateError(
            "steady state is not unique (Liouvillian null space has dimension " +
            std::to_string(null_dim) + ")");
    }
    Eigen::Vector4cd v = svd.matrixV().col(3);
    const std::complex<double> tr = v(0) + v(3);
    if (std::abs(tr) < 1e-12)
        throw DegenerateError("steady-state candidate is traceless");
    v /= tr;
    return detail::state_from_vector(v, "steady_state");
}

// Instantaneous rotation by `angle` about the equatorial axis selected by
// `phase` (the ideal-pulse limit of a drive segment).
inline DensityMatrix apply_ideal_rotation(const DensityMatrix& rho, double angle, double phase) {
    const Eigen::Matrix2cd axis =
        std::cos(phase) * pauli::sx + std::sin(phase) * pauli::sy;
    const std::complex<double> i_unit(0.0, 1.0);
    const Eigen::Matrix2cd u = (std::cos(0.5 * angle) * pauli::id) -
                               (i_unit * std::sin(0.5 * angle)) * axis;
    return DensityMatrix(u * rho.matrix() * u.adjoint());
}

}  // namespace qemit
