#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "qemit/emitter.hpp"
#include "qemit/errors.hpp"
#include "qemit/liouvillian.hpp"
#include "qemit/parallel.hpp"
#include "qemit/spectral_diffusion.hpp"
#include "qemit/time_trace.hpp"

// The experimental control sequences: resonant Rabi driving, Ramsey
// interferometry (pi/2 - tau - pi/2) and Hahn echo
// (pi/2 - tau/2 - pi - tau/2 - pi/2), with the readout phase selecting the
// rotation axis of the final pulse. The excited population at the end of
// the final pulse is the fluorescence proxy: integrating the subsequent
// free decay only multiplies it by a constant, so contrast is unchanged.

namespace qemit {

// Omega = Gamma0 * sqrt(s/2).
inline double rabi_from_saturation(double s, double t1_ns) {
    if (s < 0.0) throw DomainError("saturation parameter must be >= 0");
    if (!(t1_ns > 0.0)) throw DomainError("t1 must be > 0");
    return std::sqrt(0.5 * s) / t1_ns;
}

inline double saturation_from_rabi(double omega, double t1_ns) {
    if (omega < 0.0) throw DomainError("rabi rate must be >= 0");
    if (!(t1_ns > 0.0)) throw DomainError("t1 must be > 0");
    return 2.0 * (omega * t1_ns) * (omega * t1_ns);
}

// Q = Omega / (Gamma0/2 + Gamma_PD), the Rabi rate times the 1/e envelope
// decay time. Returns +inf when nothing decays.
inline double quality_factor(double omega, const EmitterParams& emitter) {
    if (!(omega > 0.0)) throw DomainError("rabi rate must be > 0");
    const double decay = 0.5 * emitter.gamma0() + emitter.gamma_pd(true);
    if (decay == 0.0) return std::numeric_limits<double>::infinity();
    return omega / decay;
}

// Ensemble-averaged excited population during a resonant square pulse.
inline TimeTrace simulate_rabi_trace(const EmitterParams& emitter, double omega, double delta,
                                     double pulse_length_ns, std::size_t bins,
                                     const DetuningEnsemble& ensemble, int threads = 1) {
    if (!(pulse_length_ns > 0.0)) throw DomainError("pulse length must be > 0");
    auto edges = TimeTrace::uniform_edges(0.0, pulse_length_ns, bins);
    TimeTrace skeleton(edges, std::vector<double>(bins, 0.0));
    const std::vector<double> centers = skeleton.bin_centers();
    const DriveSegment segment = DriveSegment::pulse(pulse_length_ns, omega, delta, 0.0);
    std::vector<std::vector<double>> per_node(ensemble.size());
    parallel_for(ensemble.size(), threads, [&](std::size_t node) {
        const auto states = propagate_segment(DensityMatrix::ground(), segment, emitter,
                                              ensemble.nodes[node], centers);
        std::vector<double> population(states.size());
        for (std::size_t k = 0; k < states.size(); ++k)
            population[k] = states[k].population_excited();
        per_node[node] = std::move(population);
    });
    return TimeTrace(std::move(edges), inhomogeneous_average(per_node, ensemble));
}

inline TimeTrace simulate_rabi(const EmitterParams& emitter, double s, double pulse_length_ns,
                               std::size_t bins, int ensemble_nodes = 64, int threads = 1) {
    const double omega = rabi_from_saturation(s, emitter.t1_lifetime_ns);
    return simulate_rabi_trace(emitter, omega, 0.0, pulse_length_ns, bins,
                               ensemble_for(emitter, ensemble_nodes), threads);
}

// One Rabi trace per detuning; oscillation frequency grows as
// sqrt(Omega^2 + delta^2) and amplitude shrinks as Omega^2/(Omega^2+delta^2).
inline std::vector<TimeTrace> simulate_detuned_rabi_map(const EmitterParams& emitter, double s,
                                                        std::span<const double> delta_grid,
                                                        double pulse_length_ns, std::size_t bins,
                                                        int ensemble_nodes = 64,
                                                        int threads = 1) {
    if (delta_grid.empty()) throw UsageError("detuning grid must be non-empty");
    const double omega = rabi_from_saturation(s, emitter.t1_lifetime_ns);
    const DetuningEnsemble ensemble = ensemble_for(emitter, ensemble_nodes);
    std::vector<TimeTrace> map;
    map.reserve(delta_grid.size());
    for (const double delta : delta_grid)
        map.push_back(simulate_rabi_trace(emitter, omega, delta, pulse_length_ns, bins,
                                          ensemble, threads));
    return map;
}

// Time of the first population maximum, refined parabolically across the
// neighboring bins.
inline double first_maximum_time(const TimeTrace& trace) {
    const auto& c = trace.counts;
    for (std::size_t i = 1; i + 1 < c.size(); ++i) {
        if (c[i] >= c[i + 1] && c[i] > c[0]) {
            const double y0 = c[i - 1], y1 = c[i], y2 = c[i + 1];
            const double denom = y0 - 2.0 * y1 + y2;
            double shift = 0.0;
            if (denom != 0.0) shift = 0.5 * (y0 - y2) / denom;
            return trace.bin_center(i) + shift * trace.bin_width(i);
        }
    }
    throw NumericalError("trace has no interior maximum");
}

inline PulseSequence build_ramsey(double tau_ns, double readout_phase,
                                  const EmitterParams& emitter, double omega,
                                  double readout_window_ns = 10.0) {
    if (tau_ns < 0.0) throw DomainError("free-precession time must be >= 0");
    if (!(omega > 0.0)) throw DomainError("rabi rate must be > 0");
    (void)emitter;
    const double half_pi_duration = 0.5 * std::numbers::pi / omega;
    std::vector<DriveSegment> segments{
        DriveSegment::pulse(half_pi_duration, omega, 0.0, 0.0),
        DriveSegment::free_precession(tau_ns),
        DriveSegment::pulse(half_pi_duration, omega, 0.0, readout_phase),
        DriveSegment::free_precession(readout_window_ns),
    };
    const double readout_start = 2.0 * half_pi_duration + tau_ns;
    return PulseSequence(std::move(segments), readout_start,
                         readout_start + readout_window_ns);
}

inline PulseSequence build_hahn(double tau_ns, double readout_phase,
                                const EmitterParams& emitter, double omega,
                                double readout_window_ns = 10.0) {
    if (tau_ns < 0.0) throw DomainError("free-precession time must be >= 0");
    if (!(omega > 0.0)) throw DomainError("rabi rate must be > 0");
    (void)emitter;
    const double half_pi_duration = 0.5 * std::numbers::pi / omega;
    const double pi_duration = std::numbers::pi / omega;
    std::vector<DriveSegment> segments{
        DriveSegment::pulse(half_pi_duration, omega, 0.0, 0.0),
        DriveSegment::free_precession(0.5 * tau_ns),
        DriveSegment::pulse(pi_duration, omega, 0.0, 0.0),
        DriveSegment::free_precession(0.5 * tau_ns),
        DriveSegment::pulse(half_pi_duration, omega, 0.0, readout_phase),
        DriveSegment::free_precession(readout_window_ns),
    };
    const double readout_start = 2.0 * half_pi_duration + pi_duration + tau_ns;
    return PulseSequence(std::move(segments), readout_start,
                         readout_start + readout_window_ns);
}

// Physical pulses evolve under the full master equation for their stated
// duration; ideal pulses are instantaneous rotations by Omega*duration used
// to isolate refocusing properties.
enum class PulseMode { physical, ideal };

// Excited population at the start of the readout window for one
// quasi-static detuning.
inline double readout_population(const PulseSequence& sequence, const EmitterParams& emitter,
                                 double extra_detuning, PulseMode mode = PulseMode::physical) {
    DensityMatrix rho = DensityMatrix::ground();
    double elapsed = 0.0;
    for (const auto& segment : sequence.segments) {
        if (elapsed >= sequence.readout_start_ns - 1e-12) break;
        const double remaining = sequence.readout_start_ns - elapsed;
        if (mode == PulseMode::ideal && segment.laser_on) {
            rho = apply_ideal_rotation(rho, segment.rabi_rate * segment.duration_ns,
                                       segment.phase);
            elapsed += segment.duration_ns;
            continue;
        }
        if (segment.duration_ns <= remaining + 1e-12) {
            rho = propagate_full_segment(rho, segment, emitter, extra_detuning);
            elapsed += segment.duration_ns;
        } else {
            rho = propagate_segment(rho, segment, emitter, extra_detuning,
                                    std::span(&remaining, 1))
                      .back();
            elapsed = sequence.readout_start_ns;
        }
    }
    return rho.population_excited();
}

enum class SequenceKind { ramsey, hahn };

struct ContrastCurve {
    std::vector<double> tau_ns;
    std::vector<double> contrast;  // normalized to 1 at tau = 0
};

namespace detail {

// Per-node propagators for the pulses are tau-independent; only the free
// intervals change across the curve.
struct SequencePropagators {
    Eigen::Matrix4cd half_zero;
    Eigen::Matrix4cd half_readout;  // phase pi relative to half_zero
    Eigen::Matrix4cd pi_zero;
    Liouvillian free_liouvillian;
};

inline SequencePropagators make_propagators(const EmitterParams& emitter, double omega,
                                            double node_detuning, PulseMode mode) {
    SequencePropagators p;
    const double half_pi_duration = 0.5 * std::numbers::pi / omega;
    const auto pulse_propagator = [&](double duration, double phase) -> Eigen::Matrix4cd {
        if (mode == PulseMode::ideal) {
            const Eigen::Matrix2cd axis =
                std::cos(phase) * pauli::sx + std::sin(phase) * pauli::sy;
            const std::complex<double> i_unit(0.0, 1.0);
            const double angle = omega * duration;
            const Eigen::Matrix2cd u = std::cos(0.5 * angle) * pauli::id -
                                       i_unit * std::sin(0.5 * angle) * axis;
            return kron2(u.conjugate(), u);
        }
        const DriveSegment segment = DriveSegment::pulse(duration, omega, 0.0, phase);
        return (build_liouvillian(segment, emitter, node_detuning).matrix * duration).exp();
    };
    p.half_zero = pulse_propagator(half_pi_duration, 0.0);
    p.half_readout = pulse_propagator(half_pi_duration, std::numbers::pi);
    p.pi_zero = pulse_propagator(2.0 * half_pi_duration, 0.0);
    p.free_liouvillian = build_liouvillian(DriveSegment::free_precession(1.0), emitter,
                                           node_detuning);
    return p;
}

inline double contrast_difference(SequenceKind kind, double tau,
                                  const SequencePropagators& p) {
    const Eigen::Vector4cd ground = vectorize(DensityMatrix::ground().matrix());
    Eigen::Matrix4cd middle;
    if (kind == SequenceKind::ramsey) {
        middle = tau > 0.0 ? (p.free_liouvillian.matrix * tau).exp().eval()
                           : Eigen::Matrix4cd::Identity().eval();
    } else {
        const Eigen::Matrix4cd half_free =
            tau > 0.0 ? (p.free_liouvillian.matrix * (0.5 * tau)).exp().eval()
                      : Eigen::Matrix4cd::Identity().eval();
        middle = half_free * p.pi_zero * half_free;
    }
    const Eigen::Vector4cd before_readout = middle * (p.half_zero * ground);
    const Eigen::Vector4cd v_pi = p.half_readout * before_readout;
    const Eigen::Vector4cd v_zero = p.half_zero * before_readout;
    return v_pi(3).real() - v_zero(3).real();
}

}  // namespace detail

// Unnormalized contrast <rho11(phi=pi)> - <rho11(phi=0)> at one tau.
inline double contrast_raw(SequenceKind kind, double tau_ns, const EmitterParams& emitter,
                           double omega, const DetuningEnsemble& ensemble,
                           PulseMode mode = PulseMode::physical) {
    if (tau_ns < 0.0) throw DomainError("free-precession time must be >= 0");
    if (!(omega > 0.0)) throw DomainError("rabi rate must be > 0");
    double acc = 0.0;
    for (std::size_t node = 0; node < ensemble.size(); ++node) {
        const auto p = detail::make_propagators(emitter, omega, ensemble.nodes[node], mode);
        acc += ensemble.weights[node] * detail::contrast_difference(kind, tau_ns, p);
    }
    return acc;
}

// Contrast decay curve, normalized by the tau = 0 point.
inline ContrastCurve contrast_curve(SequenceKind kind, std::span<const double> taus,
                                    const EmitterParams& emitter, double omega,
                                    const DetuningEnsemble& ensemble,
                                    PulseMode mode = PulseMode::physical, int threads = 1) {
    if (taus.empty()) throw UsageError("tau grid must be non-empty");
    std::vector<std::vector<double>> per_node(ensemble.size());
    parallel_for(ensemble.size(), threads, [&](std::size_t node) {
        const auto p = detail::make_propagators(emitter, omega, ensemble.nodes[node], mode);
        std::vector<double> values(taus.size() + 1);
        values[0] = detail::contrast_difference(kind, 0.0, p);
        for (std::size_t k = 0; k < taus.size(); ++k) {
            if (taus[k] < 0.0) throw DomainError("free-precession time must be >= 0");
            values[k + 1] = detail::contrast_difference(kind, taus[k], p);
        }
        per_node[node] = std::move(values);
    });
    const std::vector<double> averaged = inhomogeneous_average(per_node, ensemble);
    const double reference = averaged.front();
    if (std::abs(reference) < 1e-12)
        throw DegenerateError("zero contrast at tau = 0; cannot normalize");
    ContrastCurve curve;
    curve.tau_ns.assign(taus.begin(), taus.end());
    curve.contrast.resize(taus.size());
    for (std::size_t k = 0; k < taus.size(); ++k)
        curve.contrast[k] = averaged[k + 1] / reference;
    return curve;
}

// A1 exp(-t/tau1) + A2 exp(-t/tau2) + C, the forward model for the
// dark-state pumping fits.
inline double biexponential(double t, double a_fast, double tau_fast, double a_slow,
                            double tau_slow, double offset) {
    if (!(tau_fast > 0.0) || !(tau_slow > 0.0))
        throw DomainError("bi-exponential time constants must be > 0");
    return a_fast * std::exp(-t / tau_fast) + a_slow * std::exp(-t / tau_slow) + offset;
}

inline TimeTrace dark_state_pumping_curve(double a_fast, double tau_fast, double a_slow,
                                          double tau_slow, double offset,
                                          const std::vector<double>& t_edges) {
    TimeTrace skeleton(t_edges, std::vector<double>(t_edges.size() - 1, 0.0));
    std::vector<double> values(skeleton.n_bins());
    for (std::size_t i = 0; i < values.size(); ++i)
        values[i] = biexponential(skeleton.bin_center(i), a_fast, tau_fast, a_slow, tau_slow,
                                  offset);
    return TimeTrace(t_edges, std::move(values));
}

}  // namespace qemit
