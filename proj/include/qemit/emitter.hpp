#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "qemit/errors.hpp"
#include "qemit/units.hpp"

namespace qemit {

// Physical rates of the two-level emitter. The radiative decay rate is
// always derived from the lifetime as 1/T1 and never stored separately.
// Immutable after construction.
struct EmitterParams {
    double t1_lifetime_ns;
    double gamma_pd_intrinsic;  // rad/ns
    double gamma_pd_laser;      // rad/ns, active only while the drive is on
    std::optional<double> t2_star_ns;  // absent: no inhomogeneous broadening

    EmitterParams(double t1_ns, double g_pd_intrinsic, double g_pd_laser,
                  std::optional<double> t2_star = std::nullopt)
        : t1_lifetime_ns(t1_ns),
          gamma_pd_intrinsic(g_pd_intrinsic),
          gamma_pd_laser(g_pd_laser),
          t2_star_ns(t2_star) {
        if (!(t1_lifetime_ns > 0.0)) throw DomainError("t1_lifetime must be > 0");
        if (gamma_pd_intrinsic < 0.0) throw DomainError("gamma_pd_intrinsic must be >= 0");
        if (gamma_pd_laser < 0.0) throw DomainError("gamma_pd_laser must be >= 0");
        if (t2_star_ns && !(*t2_star_ns > 0.0)) throw DomainError("t2_star must be > 0");
    }

    double gamma0() const { return 1.0 / t1_lifetime_ns; }

    // Total pure-dephasing rate while the laser is on / off.
    double gamma_pd(bool laser_on) const {
        return gamma_pd_intrinsic + (laser_on ? gamma_pd_laser : 0.0);
    }
};

// One piecewise-constant section of a drive schedule. The phase selects the
// rotation axis in the equatorial plane.
struct DriveSegment {
    double duration_ns;
    double rabi_rate;  // rad/ns
    double detuning;   // rad/ns
    double phase;      // rad
    bool laser_on;

    DriveSegment(double duration, double omega, double delta, double axis_phase, bool on)
        : duration_ns(duration), rabi_rate(omega), detuning(delta), phase(axis_phase),
          laser_on(on) {
        if (duration_ns < 0.0) throw DomainError("segment duration must be >= 0");
        if (!laser_on && rabi_rate != 0.0)
            throw DomainError("laser_on=false forces rabi_rate=0");
    }

    static DriveSegment pulse(double duration, double omega, double delta, double axis_phase) {
        return DriveSegment(duration, omega, delta, axis_phase, true);
    }

    static DriveSegment free_precession(double duration, double delta = 0.0) {
        return DriveSegment(duration, 0.0, delta, 0.0, false);
    }
};

// Ordered drive schedule plus the fluorescence readout window, both relative
// to the sequence start.
struct PulseSequence {
    std::vector<DriveSegment> segments;
    double readout_start_ns;
    double readout_end_ns;

    PulseSequence(std::vector<DriveSegment> segs, double readout_start, double readout_end)
        : segments(std::move(segs)),
          readout_start_ns(readout_start),
          readout_end_ns(readout_end) {
        if (segments.empty()) throw DomainError("pulse sequence needs at least one segment");
        const double total = total_duration_ns();
        if (readout_start_ns < 0.0 || readout_end_ns > total + 1e-12 ||
            readout_start_ns > readout_end_ns) {
            throw DomainError("readout window must lie within the sequence duration");
        }
    }

    double total_duration_ns() const {
        double t = 0.0;
        for (const auto& s : segments) t += s.duration_ns;
        return t;
    }
};

// 1/(2*pi*T1) in MHz.
inline double transform_limited_linewidth_mhz(double t1_ns) {
    if (!(t1_ns > 0.0)) throw DomainError("t1 must be > 0");
    return units::rad_ns_to_mhz(1.0 / t1_ns);
}

// Gamma0 + 2*Gamma_PD, rad/ns.
inline double homogeneous_linewidth(double gamma0, double gamma_pd) {
    if (gamma0 < 0.0 || gamma_pd < 0.0) throw DomainError("rates must be >= 0");
    return gamma0 + 2.0 * gamma_pd;
}

// theta = 1 + 2*Gamma_PD/Gamma0, the homogeneous linewidth in units of the
// transform limit.
inline double normalized_linewidth_theta(double gamma0, double gamma_pd) {
    if (!(gamma0 > 0.0)) throw DomainError("gamma0 must be > 0");
    if (gamma_pd < 0.0) throw DomainError("gamma_pd must be >= 0");
    return 1.0 + 2.0 * gamma_pd / gamma0;
}

}  // namespace qemit
