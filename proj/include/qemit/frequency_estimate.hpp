#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>

#include "qemit/errors.hpp"

namespace qemit {

namespace detail {

inline double periodogram_power(std::span<const double> values, double mean, double dt,
                                double omega) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double phase = omega * dt * static_cast<double>(k);
        acc += (values[k] - mean) * std::complex<double>(std::cos(phase), -std::sin(phase));
    }
    return std::norm(acc);
}

}  // namespace detail

// Dominant angular frequency (rad/ns) of a uniformly sampled series:
// periodogram maximum on a 4x-oversampled grid, then golden-section
// refinement around the peak.
inline double dominant_angular_frequency(std::span<const double> values, double dt) {
    if (values.size() < 8) throw UsageError("series too short for a frequency estimate");
    if (!(dt > 0.0)) throw UsageError("sample spacing must be > 0");
    const auto n = static_cast<double>(values.size());
    double mean = 0.0;
    for (const double v : values) mean += v;
    mean /= n;

    const double resolution = 2.0 * std::numbers::pi / (n * dt);
    const double step = 0.25 * resolution;
    const double omega_max = std::numbers::pi / dt;
    double best_omega = resolution;
    double best_power = -1.0;
    for (double omega = 0.5 * resolution; omega <= omega_max; omega += step) {
        const double p = detail::periodogram_power(values, mean, dt, omega);
        if (p > best_power) {
            best_power = p;
            best_omega = omega;
        }
    }

    constexpr double inv_golden = 0.6180339887498949;
    double a = std::max(best_omega - step, 0.25 * resolution * 0.5);
    double b = std::min(best_omega + step, omega_max);
    double x1 = b - inv_golden * (b - a);
    double x2 = a + inv_golden * (b - a);
    double f1 = detail::periodogram_power(values, mean, dt, x1);
    double f2 = detail::periodogram_power(values, mean, dt, x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_golden * (b - a);
            f2 = detail::periodogram_power(values, mean, dt, x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_golden * (b - a);
            f1 = detail::periodogram_power(values, mean, dt, x1);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace qemit
