#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "qemit/emitter.hpp"
#include "qemit/errors.hpp"
#include "qemit/quadrature.hpp"
#include "qemit/rng.hpp"

// Quasi-static spectral diffusion: each shot sees a constant detuning drawn
// from N(0, sigma) with sigma = sqrt(2)/T2*, and observables are averaged
// over shots. The default discretization is deterministic Gauss-Hermite
// quadrature; a seeded Monte-Carlo ensemble exists as an oracle.

namespace qemit {

struct DetuningEnsemble {
    std::vector<double> nodes;    // rad/ns
    std::vector<double> weights;  // non-negative, sum to 1

    DetuningEnsemble(std::vector<double> n, std::vector<double> w)
        : nodes(std::move(n)), weights(std::move(w)) {
        if (nodes.empty() || nodes.size() != weights.size())
            throw DomainError("ensemble needs matching non-empty nodes and weights");
        double sum = 0.0;
        for (const double wi : weights) {
            if (wi < 0.0) throw DomainError("ensemble weights must be non-negative");
            sum += wi;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw DomainError("ensemble weights must sum to 1 within 1e-12");
    }

    // The trivial ensemble: a single shot at zero detuning.
    static DetuningEnsemble delta_at_zero() { return DetuningEnsemble({0.0}, {1.0}); }

    std::size_t size() const { return nodes.size(); }
};

inline double spectral_diffusion_sigma(double t2_star_ns) {
    if (!(t2_star_ns > 0.0)) throw DomainError("t2_star must be > 0");
    return std::numbers::sqrt2 / t2_star_ns;
}

// Gauss-Hermite discretization of N(0, sqrt(2)/T2*): integrates polynomials
// in the detuning up to degree 2n-1 exactly.
inline DetuningEnsemble gauss_hermite_ensemble(double t2_star_ns, int n_nodes) {
    if (n_nodes < 1) throw UsageError("ensemble needs at least one node");
    if (n_nodes > quadrature::max_order)
        throw UsageError("gauss_hermite_ensemble supports at most 512 nodes");
    const double sigma = spectral_diffusion_sigma(t2_star_ns);
    quadrature::Rule rule = quadrature::gauss_hermite(n_nodes);
    const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
    std::vector<double> nodes(rule.nodes.size());
    std::vector<double> weights(rule.weights.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        nodes[i] = std::numbers::sqrt2 * sigma * rule.nodes[i];
        weights[i] = rule.weights[i] * inv_sqrt_pi;
    }
    // Remove the O(1e-16) quadrature-weight residue so the sum-to-1
    // invariant holds exactly.
    double sum = 0.0;
    for (const double w : weights) sum += w;
    for (auto& w : weights) w /= sum;
    return DetuningEnsemble(std::move(nodes), std::move(weights));
}

// Equal-weight random draws from the same distribution; the reduction order
// is fixed by the draw order.
inline DetuningEnsemble monte_carlo_ensemble(double t2_star_ns, int n_draws,
                                             std::uint64_t seed) {
    if (n_draws < 1) throw UsageError("ensemble needs at least one draw");
    const double sigma = spectral_diffusion_sigma(t2_star_ns);
    rng::Stream stream(seed);
    std::vector<double> nodes(static_cast<std::size_t>(n_draws));
    for (auto& x : nodes) x = sigma * stream.normal();
    std::vector<double> weights(nodes.size(), 1.0 / static_cast<double>(n_draws));
    return DetuningEnsemble(std::move(nodes), std::move(weights));
}

// Ensemble for an emitter: T2* absent means no inhomogeneous broadening.
inline DetuningEnsemble ensemble_for(const EmitterParams& emitter, int n_nodes) {
    if (!emitter.t2_star_ns) return DetuningEnsemble::delta_at_zero();
    return gauss_hermite_ensemble(*emitter.t2_star_ns, n_nodes);
}

// Weighted mean per time point of one series per ensemble node.
inline std::vector<double> inhomogeneous_average(
    const std::vector<std::vector<double>>& per_node_series, const DetuningEnsemble& ensemble) {
    if (per_node_series.size() != ensemble.size())
        throw UsageError("one series per ensemble node is required");
    if (per_node_series.empty()) throw UsageError("nothing to average");
    const std::size_t length = per_node_series.front().size();
    for (const auto& series : per_node_series)
        if (series.size() != length)
            throw UsageError("per-node series must share their length");
    std::vector<double> mean(length, 0.0);
    for (std::size_t node = 0; node < per_node_series.size(); ++node) {
        const double w = ensemble.weights[node];
        const auto& series = per_node_series[node];
        for (std::size_t k = 0; k < length; ++k) mean[k] += w * series[k];
    }
    return mean;
}

struct PleLineshape {
    std::vector<double> detuning;     // rad/ns grid
    std::vector<double> single_shot;  // power-broadened Lorentzian, unit peak
    std::vector<double> ensemble;     // Gaussian-convolved, unit peak
};

// Single-shot line: Lorentzian of FWHM Gamma_hom*sqrt(1+s) (steady-state
// power broadening). Ensemble line: the same convolved with a Gaussian of
// the given FWHM, both normalized to unit peak.
inline PleLineshape ple_lineshape(const EmitterParams& emitter, double saturation,
                                  double inhomogeneous_fwhm, const std::vector<double>& grid,
                                  int convolution_nodes = 128) {
    if (saturation < 0.0) throw DomainError("saturation parameter must be >= 0");
    if (inhomogeneous_fwhm < 0.0) throw DomainError("inhomogeneous FWHM must be >= 0");
    if (grid.empty()) throw UsageError("detuning grid must be non-empty");
    const double gamma_hom =
        homogeneous_linewidth(emitter.gamma0(), emitter.gamma_pd(true));
    const double fwhm = gamma_hom * std::sqrt(1.0 + saturation);
    const auto lorentz = [fwhm](double delta) {
        const double x = 2.0 * delta / fwhm;
        return 1.0 / (1.0 + x * x);
    };
    PleLineshape out;
    out.detuning = grid;
    out.single_shot.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) out.single_shot[i] = lorentz(grid[i]);
    if (inhomogeneous_fwhm == 0.0) {
        out.ensemble = out.single_shot;
        return out;
    }
    const double sigma = inhomogeneous_fwhm / (2.0 * std::sqrt(2.0 * std::numbers::ln2));
    const quadrature::Rule rule = quadrature::gauss_hermite(convolution_nodes);
    const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
    const auto voigt = [&](double delta) {
        double acc = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const double u = std::numbers::sqrt2 * sigma * rule.nodes[k];
            acc += rule.weights[k] * lorentz(delta - u);
        }
        return acc * inv_sqrt_pi;
    };
    const double peak = voigt(0.0);
    out.ensemble.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) out.ensemble[i] = voigt(grid[i]) / peak;
    return out;
}

}  // namespace qemit
