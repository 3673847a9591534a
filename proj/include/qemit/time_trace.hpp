#pragma once

#include <vector>

#include "qemit/errors.hpp"

namespace qemit {

// Time-binned trace: counts/ns/trigger for measured histograms, or a
// dimensionless population for simulated ones. counts[i] belongs to the bin
// [bin_edges[i], bin_edges[i+1]) and is associated with the bin center.
struct TimeTrace {
    std::vector<double> bin_edges;  // ns, strictly increasing
    std::vector<double> counts;     // one value per bin

    TimeTrace(std::vector<double> edges, std::vector<double> values)
        : bin_edges(std::move(edges)), counts(std::move(values)) {
        if (bin_edges.size() < 2) throw DomainError("time trace needs at least one bin");
        for (std::size_t i = 1; i < bin_edges.size(); ++i) {
            if (!(bin_edges[i] > bin_edges[i - 1]))
                throw DomainError("bin edges must be strictly increasing");
        }
        if (counts.size() + 1 != bin_edges.size())
            throw DomainError("counts length must equal the number of bins");
    }

    std::size_t n_bins() const { return counts.size(); }
    double bin_center(std::size_t i) const { return 0.5 * (bin_edges[i] + bin_edges[i + 1]); }
    double bin_width(std::size_t i) const { return bin_edges[i + 1] - bin_edges[i]; }

    std::vector<double> bin_centers() const {
        std::vector<double> t(n_bins());
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = bin_center(i);
        return t;
    }

    static std::vector<double> uniform_edges(double t0, double t1, std::size_t bins) {
        if (!(t1 > t0) || bins == 0) throw DomainError("invalid bin range");
        std::vector<double> edges(bins + 1);
        for (std::size_t i = 0; i <= bins; ++i)
            edges[i] = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(bins);
        return edges;
    }
};

}  // namespace qemit
