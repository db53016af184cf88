#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qir {

inline constexpr double k_speed_of_light = 299792458.0; // m/s

/// Uniform time discretization shared by all records of one run.
/// Continuous white noise of spectral strength V maps to a per-bin
/// variance V/dt on this grid.
struct SimGrid {
    double dt = 1.0;          // seconds per bin
    std::size_t n_bins = 0;   // record length

    void validate() const {
        if (!(dt > 0.0)) {
            throw std::invalid_argument("SimGrid: dt must be > 0");
        }
        if (n_bins < 2) {
            throw std::invalid_argument("SimGrid: n_bins must be >= 2");
        }
    }

    bool operator==(const SimGrid& other) const {
        return dt == other.dt && n_bins == other.n_bins;
    }
};

/// Time series of (X, Y) quadrature-fluctuation samples for one optical
/// mode, in the real-sample representation whose second moments equal the
/// symmetrized quantum moments.
struct QuadratureRecord {
    SimGrid grid;
    std::vector<double> x;
    std::vector<double> y;

    static QuadratureRecord zeros(const SimGrid& grid) {
        grid.validate();
        return QuadratureRecord{grid, std::vector<double>(grid.n_bins, 0.0),
                                std::vector<double>(grid.n_bins, 0.0)};
    }
};

/// Photocurrent-fluctuation record produced by one homodyne arm.
struct FluctuationRecord {
    SimGrid grid;
    std::vector<double> theta;

    static FluctuationRecord zeros(const SimGrid& grid) {
        grid.validate();
        return FluctuationRecord{grid, std::vector<double>(grid.n_bins, 0.0)};
    }
};

inline void require_same_grid(const SimGrid& a, const SimGrid& b, const char* what) {
    if (!(a == b)) {
        throw std::invalid_argument(std::string(what) + ": records are on different grids");
    }
}

} // namespace qir
