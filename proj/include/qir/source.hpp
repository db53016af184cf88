#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "qir/grid.hpp"

namespace qir {

/// 4x4 symmetric covariance over (X_B, Y_B, X_D, Y_D), in units of spectral
/// correlation strength. Per-bin sampling covariance is m/dt.
struct SourceCovariance {
    std::array<double, 16> m{}; // row-major

    double operator()(int i, int j) const { return m[static_cast<std::size_t>(4 * i + j)]; }
    double& operator()(int i, int j) { return m[static_cast<std::size_t>(4 * i + j)]; }

    static SourceCovariance zero() { return SourceCovariance{}; }

    bool is_symmetric(double tol = 1e-12) const;

    // Covariance-density entries used by the analytic predictors.
    double c_xx() const { return (*this)(2, 0); } // <X_D X_B>
    double c_xy() const { return (*this)(2, 1); } // <X_D Y_B>
    double c_yx() const { return (*this)(3, 0); } // <Y_D X_B>
    double c_yy() const { return (*this)(3, 1); } // <Y_D Y_B>
};

struct SqueezedSourceParams {
    double r = 1.0;       // squeeze parameter
    double flux_b = 1.0;  // probe photon flux I_B (photons/s)
    double flux_d = 1.0;  // idler photon flux I_D (photons/s)

    void validate() const {
        if (!(r >= 0.0)) throw std::invalid_argument("SqueezedSourceParams: r must be >= 0");
        if (!(flux_b >= 0.0) || !(flux_d >= 0.0))
            throw std::invalid_argument("SqueezedSourceParams: fluxes must be >= 0");
    }
};

struct ClassicalSourceParams {
    double d_strength = 0.1; // phase-noise correlation strength
    double flux_b = 1.0;     // classical intensity (Hz)
    double flux_d = 1.0;     // classical intensity (Hz)

    void validate() const {
        if (!(d_strength >= 0.0 && d_strength < 1.0))
            throw std::invalid_argument("ClassicalSourceParams: d_strength must be in [0, 1)");
        if (!(flux_b >= 0.0) || !(flux_d >= 0.0))
            throw std::invalid_argument("ClassicalSourceParams: fluxes must be >= 0");
    }
};

/// Two-mode squeezed covariance with the standard convention for
/// X = delta + delta^dag, Y = i(delta^dag - delta):
/// Var = cosh 2r on the diagonal, <X_B X_D> = sinh 2r, <Y_B Y_D> = -sinh 2r.
SourceCovariance tmsv_covariance(const SqueezedSourceParams& params);

/// Draws one independent 4-vector per bin from N(0, m/dt).
/// Throws std::invalid_argument if the covariance is not PSD.
std::pair<QuadratureRecord, QuadratureRecord>
sample_entangled_records(const SourceCovariance& cov, const SimGrid& grid, std::uint64_t seed);

/// Phase-insensitive thermal record: Var(X) = Var(Y) = (2*occupancy + 1)/dt.
QuadratureRecord sample_thermal_record(double occupancy, const SimGrid& grid, std::uint64_t seed);

/// Vacuum-level record: thermal with occupancy 0.
QuadratureRecord sample_vacuum_record(const SimGrid& grid, std::uint64_t seed);

/// Common phase-noise record for the classical baseline, per-bin variance
/// d_strength/dt. The same record must be fed to both classical arms.
std::vector<double> sample_phase_noise_record(const ClassicalSourceParams& params,
                                              const SimGrid& grid, std::uint64_t seed);

/// Fraction of samples with |delta| >= 1, i.e. outside the small-angle regime.
double large_angle_fraction(const std::vector<double>& delta);

/// Lower-triangular factor L with L L^T = cov, tolerant of PSD inputs
/// (zero diagonal blocks allowed). Throws on indefinite input.
std::array<double, 16> psd_cholesky(const SourceCovariance& cov);

} // namespace qir
