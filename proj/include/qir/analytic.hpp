#pragma once

#include "qir/source.hpp"

namespace qir {

/// Predicted peak of the detection statistic in correlation-density^2 units.
/// The Monte Carlo estimate at the matched lag equals value/dt^2 plus the
/// squared-estimator bias.
struct StatisticPrediction {
    double value = 0.0;    // (eta/2) I^2 { quad_y cos^2(phi1) + quad_x sin^2(phi1) + cross sin(2 phi1) }
    double quad_y = 0.0;   // C_yy^2 + C_yx^2
    double quad_x = 0.0;   // C_xy^2 + C_xx^2
    double cross = 0.0;    // C_yy C_xy + C_yx C_xx
    double prefactor = 0.0; // (eta/2) I^2
};

enum class PeakConvention {
    Paper,    // amplitude sinh(r): reporting-only value quoted from the source model
    Standard, // amplitude sinh(2r): consistent with tmsv_covariance
};

/// General idler-LO-phase statistic. The propagation phase phi cancels
/// identically and is accepted only for interface symmetry.
StatisticPrediction predicted_statistic_general(double eta, double lo_intensity,
                                                const SourceCovariance& cov, double phi,
                                                double phi1);

/// Quantum peak (eta/2) I^2 sinh^2(r) or (eta/2) I^2 sinh^2(2r).
double predicted_quantum_peak(double eta, double lo_intensity, double r,
                              PeakConvention convention);

/// Classical peak (eta/2) I^2 flux_d flux_b d_strength^2.
double predicted_classical_peak(double eta, double lo_intensity, double flux_b_cl,
                                double flux_d_cl, double d_strength);

/// Reflectivity floor 2 / I^2 for confident detection.
double min_detectable_eta(double lo_intensity);

/// Y-quadrature baseline C_yy^2 + C_yx^2 used by the fixed-threshold
/// detection policy.
double y_baseline_density(const SourceCovariance& cov);

/// DC offset of the idler intensity difference, 2 sqrt(I_D I) sin(phi1).
/// Dropped from fluctuation records; reported here for completeness.
double idler_dc_offset(double idler_flux, double lo_intensity, double phi1);

} // namespace qir
