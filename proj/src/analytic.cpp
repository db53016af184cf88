#include "qir/analytic.hpp"

#include <cmath>

namespace qir {

StatisticPrediction predicted_statistic_general(double eta, double lo_intensity,
                                                const SourceCovariance& cov, double phi,
                                                double phi1) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("predicted_statistic_general: eta must be in [0, 1]");
    }
    if (!(lo_intensity >= 0.0)) {
        throw std::invalid_argument("predicted_statistic_general: lo_intensity must be >= 0");
    }
    (void)phi; // cancels identically in the statistic

    const double c_xx = cov.c_xx();
    const double c_xy = cov.c_xy();
    const double c_yx = cov.c_yx();
    const double c_yy = cov.c_yy();

    StatisticPrediction p;
    p.quad_y = c_yy * c_yy + c_yx * c_yx;
    p.quad_x = c_xy * c_xy + c_xx * c_xx;
    p.cross = c_yy * c_xy + c_yx * c_xx;
    p.prefactor = 0.5 * eta * lo_intensity * lo_intensity;
    const double cp = std::cos(phi1);
    const double sp = std::sin(phi1);
    p.value = p.prefactor * (p.quad_y * cp * cp + p.quad_x * sp * sp + p.cross * std::sin(2.0 * phi1));
    return p;
}

double predicted_quantum_peak(double eta, double lo_intensity, double r,
                              PeakConvention convention) {
    if (!(r >= 0.0)) {
        throw std::invalid_argument("predicted_quantum_peak: r must be >= 0");
    }
    const double amp = convention == PeakConvention::Paper ? std::sinh(r) : std::sinh(2.0 * r);
    return 0.5 * eta * lo_intensity * lo_intensity * amp * amp;
}

double predicted_classical_peak(double eta, double lo_intensity, double flux_b_cl,
                                double flux_d_cl, double d_strength) {
    return 0.5 * eta * lo_intensity * lo_intensity * flux_d_cl * flux_b_cl * d_strength *
           d_strength;
}

double min_detectable_eta(double lo_intensity) {
    if (!(lo_intensity > 0.0)) {
        throw std::invalid_argument("min_detectable_eta: lo_intensity must be > 0");
    }
    return 2.0 / (lo_intensity * lo_intensity);
}

double y_baseline_density(const SourceCovariance& cov) {
    return cov.c_yy() * cov.c_yy() + cov.c_yx() * cov.c_yx();
}

double idler_dc_offset(double idler_flux, double lo_intensity, double phi1) {
    return 2.0 * std::sqrt(idler_flux * lo_intensity) * std::sin(phi1);
}

} // namespace qir
