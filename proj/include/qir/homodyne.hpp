#pragma once

#include <utility>

#include "qir/channel.hpp"
#include "qir/grid.hpp"
#include "qir/source.hpp"

namespace qir {

struct HomodyneConfig {
    double lo_intensity = 1000.0; // reference-field intensity I, shared by all arms
    double phi1 = 1.5707963267948966; // idler LO phase (pi/2 reads out X_D)
    double phi2 = 0.0;                // probe LO phase, common to both probe arms

    void validate() const {
        if (!(lo_intensity > 0.0))
            throw std::invalid_argument("HomodyneConfig: lo_intensity must be > 0");
    }
};

/// Idler-arm photocurrent fluctuation:
///   theta_D = cos(phi1) (sqrt(I) Y_D - sqrt(I_D) Y_lo)
///           + sin(phi1) (sqrt(I) X_D + sqrt(I_D) X_lo).
FluctuationRecord idler_homodyne(const QuadratureRecord& idler, const QuadratureRecord& lo_fluct,
                                 double lo_intensity, double idler_flux, double phi1);

/// Probe-arm pair. With eta = rc.effective_eta, phi = phi_b - phi2:
///   theta_B1 = sqrt(eta/2) { -sin(phi) (sqrt(I) Y_B - sqrt(I_B) Y_lo1)
///                            + cos(phi) (sqrt(I) X_B + sqrt(I_B) X_lo1) }
///            + sqrt((1-eta) I/2) (cos(phi2) X_E + sin(phi2) Y_E)
///            + sqrt(I/2) (cos(phi2) Y_V - sin(phi2) X_V)
///   theta_B2 = sqrt(eta/2) {  cos(phi) (sqrt(I) Y_B - sqrt(I_B) Y_lo2)
///                            + sin(phi) (sqrt(I) X_B + sqrt(I_B) X_lo2) }
///            + sqrt((1-eta) I/2) (cos(phi2) Y_E - sin(phi2) X_E)
///            + sqrt(I/2) (cos(phi2) X_V + sin(phi2) Y_V).
std::pair<FluctuationRecord, FluctuationRecord>
probe_homodyne_pair(const ReceivedComponents& rc, const QuadratureRecord& lo1_fluct,
                    const QuadratureRecord& lo2_fluct, double lo_intensity, double probe_flux,
                    double phi, double phi2);

/// Classical idler arm: theta = sqrt(I * flux_d) * delta(t).
FluctuationRecord classical_idler_homodyne(const std::vector<double>& delta_record,
                                           const ClassicalSourceParams& params,
                                           double lo_intensity, const SimGrid& grid);

/// Classical probe arms: the signal part scales the shared (delayed) phase
/// noise by -sin(phi) resp. cos(phi); environment and vacuum beat terms are
/// identical to the quantum case.
std::pair<FluctuationRecord, FluctuationRecord>
classical_probe_homodyne_pair(const std::vector<double>& delta_delayed, const QuadratureRecord& env,
                              const QuadratureRecord& vac, const ClassicalSourceParams& params,
                              double lo_intensity, double eta, double phi, double phi2);

} // namespace qir
