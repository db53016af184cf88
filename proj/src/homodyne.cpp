#include "qir/homodyne.hpp"

#include <cmath>

namespace qir {

FluctuationRecord idler_homodyne(const QuadratureRecord& idler, const QuadratureRecord& lo_fluct,
                                 double lo_intensity, double idler_flux, double phi1) {
    require_same_grid(idler.grid, lo_fluct.grid, "idler_homodyne");
    if (!(lo_intensity > 0.0)) {
        throw std::invalid_argument("idler_homodyne: lo_intensity must be > 0");
    }
    if (!(idler_flux >= 0.0)) {
        throw std::invalid_argument("idler_homodyne: idler_flux must be >= 0");
    }

    const double c1 = std::cos(phi1);
    const double s1 = std::sin(phi1);
    const double sq_i = std::sqrt(lo_intensity);
    const double sq_id = std::sqrt(idler_flux);

    FluctuationRecord out = FluctuationRecord::zeros(idler.grid);
    const std::int64_t n = static_cast<std::int64_t>(idler.grid.n_bins);
#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < n; ++t) {
        const auto i = static_cast<std::size_t>(t);
        out.theta[i] = c1 * (sq_i * idler.y[i] - sq_id * lo_fluct.y[i]) +
                       s1 * (sq_i * idler.x[i] + sq_id * lo_fluct.x[i]);
    }
    return out;
}

std::pair<FluctuationRecord, FluctuationRecord>
probe_homodyne_pair(const ReceivedComponents& rc, const QuadratureRecord& lo1_fluct,
                    const QuadratureRecord& lo2_fluct, double lo_intensity, double probe_flux,
                    double phi, double phi2) {
    const SimGrid& grid = rc.probe_delayed.grid;
    require_same_grid(grid, rc.env.grid, "probe_homodyne_pair");
    require_same_grid(grid, rc.vac.grid, "probe_homodyne_pair");
    require_same_grid(grid, lo1_fluct.grid, "probe_homodyne_pair");
    require_same_grid(grid, lo2_fluct.grid, "probe_homodyne_pair");
    const double eta = rc.effective_eta;
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("probe_homodyne_pair: effective_eta must be in [0, 1]");
    }
    if (!(lo_intensity > 0.0)) {
        throw std::invalid_argument("probe_homodyne_pair: lo_intensity must be > 0");
    }

    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const double c2 = std::cos(phi2);
    const double s2 = std::sin(phi2);
    const double sq_i = std::sqrt(lo_intensity);
    const double sq_ib = std::sqrt(probe_flux);
    const double w_sig = std::sqrt(eta / 2.0);
    const double w_env = std::sqrt((1.0 - eta) * lo_intensity / 2.0);
    const double w_vac = std::sqrt(lo_intensity / 2.0);

    FluctuationRecord t1 = FluctuationRecord::zeros(grid);
    FluctuationRecord t2 = FluctuationRecord::zeros(grid);
    const std::int64_t n = static_cast<std::int64_t>(grid.n_bins);
#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < n; ++t) {
        const auto i = static_cast<std::size_t>(t);
        const double xb = rc.probe_delayed.x[i];
        const double yb = rc.probe_delayed.y[i];
        const double xe = rc.env.x[i];
        const double ye = rc.env.y[i];
        const double xv = rc.vac.x[i];
        const double yv = rc.vac.y[i];

        t1.theta[i] = w_sig * (-s * (sq_i * yb - sq_ib * lo1_fluct.y[i]) +
                               c * (sq_i * xb + sq_ib * lo1_fluct.x[i])) +
                      w_env * (c2 * xe + s2 * ye) + w_vac * (c2 * yv - s2 * xv);

        t2.theta[i] = w_sig * (c * (sq_i * yb - sq_ib * lo2_fluct.y[i]) +
                               s * (sq_i * xb + sq_ib * lo2_fluct.x[i])) +
                      w_env * (c2 * ye - s2 * xe) + w_vac * (c2 * xv + s2 * yv);
    }
    return {std::move(t1), std::move(t2)};
}

FluctuationRecord classical_idler_homodyne(const std::vector<double>& delta_record,
                                           const ClassicalSourceParams& params,
                                           double lo_intensity, const SimGrid& grid) {
    params.validate();
    grid.validate();
    if (delta_record.size() != grid.n_bins) {
        throw std::invalid_argument("classical_idler_homodyne: record length mismatch");
    }
    const double w = std::sqrt(lo_intensity * params.flux_d);
    FluctuationRecord out = FluctuationRecord::zeros(grid);
    const std::int64_t n = static_cast<std::int64_t>(grid.n_bins);
#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < n; ++t) {
        const auto i = static_cast<std::size_t>(t);
        out.theta[i] = w * delta_record[i];
    }
    return out;
}

std::pair<FluctuationRecord, FluctuationRecord>
classical_probe_homodyne_pair(const std::vector<double>& delta_delayed, const QuadratureRecord& env,
                              const QuadratureRecord& vac, const ClassicalSourceParams& params,
                              double lo_intensity, double eta, double phi, double phi2) {
    params.validate();
    const SimGrid& grid = env.grid;
    require_same_grid(grid, vac.grid, "classical_probe_homodyne_pair");
    if (delta_delayed.size() != grid.n_bins) {
        throw std::invalid_argument("classical_probe_homodyne_pair: record length mismatch");
    }
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("classical_probe_homodyne_pair: eta must be in [0, 1]");
    }

    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const double c2 = std::cos(phi2);
    const double s2 = std::sin(phi2);
    const double w_sig = std::sqrt(eta / 2.0) * std::sqrt(lo_intensity * params.flux_b);
    const double w_env = std::sqrt((1.0 - eta) * lo_intensity / 2.0);
    const double w_vac = std::sqrt(lo_intensity / 2.0);

    FluctuationRecord t1 = FluctuationRecord::zeros(grid);
    FluctuationRecord t2 = FluctuationRecord::zeros(grid);
    const std::int64_t n = static_cast<std::int64_t>(grid.n_bins);
#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < n; ++t) {
        const auto i = static_cast<std::size_t>(t);
        const double d = delta_delayed[i];
        const double xe = env.x[i];
        const double ye = env.y[i];
        const double xv = vac.x[i];
        const double yv = vac.y[i];

        t1.theta[i] = -s * w_sig * d + w_env * (c2 * xe + s2 * ye) + w_vac * (c2 * yv - s2 * xv);
        t2.theta[i] = c * w_sig * d + w_env * (c2 * ye - s2 * xe) + w_vac * (c2 * xv + s2 * yv);
    }
    return {std::move(t1), std::move(t2)};
}

} // namespace qir
