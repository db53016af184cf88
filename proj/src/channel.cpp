#include "qir/channel.hpp"

#include <algorithm>

#include "qir/source.hpp"

namespace qir {

std::vector<double> delay_samples(std::vector<double> v, std::size_t delay_bins) {
    const std::size_t n = v.size();
    if (delay_bins >= n) {
        throw std::invalid_argument("delay: delay_bins must be < n_bins");
    }
    if (delay_bins == 0) return v;
    std::move_backward(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n - delay_bins), v.end());
    std::fill(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(delay_bins), 0.0);
    return v;
}

QuadratureRecord delay_record(QuadratureRecord rec, std::size_t delay_bins) {
    rec.x = delay_samples(std::move(rec.x), delay_bins);
    rec.y = delay_samples(std::move(rec.y), delay_bins);
    return rec;
}

ReceivedComponents prepare_received_components(QuadratureRecord probe, const ChannelParams& params,
                                               const SimGrid& grid, const ChannelSeeds& seeds) {
    params.validate();
    grid.validate();
    require_same_grid(probe.grid, grid, "prepare_received_components");
    if (params.delay_bins >= grid.n_bins) {
        throw std::invalid_argument("prepare_received_components: delay_bins must be < n_bins");
    }

    ReceivedComponents rc;
    rc.probe_delayed = delay_record(std::move(probe), params.delay_bins);
    rc.env = sample_thermal_record(params.env_occupancy, grid, seeds.env);
    rc.vac = sample_vacuum_record(grid, seeds.vac);
    rc.effective_eta = params.target_present ? params.eta : 0.0;
    rc.phi_b = params.phi_b;
    return rc;
}

} // namespace qir
