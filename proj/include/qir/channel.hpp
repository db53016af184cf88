#pragma once

#include <cstdint>
#include <vector>

#include "qir/grid.hpp"

namespace qir {

struct ChannelParams {
    double eta = 0.01;            // target reflectivity
    std::size_t delay_bins = 0;   // round-trip delay
    double phi_b = 0.0;           // propagation phase (radians)
    double env_occupancy = 0.0;   // environment mean photon number N_E
    bool target_present = true;

    void validate() const {
        if (!(eta >= 0.0 && eta <= 1.0))
            throw std::invalid_argument("ChannelParams: eta must be in [0, 1]");
        if (!(env_occupancy >= 0.0))
            throw std::invalid_argument("ChannelParams: env_occupancy must be >= 0");
    }
};

/// Component records aligned at the receiver, ready for the probe homodynes.
struct ReceivedComponents {
    QuadratureRecord probe_delayed;
    QuadratureRecord env;
    QuadratureRecord vac;
    double effective_eta = 0.0;
    double phi_b = 0.0;
};

struct ChannelSeeds {
    std::uint64_t env = 0;
    std::uint64_t vac = 0;
};

/// Shifts a record by delay_bins (zero-padded head): out[n] = in[n - delay].
QuadratureRecord delay_record(QuadratureRecord rec, std::size_t delay_bins);

/// Same reindexing for a bare sample array (classical phase-noise record).
std::vector<double> delay_samples(std::vector<double> v, std::size_t delay_bins);

/// Applies the target interaction: delays the probe, samples fresh
/// environment and vacuum records, and resolves the effective reflectivity
/// (0 when no target is present).
ReceivedComponents prepare_received_components(QuadratureRecord probe, const ChannelParams& params,
                                               const SimGrid& grid, const ChannelSeeds& seeds);

} // namespace qir
