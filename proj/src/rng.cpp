#include "qir/rng.hpp"

#include <cmath>
#include <numbers>

namespace qir {

std::uint64_t derive_stream(std::uint64_t master_seed, std::uint64_t trial_index, Stream stream) {
    return mix64(mix64(mix64(master_seed) ^ trial_index) ^ static_cast<std::uint64_t>(stream));
}

std::uint64_t null_calibration_seed(std::uint64_t master_seed) {
    return mix64(master_seed ^ 0x6e756c6c63616c00ull); // "nulcal" tag
}

void CounterRng::normal_pair(std::uint64_t p, double& z0, double& z1) const {
    const double u1 = uniform(2 * p);
    const double u2 = uniform(2 * p + 1);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    z0 = r * std::cos(a);
    z1 = r * std::sin(a);
}

void fill_normal(std::span<double> out, std::uint64_t key, double sd) {
    const CounterRng rng{key};
    const std::int64_t n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        double z0, z1;
        rng.normal_pair(static_cast<std::uint64_t>(i), z0, z1);
        out[static_cast<std::size_t>(i)] = sd * z0;
    }
}

void fill_normal2(std::span<double> out_a, std::span<double> out_b, std::uint64_t key,
                  double sd_a, double sd_b) {
    const CounterRng rng{key};
    const std::int64_t n = static_cast<std::int64_t>(out_a.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        double z0, z1;
        rng.normal_pair(static_cast<std::uint64_t>(i), z0, z1);
        out_a[static_cast<std::size_t>(i)] = sd_a * z0;
        out_b[static_cast<std::size_t>(i)] = sd_b * z1;
    }
}

} // namespace qir
