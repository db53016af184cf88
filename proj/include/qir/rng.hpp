#pragma once

#include <cstdint>
#include <span>

namespace qir {

/// splitmix64 finalizer step. Used both as the seed-derivation hash and as
/// the per-counter generator, so every draw is a pure function of
/// (key, counter) and results do not depend on thread scheduling.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Independent noise streams feeding one trial.
enum class Stream : std::uint64_t {
    Source = 1,
    Env = 2,
    Vac = 3,
    Lo1 = 4,
    Lo2 = 5,
    Lo3 = 6,
};

/// Published seed derivation: key = mix64(mix64(mix64(master) ^ trial) ^ stream).
/// Fixed for the life of the file formats; golden values are pinned in tests.
std::uint64_t derive_stream(std::uint64_t master_seed, std::uint64_t trial_index, Stream stream);

/// Salts the master seed for null-calibration runs so calibration trials are
/// independent of measurement trials that share the same master seed.
std::uint64_t null_calibration_seed(std::uint64_t master_seed);

/// Stateless counter-based generator: draw i is a function of (key, i) only.
struct CounterRng {
    std::uint64_t key = 0;

    /// Uniform double in the open interval (0, 1).
    double uniform(std::uint64_t ctr) const {
        const std::uint64_t bits = mix64(key ^ mix64(ctr));
        return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Box-Muller pair of independent standard normals for pair index p.
    void normal_pair(std::uint64_t p, double& z0, double& z1) const;
};

/// Fills out with independent N(0, sd^2) samples, sample i depending only on
/// (key, i). Parallelized; bit-identical for any thread count.
void fill_normal(std::span<double> out, std::uint64_t key, double sd);

/// As fill_normal but fills two channels from one pair stream per bin.
void fill_normal2(std::span<double> out_a, std::span<double> out_b, std::uint64_t key,
                  double sd_a, double sd_b);

} // namespace qir
