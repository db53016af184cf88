// Benchmark comparing the serial reference kernels against the OpenMP ones:
// record sampling (per-bin counter RNG) and the correlator lag scan.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include <omp.h>

#include "qir/correlator.hpp"
#include "qir/rng.hpp"
#include "qir/source.hpp"

using namespace qir;

namespace {

double time_once(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double time_best_of(int reps, const std::function<void()>& fn) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) best = std::min(best, time_once(fn));
    return best;
}

} // namespace

int main() {
    const int max_threads = omp_get_max_threads();
    std::printf("threads available: %d\n\n", max_threads);

    std::printf("%-28s %-12s %10s %10s %8s\n", "kernel", "size", "serial_s", "parallel_s",
                "speedup");

    for (const std::size_t n : {std::size_t{1} << 18, std::size_t{1} << 21}) {
        const SimGrid grid{1.0, n};
        const SourceCovariance cov = tmsv_covariance({1.0, 1.0, 1.0});

        omp_set_num_threads(1);
        const double t_serial =
            time_best_of(3, [&] { (void)sample_entangled_records(cov, grid, 7); });
        omp_set_num_threads(max_threads);
        const double t_parallel =
            time_best_of(3, [&] { (void)sample_entangled_records(cov, grid, 7); });
        std::printf("%-28s %-12zu %10.4f %10.4f %8.2f\n", "sample_entangled_records", n, t_serial,
                    t_parallel, t_serial / t_parallel);
    }

    for (const std::size_t n : {std::size_t{1} << 18, std::size_t{1} << 21}) {
        const SimGrid grid{1.0, n};
        FluctuationRecord a = FluctuationRecord::zeros(grid);
        FluctuationRecord b = FluctuationRecord::zeros(grid);
        fill_normal(a.theta, 11, 1.0);
        fill_normal(b.theta, 13, 1.0);
        const std::size_t max_lag = 256;

        omp_set_num_threads(max_threads);
        const double t_serial =
            time_best_of(3, [&] { (void)cross_correlate_serial(a, b, max_lag); });
        const double t_parallel = time_best_of(3, [&] { (void)cross_correlate(a, b, max_lag); });
        std::printf("%-28s %-12zu %10.4f %10.4f %8.2f\n", "cross_correlate", n, t_serial,
                    t_parallel, t_serial / t_parallel);

        // Bit-exactness of the parallel scan against the reference.
        const LagCorrelation ref = cross_correlate_serial(a, b, max_lag);
        const LagCorrelation par = cross_correlate(a, b, max_lag);
        bool identical = ref.value == par.value && ref.se == par.se;
        std::printf("%-28s %-12zu %s\n", "  parallel == serial", n,
                    identical ? "bit-identical" : "MISMATCH");
    }

    return 0;
}
