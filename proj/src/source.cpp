#include "qir/source.hpp"

#include <algorithm>
#include <cmath>

#include "qir/rng.hpp"

namespace qir {

bool SourceCovariance::is_symmetric(double tol) const {
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
        }
    }
    return true;
}

SourceCovariance tmsv_covariance(const SqueezedSourceParams& params) {
    params.validate();
    const double c = std::cosh(2.0 * params.r);
    const double s = std::sinh(2.0 * params.r);
    SourceCovariance cov;
    cov(0, 0) = c;
    cov(1, 1) = c;
    cov(2, 2) = c;
    cov(3, 3) = c;
    cov(0, 2) = s;
    cov(2, 0) = s;
    cov(1, 3) = -s;
    cov(3, 1) = -s;
    return cov;
}

std::array<double, 16> psd_cholesky(const SourceCovariance& cov) {
    if (!cov.is_symmetric(1e-9)) {
        throw std::invalid_argument("SourceCovariance: matrix is not symmetric");
    }
    double scale = 0.0;
    for (int i = 0; i < 4; ++i) scale = std::max(scale, std::abs(cov(i, i)));
    const double tol = 1e-10 * std::max(1.0, scale);

    std::array<double, 16> l{};
    auto at = [&l](int i, int j) -> double& { return l[static_cast<std::size_t>(4 * i + j)]; };

    for (int j = 0; j < 4; ++j) {
        double d = cov(j, j);
        for (int k = 0; k < j; ++k) d -= at(j, k) * at(j, k);
        if (d > tol) {
            at(j, j) = std::sqrt(d);
            for (int i = j + 1; i < 4; ++i) {
                double off = cov(i, j);
                for (int k = 0; k < j; ++k) off -= at(i, k) * at(j, k);
                at(i, j) = off / at(j, j);
            }
        } else if (d > -tol) {
            // Zero pivot: PSD only if the rest of the column vanishes too.
            at(j, j) = 0.0;
            for (int i = j + 1; i < 4; ++i) {
                double off = cov(i, j);
                for (int k = 0; k < j; ++k) off -= at(i, k) * at(j, k);
                if (std::abs(off) > tol) {
                    throw std::invalid_argument("SourceCovariance: matrix is not PSD");
                }
                at(i, j) = 0.0;
            }
        } else {
            throw std::invalid_argument("SourceCovariance: matrix is not PSD");
        }
    }
    return l;
}

std::pair<QuadratureRecord, QuadratureRecord>
sample_entangled_records(const SourceCovariance& cov, const SimGrid& grid, std::uint64_t seed) {
    grid.validate();
    const std::array<double, 16> lf = psd_cholesky(cov);
    const double inv_sqrt_dt = 1.0 / std::sqrt(grid.dt);
    std::array<double, 16> l{};
    for (std::size_t i = 0; i < 16; ++i) l[i] = lf[i] * inv_sqrt_dt;

    QuadratureRecord b = QuadratureRecord::zeros(grid);
    QuadratureRecord d = QuadratureRecord::zeros(grid);
    const CounterRng rng{seed};
    const std::int64_t n = static_cast<std::int64_t>(grid.n_bins);

#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < n; ++t) {
        const std::uint64_t p = 2 * static_cast<std::uint64_t>(t);
        double z0, z1, z2, z3;
        rng.normal_pair(p, z0, z1);
        rng.normal_pair(p + 1, z2, z3);
        const auto i = static_cast<std::size_t>(t);
        b.x[i] = l[0] * z0;
        b.y[i] = l[4] * z0 + l[5] * z1;
        d.x[i] = l[8] * z0 + l[9] * z1 + l[10] * z2;
        d.y[i] = l[12] * z0 + l[13] * z1 + l[14] * z2 + l[15] * z3;
    }
    return {std::move(b), std::move(d)};
}

QuadratureRecord sample_thermal_record(double occupancy, const SimGrid& grid, std::uint64_t seed) {
    if (!(occupancy >= 0.0)) {
        throw std::invalid_argument("sample_thermal_record: occupancy must be >= 0");
    }
    grid.validate();
    QuadratureRecord rec = QuadratureRecord::zeros(grid);
    const double sd = std::sqrt((2.0 * occupancy + 1.0) / grid.dt);
    fill_normal2(rec.x, rec.y, seed, sd, sd);
    return rec;
}

QuadratureRecord sample_vacuum_record(const SimGrid& grid, std::uint64_t seed) {
    return sample_thermal_record(0.0, grid, seed);
}

std::vector<double> sample_phase_noise_record(const ClassicalSourceParams& params,
                                              const SimGrid& grid, std::uint64_t seed) {
    params.validate();
    grid.validate();
    std::vector<double> delta(grid.n_bins, 0.0);
    if (params.d_strength > 0.0) {
        fill_normal(delta, seed, std::sqrt(params.d_strength / grid.dt));
    }
    return delta;
}

double large_angle_fraction(const std::vector<double>& delta) {
    if (delta.empty()) return 0.0;
    const auto count = std::count_if(delta.begin(), delta.end(),
                                     [](double v) { return std::abs(v) >= 1.0; });
    return static_cast<double>(count) / static_cast<double>(delta.size());
}

} // namespace qir
