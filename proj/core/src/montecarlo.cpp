#include "mfunc/montecarlo.hpp"

#include <algorithm>
#include <cmath>

#include "mfunc/core_math.hpp"
#include "mfunc/moments.hpp"
#include "mfunc/parallel.hpp"

namespace mfunc {

SampleBatch sample_batch(const PrimeSet& set, const SymPowerParams& params, std::uint64_t n,
                         std::uint64_t seed, const AngleOverride& override_angle) {
    params.validate();
    set.require_nonempty();
    if (n < 1) throw validation_error("sample_batch: n must be >= 1");

    SampleBatch batch;
    batch.params = params;
    batch.prime_set = set;
    batch.seed = seed;
    batch.n_samples = n;
    batch.values.resize(n);

    const auto& primes = set.primes();
    const double r = static_cast<double>(params.r);
    parallel_for(n, [&](std::size_t i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < primes.size(); ++j) {
            const double theta = override_angle
                                     ? override_angle(i, j)
                                     : sato_tate_sample(seed, i, j).theta;
            sum += script_g_p(r * theta, primes[j], params);
        }
        batch.values[i] = sum;
    });
    return batch;
}

namespace {

// piecewise-linear density integrated from u_min to u (grid units)
class PwlCdf {
public:
    explicit PwlCdf(const DensityGrid& grid) : grid_(grid) {
        cum_.resize(grid.values.size(), 0.0);
        const double du = grid.u_grid.spacing();
        for (std::size_t k = 1; k < cum_.size(); ++k)
            cum_[k] = cum_[k - 1] + 0.5 * (grid.values[k - 1] + grid.values[k]) * du;
    }

    double total() const { return cum_.back(); }

    double operator()(double u) const {
        const auto& g = grid_.u_grid;
        if (u <= g.u_min) return 0.0;
        if (u >= g.u_max) return total();
        const double pos = (u - g.u_min) / g.spacing();
        const auto k = static_cast<std::size_t>(pos);
        const double t = pos - static_cast<double>(k);
        const double v0 = grid_.values[k];
        const double v1 = grid_.values[k + 1];
        // integral of the linear segment up to fraction t
        const double partial = (v0 * t + 0.5 * (v1 - v0) * t * t) * g.spacing();
        return cum_[k] + partial;
    }

private:
    const DensityGrid& grid_;
    std::vector<double> cum_;
};

}  // namespace

DistributionReport empirical_vs_density(const SampleBatch& batch, const DensityGrid& grid,
                                        std::size_t bins_override) {
    if (batch.values.empty()) throw validation_error("empirical_vs_density: empty batch");
    if (grid.values.size() < 8) throw validation_error("empirical_vs_density: degenerate grid");
    if (std::abs(grid.mass - 1.0) > 0.01)
        throw validation_error("empirical_vs_density: density grid not converged (mass=" +
                               std::to_string(grid.mass) + ")");

    const double n = static_cast<double>(batch.values.size());
    std::vector<double> sorted = batch.values;
    std::sort(sorted.begin(), sorted.end());

    std::size_t bins = bins_override;
    if (bins == 0) {
        const double q1 = sorted[static_cast<std::size_t>(0.25 * (n - 1))];
        const double q3 = sorted[static_cast<std::size_t>(0.75 * (n - 1))];
        const double width = 2.0 * (q3 - q1) / std::cbrt(n);
        const double range = grid.u_grid.u_max - grid.u_grid.u_min;
        bins = width > 0 ? static_cast<std::size_t>(std::lround(range / width)) : 64;
        bins = std::clamp<std::size_t>(bins, 16, 4096);
    }

    const double lo = grid.u_grid.u_min, hi = grid.u_grid.u_max;
    const double bin_w = (hi - lo) / static_cast<double>(bins);
    std::vector<double> counts(bins, 0.0);
    std::size_t outside = 0;
    for (double v : batch.values) {
        if (v < lo || v >= hi) {
            ++outside;
            continue;
        }
        auto b = static_cast<std::size_t>((v - lo) / bin_w);
        if (b >= bins) b = bins - 1;
        counts[b] += 1.0;
    }

    PwlCdf cdf(grid);
    const double total_mass = cdf.total();

    DistributionReport rep;
    rep.bins = bins;
    rep.outside_fraction = static_cast<double>(outside) / n;
    rep.l1_distance = rep.outside_fraction;
    for (std::size_t b = 0; b < bins; ++b) {
        const double a = lo + bin_w * static_cast<double>(b);
        const double dens_mass = (cdf(a + bin_w) - cdf(a)) / total_mass;
        rep.l1_distance += std::abs(counts[b] / n - dens_mass);
    }

    for (std::size_t b = 0; b <= bins; ++b) {
        const double edge = lo + bin_w * static_cast<double>(b);
        const auto below = std::lower_bound(sorted.begin(), sorted.end(), edge) - sorted.begin();
        const double ecdf = static_cast<double>(below) / n;
        rep.ks_distance = std::max(rep.ks_distance, std::abs(ecdf - cdf(edge) / total_mass));
    }

    const double mean = pairwise_sum(batch.values) / n;
    std::vector<double> tmp(batch.values.size());
    for (std::size_t i = 0; i < tmp.size(); ++i) tmp[i] = batch.values[i] * batch.values[i];
    const double m2 = pairwise_sum(tmp) / n;
    for (std::size_t i = 0; i < tmp.size(); ++i) tmp[i] = tmp[i] * tmp[i];
    const double m4 = pairwise_sum(tmp) / n;

    const double dens_m1 = power_moment_from_density(grid, 1) / grid.mass;
    const double dens_m2 = power_moment_from_density(grid, 2) / grid.mass;
    rep.mean_gap = mean - dens_m1;
    rep.mean_se = std::sqrt(std::max(0.0, m2 - mean * mean) / n);
    rep.second_gap = m2 - dens_m2;
    rep.second_se = std::sqrt(std::max(0.0, m4 - m2 * m2) / n);
    return rep;
}

CharacteristicReport characteristic_check(const SampleBatch& batch, const FourierTable& table,
                                          std::span<const double> xs) {
    if (!(batch.params == table.params) || !(batch.prime_set == table.prime_set))
        throw validation_error("characteristic_check: batch and table configurations differ");
    CharacteristicReport rep;
    const double n = static_cast<double>(batch.values.size());
    std::vector<double> re(batch.values.size()), im(batch.values.size());
    for (double x : xs) {
        const std::complex<double> expected = table.at_x(x);
        for (std::size_t i = 0; i < batch.values.size(); ++i) {
            re[i] = std::cos(x * batch.values[i]);
            im[i] = std::sin(x * batch.values[i]);
        }
        const std::complex<double> emp{pairwise_sum(re) / n, pairwise_sum(im) / n};
        const double dev = std::abs(emp - expected);
        rep.per_x.emplace_back(x, dev);
        rep.max_deviation = std::max(rep.max_deviation, dev);
    }
    return rep;
}

}  // namespace mfunc
