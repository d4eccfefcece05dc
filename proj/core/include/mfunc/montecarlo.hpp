#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mfunc/density.hpp"
#include "mfunc/fourier.hpp"
#include "mfunc/types.hpp"

namespace mfunc {

/// Draws of the truncated log L value under the product Sato-Tate law.
/// Reproducible: the same (seed, primes, params, n) gives identical values
/// for any thread count.
struct SampleBatch {
    SymPowerParams params;
    PrimeSet prime_set;
    std::uint64_t seed = 0;
    std::uint64_t n_samples = 0;
    std::vector<double> values;
};

/// Test hook: when set, returns the Sato-Tate angle to use for
/// (sample index, prime index) instead of the RNG draw.
using AngleOverride = std::function<double(std::uint64_t sample, std::size_t prime_index)>;

SampleBatch sample_batch(const PrimeSet& set, const SymPowerParams& params, std::uint64_t n,
                         std::uint64_t seed, const AngleOverride& override_angle = {});

struct DistributionReport {
    double l1_distance = 0.0;
    double ks_distance = 0.0;
    double mean_gap = 0.0;   // empirical mean - density first moment
    double mean_se = 0.0;    // CLT standard error of the empirical mean
    double second_gap = 0.0; // same for the second moment
    double second_se = 0.0;
    std::size_t bins = 0;
    double outside_fraction = 0.0;  // samples falling off the grid
};

/// Histogram-vs-density comparison on the grid's range. Bin count follows
/// Freedman-Diaconis unless overridden; density bin masses integrate the
/// piecewise-linear interpolant, never midpoint samples.
DistributionReport empirical_vs_density(const SampleBatch& batch, const DensityGrid& grid,
                                        std::size_t bins_override = 0);

struct CharacteristicReport {
    double max_deviation = 0.0;
    std::vector<std::pair<double, double>> per_x;  // (x, |empirical - table|)
};

/// Empirical characteristic function against the Fourier table at the given
/// x values (each must be a table grid node).
CharacteristicReport characteristic_check(const SampleBatch& batch, const FourierTable& table,
                                          std::span<const double> xs);

}  // namespace mfunc
