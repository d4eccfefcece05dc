#include "mfunc/moments.hpp"

#include <cmath>
#include <complex>

#include "mfunc/core_math.hpp"
#include "mfunc/primes.hpp"

namespace mfunc {

double expected_log_single(std::uint64_t p, const SymPowerParams& params) {
    params.validate();
    if (p < 2) throw validation_error("expected_log_single: p must be a prime >= 2");
    const double z = std::pow(static_cast<double>(p), -params.sigma);
    if (!params.even()) return -0.5 * z * z;
    return -std::log1p(-z) - z;
}

FirstMoment first_moment_sum(const PrimeSet& set, const SymPowerParams& params, double scale) {
    // descending: small terms first, and removing the smallest prime then
    // re-adding its term reproduces the full sum bit for bit
    double acc = 0.0;
    const auto& primes = set.primes();
    for (auto it = primes.rbegin(); it != primes.rend(); ++it)
        acc += expected_log_single(*it, params);
    return {scale * acc, 0.0};
}

FirstMoment first_moment_cutoff(std::uint64_t y, std::optional<std::uint64_t> exclude,
                                const SymPowerParams& params, double scale) {
    if (y < 2) throw validation_error("first_moment_cutoff: cutoff must be >= 2");
    FirstMoment m = first_moment_sum(PrimeSet::up_to(y, exclude), params, scale);
    // |term(p)| <= p^{-2 sigma} / (2 (1 - p^{-sigma})) for either parity;
    // bound the prime tail by the integral of t^{-2 sigma}
    const double s = 2.0 * params.sigma - 1.0;
    const double zy = std::pow(static_cast<double>(y), -params.sigma);
    m.tail_bound = std::abs(scale) * std::pow(static_cast<double>(y), -s) /
                   (s * 2.0 * (1.0 - zy));
    return m;
}

double cauchy_vanishing_check(std::uint64_t p, double sigma, int n_panels) {
    if (!(sigma > 0.0) || std::pow(static_cast<double>(p), -sigma) >= 1.0)
        throw validation_error("cauchy_vanishing_check: need p^{-sigma} < 1");
    if (n_panels < 4) throw validation_error("cauchy_vanishing_check: n_panels must be >= 4");
    const double z = std::pow(static_cast<double>(p), -sigma);
    std::complex<double> acc{0.0, 0.0};
    for (int k = 0; k < n_panels; ++k) {
        const double phi = 2.0 * kPi * k / n_panels;
        acc += std::log(1.0 - std::polar(z, phi));
    }
    return std::abs(acc / static_cast<double>(n_panels));
}

double moment_from_density(const DensityGrid& grid, std::span<const double> psi) {
    if (psi.size() != grid.values.size())
        throw validation_error("moment_from_density: psi must be sampled on the grid (" +
                               std::to_string(psi.size()) + " vs " +
                               std::to_string(grid.values.size()) + " points)");
    const double du = grid.u_grid.spacing();
    double acc = 0.0;
    for (std::size_t k = 0; k < psi.size(); ++k) {
        const double w = (k == 0 || k + 1 == psi.size()) ? 0.5 : 1.0;
        acc += w * grid.values[k] * psi[k];
    }
    return acc * du / kSqrt2Pi;
}

double power_moment_from_density(const DensityGrid& grid, int k) {
    std::vector<double> psi(grid.values.size());
    for (int i = 0; i < grid.u_grid.n; ++i)
        psi[static_cast<std::size_t>(i)] = std::pow(grid.u_grid.point(i), k);
    return moment_from_density(grid, psi);
}

}  // namespace mfunc
