#include "mfunc/fourier.hpp"

#include <cmath>
#include <limits>

#include "mfunc/core_math.hpp"
#include "mfunc/parallel.hpp"

namespace mfunc {

std::complex<double> FourierTable::at_x(double x) const {
    return values.at(static_cast<std::size_t>(index_of(x)));
}

int FourierTable::index_of(double x) const {
    const double pos = (x - x_grid.min()) / x_grid.spacing();
    const int k = static_cast<int>(std::lround(pos));
    if (k < 0 || k >= x_grid.n || std::abs(x_grid.point(k) - x) > 1e-9 * std::max(1.0, std::abs(x)))
        throw validation_error("FourierTable: x=" + std::to_string(x) + " is not a grid node");
    return k;
}

std::complex<double> fourier_factor(const FourierFactorSpec& spec, double x) {
    spec.validate();
    const double r = static_cast<double>(spec.params.r);
    auto integrand = [&](double theta) {
        const double f = script_g_p(theta, spec.p, spec.params);
        const double s = std::sin(theta / r);
        return std::polar(s * s, x * f);
    };
    const GRange range = script_g_range(spec.p, spec.params);
    const double phase_span = std::abs(x) * (range.hi - range.lo);
    QuadConfig cfg;
    cfg.abs_tol = spec.quad_tol * kPi / 2.0;
    cfg.max_intervals = spec.quad_max_subdiv;
    cfg.initial_panels = static_cast<int>(std::min(4096.0, std::ceil(phase_span / kPi))) + 1;
    auto out = integrate_gk(integrand, 0.0, kPi, cfg);
    return out.value * (2.0 / kPi);
}

namespace {

// measured x-decay metadata: the largest |value| over the outer 2% of the
// grid, and the |x| where that window starts
void record_x_tail(FourierTable& table) {
    const int n = table.x_grid.n;
    const int window = std::max(1, n / 50);
    double worst = 0.0;
    for (int k = 0; k < window; ++k) {
        worst = std::max(worst, std::abs(table.values[static_cast<std::size_t>(k)]));
        worst = std::max(worst, std::abs(table.values[static_cast<std::size_t>(n - 1 - k)]));
    }
    table.tail_tol = worst;
    table.tail_bound_x = std::abs(table.x_grid.point(window - 1));
}

}  // namespace

FourierTable fourier_product(const PrimeSet& set, const SymPowerParams& params,
                             const XGrid& grid, double quad_tol, int quad_max_subdiv) {
    params.validate();
    params.require_density_degree();
    set.require_nonempty();
    grid.validate();

    FourierTable table;
    table.params = params;
    table.prime_set = set;
    table.x_grid = grid;
    table.values.assign(static_cast<std::size_t>(grid.n), {0.0, 0.0});
    table.tail_y = static_cast<double>(set.primes().back());
    table.tail_bound = 0.0;

    const int zero = grid.zero_index();
    const std::size_t upper = static_cast<std::size_t>(grid.n - zero);
    parallel_for(upper, [&](std::size_t i) {
        const int k = zero + static_cast<int>(i);
        const double x = grid.point(k);
        std::complex<double> prod{1.0, 0.0};
        for (std::uint64_t p : set.primes()) {
            FourierFactorSpec spec(params, p, quad_tol, quad_max_subdiv);
            prod *= fourier_factor(spec, x);
        }
        table.values[static_cast<std::size_t>(k)] = prod;
        table.values[static_cast<std::size_t>(2 * zero - k)] = std::conj(prod);
    });

    record_x_tail(table);
    return table;
}

double euler_tail_bound(double x_abs_max, double sigma, double y) {
    const double s = 2.0 * sigma - 1.0;
    return kNear1K * (x_abs_max + x_abs_max * x_abs_max) * std::pow(y, -s) / s;
}

std::uint64_t required_cutoff(double x_abs_max, double sigma, double tol) {
    if (!(tol > 0)) throw validation_error("required_cutoff: tolerance must be > 0");
    const double s = 2.0 * sigma - 1.0;
    const double lead = kNear1K * (x_abs_max + x_abs_max * x_abs_max);
    if (lead == 0.0) return 11;
    const double y = std::pow(lead / (s * tol), 1.0 / s);
    if (y > 1e18) return std::numeric_limits<std::uint64_t>::max();
    // never truncate below the fitted range of kNear1K
    return std::max<std::uint64_t>(11, static_cast<std::uint64_t>(std::ceil(y)));
}

FourierTable fourier_limit(const SymPowerParams& params, const XGrid& grid,
                           const LimitOptions& opts) {
    params.validate();
    params.require_density_degree();
    grid.validate();
    if (!(opts.target_tol > 0))
        throw validation_error("fourier_limit: target_tol must be > 0");

    const std::uint64_t y = required_cutoff(grid.x_max, params.sigma, opts.target_tol);
    if (y > opts.prime_budget) {
        throw numerical_error(
            "fourier_limit: tail bound needs primes up to y=" + std::to_string(y) +
                " (budget " + std::to_string(opts.prime_budget) + "); sigma=" +
                std::to_string(params.sigma) + " too close to 1/2 for target_tol=" +
                std::to_string(opts.target_tol),
            static_cast<double>(y));
    }

    FourierTable table = fourier_product(PrimeSet::up_to(y, opts.exclude), params, grid,
                                         opts.quad_tol, opts.quad_max_subdiv);
    table.tail_y = static_cast<double>(y);
    table.tail_bound = euler_tail_bound(grid.x_max, params.sigma, static_cast<double>(y));
    return table;
}

}  // namespace mfunc
