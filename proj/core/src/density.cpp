#include "mfunc/density.hpp"

#include <algorithm>
#include <cmath>

#include "mfunc/core_math.hpp"
#include "mfunc/parallel.hpp"

namespace mfunc {

SupportInterval single_prime_support(std::uint64_t p, const SymPowerParams& params) {
    params.validate();
    params.require_density_degree();
    GRange r = script_g_range(p, params);
    return {r.lo, r.hi};
}

SupportInterval analytic_support(const PrimeSet& set, const SymPowerParams& params) {
    SupportInterval s{0.0, 0.0};
    for (std::uint64_t p : set.primes()) {
        GRange r = script_g_range(p, params);
        s.lo += r.lo;
        s.hi += r.hi;
    }
    return s;
}

double density_single_prime(std::uint64_t p, const SymPowerParams& params, double u) {
    params.validate();
    params.require_density_degree();
    const SupportInterval support = single_prime_support(p, params);
    if (!support.contains(u)) return 0.0;

    const double z = std::pow(static_cast<double>(p), -params.sigma);
    // invert u = -log(1 - 2 z cos(theta) + z^2) - delta log(1 - z):
    // the quadratic form D = |1 - e^{i theta} z|^2 follows directly from u
    double log_d = -u;
    if (params.even()) log_d -= std::log1p(-z);
    const double d = std::exp(log_d);
    double c = (1.0 + z * z - d) / (2.0 * z);
    c = std::clamp(c, -1.0, 1.0);
    const double sin_theta = std::sqrt((1.0 - c) * (1.0 + c));
    // slivers within rounding of the endpoints: measure zero, report 0
    if (sin_theta < 1e-12) return 0.0;

    // residual check on the recovered angle
    double u_back = -std::log1p(z * (z - 2.0 * c));
    if (params.even()) u_back -= std::log1p(-z);
    if (std::abs(u_back - u) > 1e-10 * std::max(1.0, std::abs(u)))
        throw numerical_error("density_single_prime: inversion residual " +
                                  std::to_string(std::abs(u_back - u)) + " at u=" + std::to_string(u),
                              std::abs(u_back - u));

    if (params.r == 1) return kSqrt2Pi * d * sin_theta / (kPi * z);
    // r = 2: sin^2(theta/2)/sin(theta) = tan(theta/2)/2 = (1-c)/(2 sin theta)
    return kSqrt2Pi * d * (1.0 - c) / (2.0 * kPi * z * sin_theta);
}

namespace {

double trapezoid_mass(const std::vector<double>& values, double du) {
    if (values.size() < 2) return 0.0;
    double s = 0.5 * (values.front() + values.back());
    for (std::size_t i = 1; i + 1 < values.size(); ++i) s += values[i];
    return s * du / kSqrt2Pi;
}

}  // namespace

DensityGrid density_single_prime_grid(std::uint64_t p, const SymPowerParams& params,
                                      const UGrid& grid) {
    grid.validate();
    DensityGrid out;
    out.params = params;
    out.prime_set = PrimeSet({p});
    out.u_grid = grid;
    out.values.resize(static_cast<std::size_t>(grid.n));
    for (int k = 0; k < grid.n; ++k)
        out.values[static_cast<std::size_t>(k)] = density_single_prime(p, params, grid.point(k));
    out.mass = trapezoid_mass(out.values, grid.spacing());
    out.support_hint = single_prime_support(p, params);
    return out;
}

DensityGrid density_invert(const FourierTable& table, const UGrid& u_grid,
                           const InvertOptions& opts) {
    u_grid.validate();
    if (table.prime_set.count_greater_than(kDecayPrimeFloor) < 3)
        throw validation_error(
            "density_invert: inversion needs at least 3 primes above " +
            std::to_string(kDecayPrimeFloor) + " for an absolutely integrable transform");
    if (table.values.size() != static_cast<std::size_t>(table.x_grid.n))
        throw validation_error("density_invert: table values do not match its grid");

    // truncated-tail budget: anchor the (1+|x|)^{-3/2} decay at the measured
    // grid edge and integrate the model beyond x_max
    const double edge = std::abs(table.values.front());
    const double x_max = table.x_grid.x_max;
    const double tail = 4.0 * edge * (1.0 + x_max) / kSqrt2Pi;
    if (tail > opts.tail_tol) {
        const double needed = std::pow(4.0 * edge * std::pow(1.0 + x_max, 1.5) /
                                           (opts.tail_tol * kSqrt2Pi),
                                       2.0) -
                              1.0;
        throw numerical_error("density_invert: x-grid tail estimate " + std::to_string(tail) +
                                  " exceeds tolerance " + std::to_string(opts.tail_tol) +
                                  "; extend the grid to about |x| <= " + std::to_string(needed),
                              tail);
    }

    const double dx = table.x_grid.spacing();
    const int nx = table.x_grid.n;
    std::vector<double> real_part(static_cast<std::size_t>(u_grid.n));
    std::vector<double> imag_sup(static_cast<std::size_t>(u_grid.n));
    parallel_for(static_cast<std::size_t>(u_grid.n), [&](std::size_t i) {
        const double u = u_grid.point(static_cast<int>(i));
        std::complex<double> acc{0.0, 0.0};
        for (int k = 0; k < nx; ++k) {
            const double w = (k == 0 || k == nx - 1) ? 0.5 : 1.0;
            const double x = table.x_grid.point(k);
            acc += w * table.values[static_cast<std::size_t>(k)] * std::polar(1.0, -u * x);
        }
        acc *= dx / kSqrt2Pi;
        real_part[i] = acc.real();
        imag_sup[i] = std::abs(acc.imag());
    });

    const double imag_max = *std::max_element(imag_sup.begin(), imag_sup.end());
    if (imag_max > opts.imag_tol)
        throw numerical_error("density_invert: imaginary residue " + std::to_string(imag_max) +
                                  " exceeds " + std::to_string(opts.imag_tol),
                              imag_max);

    DensityGrid out;
    out.params = table.params;
    out.prime_set = table.prime_set;
    out.u_grid = u_grid;
    out.values = std::move(real_part);
    out.mass = trapezoid_mass(out.values, u_grid.spacing());
    out.support_hint = analytic_support(table.prime_set, table.params);
    out.inversion_tail = tail;
    return out;
}

namespace {

// canonical argument order so convolution is bitwise symmetric
bool convolve_before(const DensityGrid& a, const DensityGrid& b) {
    if (a.u_grid.n != b.u_grid.n) return a.u_grid.n < b.u_grid.n;
    if (a.u_grid.u_min != b.u_grid.u_min) return a.u_grid.u_min < b.u_grid.u_min;
    return !std::lexicographical_compare(b.values.begin(), b.values.end(),
                                         a.values.begin(), a.values.end());
}

}  // namespace

DensityGrid density_convolve(const DensityGrid& a, const DensityGrid& b) {
    if (!(a.params == b.params))
        throw validation_error("density_convolve: parameter mismatch");
    const double da = a.u_grid.spacing(), db = b.u_grid.spacing();
    if (std::abs(da - db) > 1e-12 * da)
        throw validation_error("density_convolve: grid spacing mismatch");
    for (std::uint64_t p : a.prime_set.primes())
        if (b.prime_set.contains(p))
            throw validation_error("density_convolve: prime sets overlap at " + std::to_string(p));

    const DensityGrid& first = convolve_before(a, b) ? a : b;
    const DensityGrid& second = convolve_before(a, b) ? b : a;

    DensityGrid out;
    out.params = a.params;
    {
        auto merged = a.prime_set.primes();
        merged.insert(merged.end(), b.prime_set.primes().begin(), b.prime_set.primes().end());
        std::sort(merged.begin(), merged.end());
        auto excl = (a.prime_set.excluded() == b.prime_set.excluded()) ? a.prime_set.excluded()
                                                                       : std::nullopt;
        out.prime_set = PrimeSet(std::move(merged), excl);
    }
    const int n_out = first.u_grid.n + second.u_grid.n - 1;
    out.u_grid = UGrid(first.u_grid.u_min + second.u_grid.u_min,
                       first.u_grid.u_min + second.u_grid.u_min + da * (n_out - 1), n_out);
    out.values.assign(static_cast<std::size_t>(n_out), 0.0);
    const double scale = da / kSqrt2Pi;
    parallel_for(static_cast<std::size_t>(n_out), [&](std::size_t k) {
        const int kk = static_cast<int>(k);
        const int i_lo = std::max(0, kk - second.u_grid.n + 1);
        const int i_hi = std::min(first.u_grid.n - 1, kk);
        double acc = 0.0;
        for (int i = i_lo; i <= i_hi; ++i)
            acc += first.values[static_cast<std::size_t>(i)] *
                   second.values[static_cast<std::size_t>(kk - i)];
        out.values[k] = acc * scale;
    });
    out.mass = trapezoid_mass(out.values, da);
    if (a.support_hint && b.support_hint)
        out.support_hint = SupportInterval{a.support_hint->lo + b.support_hint->lo,
                                           a.support_hint->hi + b.support_hint->hi};
    return out;
}

double mass_outside(const DensityGrid& grid, const SupportInterval& s) {
    const double du = grid.u_grid.spacing();
    double acc = 0.0;
    for (int k = 0; k + 1 < grid.u_grid.n; ++k) {
        const double u0 = grid.u_grid.point(k);
        const double u1 = grid.u_grid.point(k + 1);
        const double v0 = grid.values[static_cast<std::size_t>(k)];
        const double v1 = grid.values[static_cast<std::size_t>(k + 1)];
        if (u1 <= s.lo || u0 >= s.hi) {
            acc += 0.5 * (v0 + v1) * du;
        } else if (u0 < s.lo && u1 > s.lo) {
            const double t = (s.lo - u0) / du;  // inside cell, keep left slice
            const double vm = v0 + t * (v1 - v0);
            acc += 0.5 * (v0 + vm) * (s.lo - u0);
        } else if (u0 < s.hi && u1 > s.hi) {
            const double t = (s.hi - u0) / du;
            const double vm = v0 + t * (v1 - v0);
            acc += 0.5 * (vm + v1) * (u1 - s.hi);
        }
    }
    return acc / kSqrt2Pi;
}

std::complex<double> density_forward_transform(const DensityGrid& grid, double x) {
    const double du = grid.u_grid.spacing();
    std::complex<double> acc{0.0, 0.0};
    for (int k = 0; k < grid.u_grid.n; ++k) {
        const double w = (k == 0 || k == grid.u_grid.n - 1) ? 0.5 : 1.0;
        acc += w * grid.values[static_cast<std::size_t>(k)] *
               std::polar(1.0, x * grid.u_grid.point(k));
    }
    return acc * (du / kSqrt2Pi);
}

}  // namespace mfunc
