#pragma once

#include <optional>
#include <vector>

#include "mfunc/fourier.hpp"
#include "mfunc/types.hpp"

namespace mfunc {

struct SupportInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double u) const noexcept { return u > lo && u <= hi; }
};

/// Real density samples on a uniform u-grid; the law of the truncated
/// log L value under the Sato-Tate product measure, normalized so that
/// integral of values du/sqrt(2 pi) is 1.
struct DensityGrid {
    SymPowerParams params;
    PrimeSet prime_set;
    UGrid u_grid;
    std::vector<double> values;
    double mass = 0.0;  // trapezoid integral du/sqrt(2 pi)
    std::optional<SupportInterval> support_hint;
    double inversion_tail = 0.0;  // truncated-x error budget from the inversion

    double value_at(int k) const { return values.at(static_cast<std::size_t>(k)); }
};

/// Closed-form support A(sigma, p) of the single-prime density.
SupportInterval single_prime_support(std::uint64_t p, const SymPowerParams& params);

/// Sum of per-prime ranges: the analytic support bound for the prime-set law.
SupportInterval analytic_support(const PrimeSet& set, const SymPowerParams& params);

/// Single-prime density at u: inverts the monotone map u(theta) and returns
///   sqrt(2 pi) * (2 sin^2(theta/r)/pi) * |dtheta/du|,
/// with |dtheta/du| = |1 - e^{i theta} p^{-sigma}|^2 / (2 p^{-sigma} sin theta).
/// Zero outside A(sigma, p). r = 2 has an integrable inverse-sqrt singularity
/// at the lower support endpoint.
double density_single_prime(std::uint64_t p, const SymPowerParams& params, double u);

/// Samples the closed form on a grid (trapezoid mass recorded).
DensityGrid density_single_prime_grid(std::uint64_t p, const SymPowerParams& params,
                                      const UGrid& grid);

struct InvertOptions {
    double tail_tol = 1e-6;  // allowed truncated |x|-tail of the inversion integral
    double imag_tol = 1e-8;  // sup-norm budget for the discarded imaginary residue
};

/// Fourier inversion M(u) = int table(x) e^{-iux} dx / sqrt(2 pi) by trapezoid
/// over the table's grid. Requires at least 3 primes above kDecayPrimeFloor so
/// the inversion integrand is absolutely integrable.
DensityGrid density_invert(const FourierTable& table, const UGrid& u_grid,
                           const InvertOptions& opts = {});

/// Discrete convolution scaled by du/sqrt(2 pi); grids must share spacing,
/// params must match, prime sets must be disjoint. Output spans the sum of
/// supports. Symmetric in its arguments down to the last bit.
DensityGrid density_convolve(const DensityGrid& a, const DensityGrid& b);

/// Trapezoid of values du/sqrt(2 pi) over grid cells outside [s.lo, s.hi].
double mass_outside(const DensityGrid& grid, const SupportInterval& s);

/// Forward transform of a density grid (for duality checks):
/// int M(u) e^{ixu} du / sqrt(2 pi) by trapezoid.
std::complex<double> density_forward_transform(const DensityGrid& grid, double x);

}  // namespace mfunc
