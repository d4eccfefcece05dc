#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "mfunc/quadrature.hpp"
#include "mfunc/types.hpp"

namespace mfunc {

/// Near-1 factor bound constant: |factor(x) - 1| <= kNear1K * (|x|+x^2) * p^{-2 sigma}.
/// Frozen regression constant: sup of |factor(x)-1| * p^{2 sigma} / (|x|+x^2)
/// over p in [11, 499], |x| <= 10, sigma in {0.6, 0.75, 1.0}, r in {1, 2}
/// measured as 0.4815 (worst case p=11, sigma=0.6, r=2), then doubled.
inline constexpr double kNear1K = 0.963;

/// Decay-shape constant: |factor(x)| <= kDecayC * p^sigma / sqrt(1+|x|) for
/// p >= 11. Sup measured as 0.386 over p in [11, 997], |x| <= 400,
/// sigma in {0.6, 0.75, 1.0}, r in {1, 2}; frozen with headroom.
inline constexpr double kDecayC = 0.45;

/// Operational threshold: the proven decay shape is only asserted for
/// primes above this (tested from 11 up).
inline constexpr std::uint64_t kDecayPrimeFloor = 7;

struct FourierFactorSpec {
    SymPowerParams params;
    std::uint64_t p = 2;
    double quad_tol = 1e-11;
    int quad_max_subdiv = 20000;

    FourierFactorSpec() = default;
    FourierFactorSpec(SymPowerParams params_, std::uint64_t p_, double quad_tol_ = 1e-11,
                      int quad_max_subdiv_ = 20000)
        : params(params_), p(p_), quad_tol(quad_tol_), quad_max_subdiv(quad_max_subdiv_) {
        validate();
    }
    void validate() const {
        params.validate();
        params.require_density_degree();
        if (p < 2) throw validation_error("FourierFactorSpec: p must be a prime >= 2");
        if (!(quad_tol > 0)) throw validation_error("FourierFactorSpec: quad_tol must be > 0");
    }
};

/// Sampled characteristic function of the truncated log L distribution on a
/// symmetric x-grid. Hermitian by construction: value(-x) = conj(value(x)).
struct FourierTable {
    SymPowerParams params;
    PrimeSet prime_set;
    XGrid x_grid;
    std::vector<std::complex<double>> values;

    // Euler truncation metadata: cutoff y and estimated neglected tail
    // (tail_bound = 0 for explicit finite products).
    double tail_y = 0.0;
    double tail_bound = 0.0;

    // measured x-decay: |value| < tail_tol for grid |x| >= tail_bound_x
    double tail_bound_x = 0.0;
    double tail_tol = 0.0;

    std::complex<double> at_index(int k) const { return values.at(static_cast<std::size_t>(k)); }

    /// Value at an x that must coincide with a grid node (1e-9 tolerance).
    std::complex<double> at_x(double x) const;
    int index_of(double x) const;
};

/// Single-prime factor: (2/pi) * int_0^pi exp(i x F(theta)) sin^2(theta/r) dtheta
/// with F(theta) = script_g_p(theta, p, params). Adaptive quadrature to
/// spec.quad_tol; pre-splits panels in proportion to the phase range so the
/// oscillatory regime stays resolved.
std::complex<double> fourier_factor(const FourierFactorSpec& spec, double x);

/// Pointwise product of per-prime factors over the grid, ascending primes.
/// Values for x < 0 are filled by conjugate reflection.
FourierTable fourier_product(const PrimeSet& set, const SymPowerParams& params,
                             const XGrid& grid, double quad_tol = 1e-11,
                             int quad_max_subdiv = 20000);

struct LimitOptions {
    double target_tol = 1e-4;
    std::optional<std::uint64_t> exclude;  // Case I: fixed prime q left out
    std::uint64_t prime_budget = 2'000'000;
    double quad_tol = 1e-11;
    int quad_max_subdiv = 20000;
};

/// Proven tail bound for truncating the Euler product at primes <= y:
///   sum_{p > y} kNear1K (|x|+x^2) p^{-2 sigma} <= kNear1K (|x|+x^2) y^{1-2s}/(2s-1).
double euler_tail_bound(double x_abs_max, double sigma, double y);

/// Smallest cutoff y making euler_tail_bound < tol.
std::uint64_t required_cutoff(double x_abs_max, double sigma, double tol);

/// Truncated limit: picks the cutoff y from the tail bound, then returns the
/// product over primes <= y (minus the excluded prime). Fails with the
/// required-y diagnostic when the bound demands more primes than the budget.
FourierTable fourier_limit(const SymPowerParams& params, const XGrid& grid,
                           const LimitOptions& opts = {});

}  // namespace mfunc
