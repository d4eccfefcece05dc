#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "mfunc/density.hpp"
#include "mfunc/types.hpp"

namespace mfunc {

/// Sato-Tate mean of the per-prime log contribution, in closed form:
///   r odd:  -1 / (2 p^{2 sigma})
///   r even: -log(1 - p^{-sigma}) - p^{-sigma}
double expected_log_single(std::uint64_t p, const SymPowerParams& params);

struct FirstMoment {
    double value = 0.0;
    double tail_bound = 0.0;  // nonzero only for cutoff sums
};

/// scale * sum over the prime set of expected_log_single.
FirstMoment first_moment_sum(const PrimeSet& set, const SymPowerParams& params, double scale);

/// Same over all primes <= y (minus an excluded prime), with an integral-
/// comparison bound on the neglected p > y tail.
FirstMoment first_moment_cutoff(std::uint64_t y, std::optional<std::uint64_t> exclude,
                                const SymPowerParams& params, double scale);

/// |(1/2pi) int_0^{2pi} Log(1 - e^{i phi} p^{-sigma}) dphi| via an n-panel
/// periodic trapezoid rule; vanishes analytically, so the return value is
/// a pure numerical-residue diagnostic.
double cauchy_vanishing_check(std::uint64_t p, double sigma, int n_panels);

/// Trapezoid of density * psi du/sqrt(2 pi); psi sampled on the grid nodes.
double moment_from_density(const DensityGrid& grid, std::span<const double> psi);

/// Convenience: moment with psi(u) = u^k.
double power_moment_from_density(const DensityGrid& grid, int k);

/// Comparison record emitted by the CLI and the verification suite.
struct MomentReport {
    SymPowerParams params;
    std::string prime_description;
    double scale = 1.0;
    double closed_form = 0.0;
    double tail_bound = 0.0;
    std::optional<double> numeric_from_density;
    std::optional<double> numeric_from_mc;
    std::optional<double> density_discrepancy;
    std::optional<double> mc_discrepancy;
};

}  // namespace mfunc
