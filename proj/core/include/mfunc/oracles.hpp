#pragma once

// Quadrature-based verification routes. These deliberately avoid the closed
// forms used by the main code paths so the two can be compared; keep them
// out of production call graphs.

#include <cmath>

#include "mfunc/core_math.hpp"
#include "mfunc/quadrature.hpp"

namespace mfunc::oracles {

/// c(l; j, r) by direct Sato-Tate quadrature of trace * U_l(cos xi).
inline double cheb_coeff_quadrature(int ell, int j, int r) {
    auto integrand = [&](double xi) {
        return gamma_trace(j, xi, r) * chebyshev_u(ell, std::cos(xi)) * sato_tate_pdf(xi);
    };
    QuadConfig cfg;
    cfg.abs_tol = 1e-12;
    cfg.initial_panels = 2 * (j * r + ell) + 4;
    return integrate_gk(integrand, 0.0, kPi, cfg).value;
}

/// Sato-Tate mean of the per-prime log contribution, by quadrature.
inline double expected_log_quadrature(std::uint64_t p, const SymPowerParams& params) {
    auto integrand = [&](double theta) {
        return script_g_p(params.r * theta, p, params) * sato_tate_pdf(theta);
    };
    QuadConfig cfg;
    cfg.abs_tol = 1e-12;
    cfg.initial_panels = 8;
    return integrate_gk(integrand, 0.0, kPi, cfg).value;
}

/// Sato-Tate second moment of the per-prime log contribution.
inline double expected_log_sq_quadrature(std::uint64_t p, const SymPowerParams& params) {
    auto integrand = [&](double theta) {
        const double g = script_g_p(params.r * theta, p, params);
        return g * g * sato_tate_pdf(theta);
    };
    QuadConfig cfg;
    cfg.abs_tol = 1e-12;
    cfg.initial_panels = 8;
    return integrate_gk(integrand, 0.0, kPi, cfg).value;
}

}  // namespace mfunc::oracles
