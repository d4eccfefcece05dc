#pragma once

#include <complex>
#include <cstdint>
#include <span>

#include "mfunc/types.hpp"

namespace mfunc {

inline constexpr double kPi = 3.14159265358979323847;
inline constexpr double kSqrt2Pi = 2.50662827463100050242;

/// -Log(1 - t p^{-sigma}), principal branch. t is a point on the closed
/// unit disc (|t| <= 1 + 1e-12 tolerated for rounding).
std::complex<double> g_sigma(std::complex<double> t, std::uint64_t p, double sigma);

/// Real per-prime log contribution at factor angle eta:
///   -log(1 - 2 p^{-sigma} cos(eta) + p^{-2 sigma}) - log(1 - delta_even p^{-sigma}).
/// Callers composing with a Sato-Tate angle theta pass eta = r * theta.
double script_g_p(double eta, std::uint64_t p, const SymPowerParams& params);

/// Truncated log L value: sum of script_g_p(r * theta_p) over the prime set.
double script_g_set(std::span<const SatoTateAngle> thetas, const PrimeSet& set,
                    const SymPowerParams& params);

/// Range [min, max] of script_g_p(r*theta) over theta in [0, pi].
struct GRange {
    double lo, hi;
};
GRange script_g_range(std::uint64_t p, const SymPowerParams& params);

/// Sato-Tate density (2/pi) sin^2(theta) on [0, pi].
double sato_tate_pdf(double theta);

/// CDF (theta - sin(theta) cos(theta)) / pi.
double sato_tate_cdf(double theta);

/// Inverse CDF: the theta in [0, pi] with cdf(theta) = u, u in [0, 1].
/// Safeguarded Newton from theta0 = pi*u with bisection fallback, |cdf-u| <= 1e-12.
double sato_tate_quantile(double u);

/// One Sato-Tate draw from the counter-based substream (seed, sample, stream).
SatoTateAngle sato_tate_sample(std::uint64_t seed, std::uint64_t sample, std::uint64_t stream);

/// Chebyshev polynomial of the second kind, U_l(x) for |x| <= 1,
/// by the three-term recurrence.
double chebyshev_u(int ell, double x);

/// Coefficient c(l; j, r) of U_l in the trace expansion: integer closed form
///   sum_{h=0}^{rho} ( [j(r-2h) = l] - [j(r-2h) = l+2] ) + delta_even * [l = 0].
/// Zero for l > j*r, and |c| <= r+1.
int cheb_coeff(int ell, int j, int r);

/// Prime-power trace: sum_{h=0}^{rho} 2 cos(j (r-2h) theta) + delta_even.
double gamma_trace(int j, double theta, int r);

}  // namespace mfunc
