#include "mfunc/core_math.hpp"

#include <cmath>

#include "mfunc/rng.hpp"

namespace mfunc {

std::complex<double> g_sigma(std::complex<double> t, std::uint64_t p, double sigma) {
    if (!(sigma > 0.5))
        throw validation_error("g_sigma: sigma must be > 1/2, got " + std::to_string(sigma));
    if (p < 2) throw validation_error("g_sigma: p must be a prime >= 2");
    if (std::abs(t) > 1.0 + 1e-12)
        throw validation_error("g_sigma: |t| must not exceed 1 (tolerance 1e-12)");
    const double z = std::pow(static_cast<double>(p), -sigma);
    return -std::log(1.0 - t * z);
}

double script_g_p(double eta, std::uint64_t p, const SymPowerParams& params) {
    params.validate();
    if (p < 2) throw validation_error("script_g_p: p must be a prime >= 2");
    const double z = std::pow(static_cast<double>(p), -params.sigma);
    double value = -std::log1p(z * (z - 2.0 * std::cos(eta)));
    if (params.even()) value -= std::log1p(-z);
    return value;
}

double script_g_set(std::span<const SatoTateAngle> thetas, const PrimeSet& set,
                    const SymPowerParams& params) {
    if (thetas.size() != set.size())
        throw validation_error("script_g_set: need one angle per prime (" +
                               std::to_string(thetas.size()) + " angles, " +
                               std::to_string(set.size()) + " primes)");
    const double r = static_cast<double>(params.r);
    double sum = 0.0;
    for (std::size_t i = 0; i < thetas.size(); ++i)
        sum += script_g_p(r * thetas[i].theta, set.primes()[i], params);
    return sum;
}

GRange script_g_range(std::uint64_t p, const SymPowerParams& params) {
    // cos(r*theta) sweeps all of [-1,1] for every r >= 1 as theta runs over
    // [0, pi], so the extrema sit at factor angles 0 and pi.
    return {script_g_p(kPi, p, params), script_g_p(0.0, p, params)};
}

double sato_tate_pdf(double theta) {
    const double s = std::sin(theta);
    return 2.0 * s * s / kPi;
}

double sato_tate_cdf(double theta) {
    if (theta <= 0.0) return 0.0;
    if (theta >= kPi) return 1.0;
    return (theta - std::sin(theta) * std::cos(theta)) / kPi;
}

double sato_tate_quantile(double u) {
    if (!(u >= 0.0 && u <= 1.0))
        throw validation_error("sato_tate_quantile: u must lie in [0,1]");
    if (u == 0.0) return 0.0;
    if (u == 1.0) return kPi;

    double lo = 0.0, hi = kPi;
    double theta = kPi * u;
    for (int iter = 0; iter < 128; ++iter) {
        const double resid = sato_tate_cdf(theta) - u;
        if (std::abs(resid) <= 1e-12) return theta;
        if (resid > 0.0)
            hi = theta;
        else
            lo = theta;
        const double deriv = sato_tate_pdf(theta);
        double next = theta - resid / deriv;
        // fall back to bisection when Newton leaves the bracket (pdf
        // vanishes at both endpoints, so steps can overshoot there)
        if (!(deriv > 0.0) || !(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
        theta = next;
        if (hi - lo < 1e-15) return theta;
    }
    return theta;
}

SatoTateAngle sato_tate_sample(std::uint64_t seed, std::uint64_t sample, std::uint64_t stream) {
    return SatoTateAngle(sato_tate_quantile(rng::uniform01(seed, sample, stream)));
}

double chebyshev_u(int ell, double x) {
    if (ell < 0) throw validation_error("chebyshev_u: degree must be >= 0");
    if (std::abs(x) > 1.0)
        throw validation_error("chebyshev_u: argument must lie in [-1,1]");
    double prev = 1.0;
    if (ell == 0) return prev;
    double cur = 2.0 * x;
    for (int k = 2; k <= ell; ++k) {
        double next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

int cheb_coeff(int ell, int j, int r) {
    if (ell < 0 || j < 0 || r < 1)
        throw validation_error("cheb_coeff: need ell, j >= 0 and r >= 1");
    SymPowerParams probe(r, 1.0);
    int c = 0;
    for (int h = 0; h <= probe.rho(); ++h) {
        const int freq = j * (r - 2 * h);
        if (freq == ell) ++c;
        if (freq == ell + 2) --c;
    }
    if (probe.even() && ell == 0) ++c;
    return c;
}

double gamma_trace(int j, double theta, int r) {
    if (j < 1) throw validation_error("gamma_trace: j must be >= 1");
    SymPowerParams probe(r, 1.0);
    double g = probe.even() ? 1.0 : 0.0;
    for (int h = 0; h <= probe.rho(); ++h)
        g += 2.0 * std::cos(static_cast<double>(j) * (r - 2 * h) * theta);
    return g;
}

}  // namespace mfunc
