#include <algorithm>
#include <cmath>
#include <functional>

#include <doctest.h>

#include "mfunc/core_math.hpp"
#include "mfunc/density.hpp"
#include "mfunc/fourier.hpp"
#include "mfunc/moments.hpp"
#include "mfunc/oracles.hpp"
#include "mfunc/quadrature.hpp"

using namespace mfunc;

namespace {

// closed-form integral of the Sato-Tate pdf-in-theta between two angles,
// used to integrate the single-prime density across its endpoint
// singularities: int (2/pi) sin^2(theta/r) dtheta
double theta_mass(double a, double b, int r) {
    auto antider = [&](double t) {
        return (t - r * std::sin(2.0 * t / r) / 2.0) / kPi;
    };
    return antider(b) - antider(a);
}

// angle corresponding to a u value inside the support
double theta_of_u(std::uint64_t p, const SymPowerParams& params, double u) {
    const double z = std::pow(static_cast<double>(p), -params.sigma);
    double log_d = -u;
    if (params.even()) log_d -= std::log1p(-z);
    const double c = (1.0 + z * z - std::exp(log_d)) / (2.0 * z);
    return std::acos(std::clamp(c, -1.0, 1.0));
}

// adaptive quadrature of psi(u) * density over the support, with the
// endpoint slivers handled by the arccos substitution
double single_prime_integral(std::uint64_t p, const SymPowerParams& params,
                             const std::function<double(double)>& psi) {
    const auto s = single_prime_support(p, params);
    const double w = (s.hi - s.lo) * 1e-3;
    auto f = [&](double u) { return psi(u) * density_single_prime(p, params, u) / kSqrt2Pi; };
    const double mid =
        integrate_gk(f, s.lo + w, s.hi - w, QuadConfig{1e-11, 200000, 64}).value;
    // ends in theta coordinates: du/dtheta cancels the Jacobian, leaving
    // psi(u(theta)) against the smooth theta weight
    const double th_hi = theta_of_u(p, params, s.hi - w);
    const double th_lo = theta_of_u(p, params, s.lo + w);
    auto g = [&](double th) {
        const double z = std::pow(static_cast<double>(p), -params.sigma);
        double u = -std::log1p(z * (z - 2.0 * std::cos(th)));
        if (params.even()) u -= std::log1p(-z);
        const double sr = std::sin(th / params.r);
        return psi(u) * 2.0 * sr * sr / kPi;
    };
    const double top = integrate_gk(g, 0.0, th_hi, QuadConfig{1e-12, 20000, 8}).value;
    const double bottom = integrate_gk(g, th_lo, kPi, QuadConfig{1e-12, 20000, 8}).value;
    return mid + top + bottom;
}

const SymPowerParams kR1(1, 1.0);

DensityGrid make_inverted_grid(int r, double sigma, std::size_t n_primes, double x_max = 60.0,
                               int x_n = 4001, int u_n = 2001) {
    const SymPowerParams params(r, sigma);
    const PrimeSet set = PrimeSet::first_n(n_primes);
    const auto table = fourier_product(set, params, XGrid(x_max, x_n));
    const auto s = analytic_support(set, params);
    return density_invert(table, UGrid(s.lo - 1.0, s.hi + 1.0, u_n));
}

}  // namespace

TEST_CASE("single-prime density vanishes outside its support") {
    const auto s = single_prime_support(5, kR1);
    CHECK(density_single_prime(5, kR1, s.lo - 0.1) == 0.0);
    CHECK(density_single_prime(5, kR1, s.lo) == 0.0);  // open lower endpoint
    CHECK(density_single_prime(5, kR1, s.hi + 0.1) == 0.0);
    CHECK(density_single_prime(5, kR1, 0.5 * (s.lo + s.hi)) > 0.0);
}

TEST_CASE("single-prime density integrates to 1") {
    for (int r : {1, 2})
        for (double sigma : {0.75, 1.0})
            for (std::uint64_t p : {2ull, 5ull, 13ull}) {
                const SymPowerParams params(r, sigma);
                const double mass =
                    single_prime_integral(p, params, [](double) { return 1.0; });
                CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
            }
}

TEST_CASE("single-prime first moment matches the closed form") {
    // r=1, p=5, sigma=1: -1/(2 p^2) = -0.02
    const double m = single_prime_integral(5, kR1, [](double u) { return u; });
    CHECK(m == doctest::Approx(-0.02).epsilon(1e-8));

    const SymPowerParams r2(2, 0.75);
    const double m2 = single_prime_integral(3, r2, [](double u) { return u; });
    CHECK(m2 == doctest::Approx(expected_log_single(3, r2)).epsilon(1e-7));
}

TEST_CASE("single-prime grid sampling records support and mass") {
    const auto s = single_prime_support(7, kR1);
    const auto grid = density_single_prime_grid(7, kR1, UGrid(s.lo - 0.05, s.hi + 0.05, 4001));
    CHECK(grid.support_hint->lo == doctest::Approx(s.lo));
    // r=1 density is bounded, so even plain trapezoid lands close
    CHECK(grid.mass == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("density_invert: normalization, nonnegativity, first moment") {
    const auto grid = make_inverted_grid(1, 1.0, 25);
    CHECK(std::abs(grid.mass - 1.0) <= 1e-4);
    double min_v = 0.0;
    for (double v : grid.values) min_v = std::min(min_v, v);
    CHECK(min_v >= -1e-6);
    CHECK(std::abs(grid.values.front()) < 1e-5);
    CHECK(std::abs(grid.values.back()) < 1e-5);

    const double closed = first_moment_sum(grid.prime_set, grid.params, 1.0).value;
    CHECK(power_moment_from_density(grid, 1) == doctest::Approx(closed).epsilon(1e-3));
}

TEST_CASE("density_invert enforces the large-prime precondition") {
    const SymPowerParams params(1, 1.0);
    const PrimeSet small({2, 3, 5, 7, 11, 13});  // only two primes above 7
    const auto table = fourier_product(small, params, XGrid(40.0, 801));
    CHECK_THROWS_AS(density_invert(table, UGrid(-2.0, 3.0, 101)), validation_error);
}

TEST_CASE("density_invert rejects an x-grid with a fat tail") {
    const SymPowerParams params(2, 1.0);
    const auto table = fourier_product(PrimeSet::first_n(25), params, XGrid(5.0, 201));
    try {
        density_invert(table, UGrid(-2.0, 7.0, 101));
        FAIL("expected numerical_error");
    } catch (const numerical_error& e) {
        CHECK(e.achieved() > 1e-6);
        CHECK(std::string(e.what()).find("extend") != std::string::npos);
    }
}

TEST_CASE("density_invert flags a non-Hermitian table") {
    const SymPowerParams params(1, 1.0);
    auto table = fourier_product(PrimeSet::first_n(12), params, XGrid(40.0, 1601));
    table.values[10] += std::complex<double>(0.0, 0.5);  // break the symmetry
    CHECK_THROWS_AS(density_invert(table, UGrid(-3.0, 4.0, 201)), numerical_error);
}

TEST_CASE("convolution with a normalized spike shifts the density") {
    const auto s = single_prime_support(3, kR1);
    const int n = 2001;
    const auto a = density_single_prime_grid(3, kR1, UGrid(s.lo - 0.1, s.hi + 0.1, n));
    const double du = a.u_grid.spacing();

    DensityGrid spike;
    spike.params = kR1;
    spike.prime_set = PrimeSet({101});
    const double shift = 0.5;
    spike.u_grid = UGrid(shift - du, shift + du, 3);
    spike.values = {0.0, kSqrt2Pi / du, 0.0};
    spike.mass = 1.0;

    const auto c = density_convolve(a, spike);
    CHECK(c.u_grid.spacing() == doctest::Approx(du).epsilon(1e-12));
    // c(u) should equal a(u - shift) up to grid resolution
    for (int k = 100; k < n - 100; k += 50) {
        const double u = a.u_grid.point(k) + shift;
        const int ck = static_cast<int>(std::lround((u - c.u_grid.u_min) / du));
        CHECK(c.value_at(ck) ==
              doctest::Approx(a.value_at(k)).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("convolution is exactly commutative and multiplies mass") {
    const auto sa = single_prime_support(2, kR1);
    const auto sb = single_prime_support(3, kR1);
    const int n = 1501;
    const double du = (sa.hi - sa.lo + 0.2) / (n - 1);
    const auto a = density_single_prime_grid(2, kR1, UGrid(sa.lo - 0.1, sa.lo - 0.1 + du * (n - 1), n));
    const int nb = static_cast<int>(std::ceil((sb.hi - sb.lo + 0.2) / du)) + 1;
    const auto b = density_single_prime_grid(3, kR1, UGrid(sb.lo - 0.1, sb.lo - 0.1 + du * (nb - 1), nb));

    const auto ab = density_convolve(a, b);
    const auto ba = density_convolve(b, a);
    REQUIRE(ab.values.size() == ba.values.size());
    for (std::size_t i = 0; i < ab.values.size(); ++i) CHECK(ab.values[i] == ba.values[i]);

    CHECK(std::abs(ab.mass - a.mass * b.mass) <= 1e-6);

    CHECK_THROWS_AS(density_convolve(a, a), validation_error);  // overlapping prime sets

    auto coarse = density_single_prime_grid(3, kR1, UGrid(sb.lo - 0.1, sb.hi + 0.1, 301));
    CHECK_THROWS_AS(density_convolve(a, coarse), validation_error);  // spacing mismatch

    auto other = density_single_prime_grid(3, SymPowerParams(2, 1.0),
                                           UGrid(sb.lo - 0.1, sb.lo - 0.1 + du * (nb - 1), nb));
    CHECK_THROWS_AS(density_convolve(a, other), validation_error);  // parameter mismatch
}

TEST_CASE("two-prime convolution reproduces the closed-form moments") {
    // the two-prime table is not absolutely integrable, so the comparison is
    // at the moment level: convolve the closed forms, then check moments
    // against the independent-sum values
    const int n = 4001;
    const auto sa = single_prime_support(2, kR1);
    const auto sb = single_prime_support(3, kR1);
    const double du = (sa.hi - sa.lo + 0.4) / (n - 1);
    const auto a = density_single_prime_grid(2, kR1, UGrid(sa.lo - 0.2, sa.lo - 0.2 + du * (n - 1), n));
    const int nb = static_cast<int>(std::ceil((sb.hi - sb.lo + 0.4) / du)) + 1;
    const auto b = density_single_prime_grid(3, kR1, UGrid(sb.lo - 0.2, sb.lo - 0.2 + du * (nb - 1), nb));
    const auto c = density_convolve(a, b);

    const double m1_expect = expected_log_single(2, kR1) + expected_log_single(3, kR1);
    const double e2_2 = oracles::expected_log_sq_quadrature(2, kR1);
    const double e2_3 = oracles::expected_log_sq_quadrature(3, kR1);
    const double m2_expect = e2_2 + e2_3 +
                             2.0 * expected_log_single(2, kR1) * expected_log_single(3, kR1);

    CHECK(power_moment_from_density(c, 1) / c.mass == doctest::Approx(m1_expect).epsilon(1e-3));
    CHECK(power_moment_from_density(c, 2) / c.mass == doctest::Approx(m2_expect).epsilon(1e-3));
}

TEST_CASE("Fourier duality round trip") {
    const SymPowerParams params(1, 1.0);
    const PrimeSet set = PrimeSet::first_n(25);
    const auto table = fourier_product(set, params, XGrid(60.0, 6001));
    const auto s = analytic_support(set, params);
    const auto grid = density_invert(table, UGrid(s.lo - 1.0, s.hi + 1.0, 4001));
    for (double x : {0.0, 0.5, 2.5, 5.0, 10.0}) {
        const auto back = density_forward_transform(grid, x);
        CHECK(std::abs(back - table.at_x(x)) < 1e-4);
    }
}

TEST_CASE("compact support for sigma > 1") {
    const auto grid = make_inverted_grid(1, 1.2, 20);
    CHECK(std::abs(mass_outside(grid, *grid.support_hint)) < 1e-4);
}

TEST_CASE("prime-cutoff convergence is controlled by the near-1 tail") {
    const SymPowerParams params(1, 1.0);
    const XGrid x_grid(60.0, 4001);
    const auto t20 = fourier_product(PrimeSet::first_n(20), params, x_grid);
    const auto t40 = fourier_product(PrimeSet::first_n(40), params, x_grid);
    const auto s = analytic_support(PrimeSet::first_n(40), params);
    const UGrid u_grid(s.lo - 1.0, s.hi + 1.0, 2001);
    const auto d20 = density_invert(t20, u_grid);
    const auto d40 = density_invert(t40, u_grid);

    double sup_diff = 0.0;
    for (std::size_t i = 0; i < d20.values.size(); ++i)
        sup_diff = std::max(sup_diff, std::abs(d20.values[i] - d40.values[i]));

    // |density difference|_sup <= (1/sqrt(2pi)) int |table20(x)| S(x) dx with
    // S(x) = sum over the added primes of the near-1 bound
    const auto added = PrimeSet::first_n(40).without(PrimeSet::first_n(20));
    double z2_sum = 0.0;
    for (auto p : added.primes()) z2_sum += std::pow(static_cast<double>(p), -2.0);
    double bound = 0.0;
    const double dx = x_grid.spacing();
    for (int k = 0; k < x_grid.n; ++k) {
        const double x = std::abs(x_grid.point(k));
        const double w = (k == 0 || k == x_grid.n - 1) ? 0.5 : 1.0;
        bound += w * std::abs(t20.at_index(k)) * kNear1K * (x + x * x) * z2_sum * dx;
    }
    bound /= kSqrt2Pi;
    CHECK(sup_diff <= bound);
    CHECK(sup_diff < 0.02);  // and the change is small in absolute terms
}
