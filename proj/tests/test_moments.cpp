#include <cmath>

#include <doctest.h>

#include "mfunc/core_math.hpp"
#include "mfunc/density.hpp"
#include "mfunc/fourier.hpp"
#include "mfunc/moments.hpp"
#include "mfunc/oracles.hpp"
#include "mfunc/primes.hpp"

using namespace mfunc;

TEST_CASE("expected_log_single closed forms") {
    // r odd: -1/(2 p^{2 sigma})
    CHECK(expected_log_single(5, SymPowerParams(1, 1.0)) == doctest::Approx(-0.02).epsilon(1e-15));
    CHECK(expected_log_single(3, SymPowerParams(3, 0.8)) ==
          doctest::Approx(-0.5 * std::pow(3.0, -1.6)).epsilon(1e-15));

    // r even: -log(1 - p^{-sigma}) - p^{-sigma} = sum_{l>=2} p^{-l sigma}/l
    for (std::uint64_t p : {2ull, 7ull}) {
        const SymPowerParams params(2, 0.9);
        double series = 0.0;
        for (int ell = 200; ell >= 2; --ell)
            series += std::pow(static_cast<double>(p), -ell * 0.9) / ell;
        CHECK(expected_log_single(p, params) == doctest::Approx(series).epsilon(1e-14));
    }

    // quadrature oracle route
    for (int r : {1, 2}) {
        const SymPowerParams params(r, 0.75);
        CHECK(expected_log_single(11, params) ==
              doctest::Approx(oracles::expected_log_quadrature(11, params)).epsilon(1e-10));
    }
}

TEST_CASE("PrimeSet rejects composite entries upstream") {
    CHECK_THROWS_AS(PrimeSet({2, 3, 4}), validation_error);
    CHECK_THROWS_AS(PrimeSet({3, 2}), validation_error);
    CHECK_THROWS_AS(PrimeSet({2, 3, 5}, 5), validation_error);
    CHECK_NOTHROW(PrimeSet({2, 3, 5}, 7));
}

TEST_CASE("first_moment_sum worked example and linearity") {
    const PrimeSet set({2, 3, 5});
    const double m = first_moment_sum(set, SymPowerParams(1, 1.0), 1.0).value;
    CHECK(m == doctest::Approx(-0.20055555555555556).epsilon(1e-15));
    CHECK(first_moment_sum(set, SymPowerParams(1, 1.0), 0.0).value == 0.0);
    CHECK(first_moment_sum(set, SymPowerParams(1, 1.0), -3.0).value ==
          doctest::Approx(-3.0 * m).epsilon(1e-15));
}

TEST_CASE("parity: odd r shares the r=1 formula, even r the r=2 formula") {
    const PrimeSet set = PrimeSet::first_n(30);
    for (double sigma : {0.6, 1.1}) {
        const double odd = first_moment_sum(set, SymPowerParams(1, sigma), 2.5).value;
        CHECK(first_moment_sum(set, SymPowerParams(3, sigma), 2.5).value == odd);
        CHECK(first_moment_sum(set, SymPowerParams(5, sigma), 2.5).value == odd);
        const double even = first_moment_sum(set, SymPowerParams(2, sigma), 2.5).value;
        CHECK(first_moment_sum(set, SymPowerParams(4, sigma), 2.5).value == even);
        CHECK(first_moment_sum(set, SymPowerParams(6, sigma), 2.5).value == even);
        CHECK(odd != even);
    }
}

TEST_CASE("additivity over disjoint prime sets") {
    const SymPowerParams params(2, 0.8);
    const PrimeSet p1({2, 5, 11}), p2({3, 7, 13});
    const PrimeSet joint({2, 3, 5, 7, 11, 13});
    const double split = first_moment_sum(p1, params, 1.0).value +
                         first_moment_sum(p2, params, 1.0).value;
    CHECK(first_moment_sum(joint, params, 1.0).value ==
          doctest::Approx(split).epsilon(1e-15));
}

TEST_CASE("Case I vs Case II moments differ by exactly the excluded term") {
    const SymPowerParams params(1, 0.7);
    const auto with_q = first_moment_cutoff(100, std::nullopt, params, 1.0);
    const auto without_q = first_moment_cutoff(100, 2, params, 1.0);
    // bitwise: the full sum ends by adding the p=2 term to the partial sum
    CHECK(with_q.value == without_q.value + expected_log_single(2, params));
}

TEST_CASE("cutoff tail bound is honest under doubling") {
    const SymPowerParams params(1, 1.0);
    double prev_gap = 1e9;
    const double reference = first_moment_cutoff(64000, std::nullopt, params, 1.0).value;
    for (std::uint64_t y : {1000ull, 2000ull, 4000ull, 8000ull}) {
        const auto m = first_moment_cutoff(y, std::nullopt, params, 1.0);
        const double gap = std::abs(m.value - reference);
        CHECK(gap <= m.tail_bound);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
}

TEST_CASE("Cauchy vanishing residues") {
    CHECK(cauchy_vanishing_check(2, 0.6, 4096) < 1e-10);
    CHECK(cauchy_vanishing_check(97, 2.0, 4096) < 1e-12);

    // near the critical line the trapezoid needs more panels; n = 64 already
    // clears 1e-8 and the residue keeps dropping
    const double r16 = cauchy_vanishing_check(2, 0.51, 16);
    const double r32 = cauchy_vanishing_check(2, 0.51, 32);
    const double r64 = cauchy_vanishing_check(2, 0.51, 64);
    CHECK(r32 < r16);
    CHECK(r64 < r32);
    CHECK(r64 < 1e-8);
}

TEST_CASE("moment_from_density against a computed grid") {
    const SymPowerParams params(1, 1.0);
    const PrimeSet set = PrimeSet::first_n(12);
    const auto table = fourier_product(set, params, XGrid(50.0, 2501));
    const auto s = analytic_support(set, params);
    const auto grid = density_invert(table, UGrid(s.lo - 1.0, s.hi + 1.0, 2001));

    std::vector<double> ones(grid.values.size(), 1.0);
    CHECK(moment_from_density(grid, ones) == doctest::Approx(grid.mass).epsilon(1e-14));

    std::vector<double> id(grid.values.size());
    for (int k = 0; k < grid.u_grid.n; ++k) id[static_cast<std::size_t>(k)] = grid.u_grid.point(k);
    const double closed = first_moment_sum(set, params, 1.0).value;
    CHECK(moment_from_density(grid, id) == doctest::Approx(closed).epsilon(1e-3));

    std::vector<double> indicator(grid.values.size());
    for (int k = 0; k < grid.u_grid.n; ++k)
        indicator[static_cast<std::size_t>(k)] = grid.u_grid.point(k) >= 0.0 ? 1.0 : 0.0;
    const double tail_prob = moment_from_density(grid, indicator);
    CHECK(tail_prob >= 0.0);
    CHECK(tail_prob <= 1.0);

    std::vector<double> wrong(grid.values.size() + 1, 1.0);
    CHECK_THROWS_AS(moment_from_density(grid, wrong), validation_error);
}
