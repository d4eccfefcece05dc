#include <cmath>
#include <cstdlib>

#include <doctest.h>

#include "mfunc/core_math.hpp"
#include "mfunc/density.hpp"
#include "mfunc/fourier.hpp"
#include "mfunc/moments.hpp"
#include "mfunc/montecarlo.hpp"

using namespace mfunc;

TEST_CASE("batches are bitwise reproducible across thread counts") {
    const PrimeSet set = PrimeSet::first_n(8);
    const SymPowerParams params(1, 1.0);

    setenv("MFUNC_THREADS", "1", 1);
    const auto serial = sample_batch(set, params, 20000, 77);
    unsetenv("MFUNC_THREADS");
    const auto threaded = sample_batch(set, params, 20000, 77);

    REQUIRE(serial.values.size() == threaded.values.size());
    for (std::size_t i = 0; i < serial.values.size(); ++i)
        CHECK(serial.values[i] == threaded.values[i]);

    const auto reseeded = sample_batch(set, params, 20000, 78);
    CHECK(reseeded.values != serial.values);
}

TEST_CASE("forced zero angles give the endpoint value") {
    const PrimeSet set({2});
    const auto zero_hook = [](std::uint64_t, std::size_t) { return 0.0; };
    for (int r : {1, 2}) {
        for (double sigma : {0.8, 1.3}) {
            const SymPowerParams params(r, sigma);
            const auto batch = sample_batch(set, params, 1, 5, zero_hook);
            const double z = std::pow(2.0, -sigma);
            const double expect =
                -2.0 * std::log(1.0 - z) - params.delta_even() * std::log(1.0 - z);
            CHECK(batch.values[0] == doctest::Approx(expect).epsilon(1e-14));
        }
    }
}

TEST_CASE("sampled values stay inside the analytic support") {
    const PrimeSet set = PrimeSet::first_n(10);
    const SymPowerParams params(2, 0.75);
    const auto s = analytic_support(set, params);
    const auto batch = sample_batch(set, params, 100000, 3);
    for (double v : batch.values) {
        CHECK(v >= s.lo);
        CHECK(v <= s.hi);
    }
}

TEST_CASE("empirical mean is within 3 standard errors of the closed form") {
    const PrimeSet set = PrimeSet::first_n(10);
    const SymPowerParams params(1, 1.0);
    const std::size_t n = 400000;
    const auto batch = sample_batch(set, params, n, 2024);
    double acc = 0, acc2 = 0;
    for (double v : batch.values) {
        acc += v;
        acc2 += v * v;
    }
    const double mean = acc / n;
    const double se = std::sqrt((acc2 / n - mean * mean) / n);
    const double closed = first_moment_sum(set, params, 1.0).value;
    CHECK(std::abs(mean - closed) <= 3 * se);
}

namespace {

struct LawFixture {
    SymPowerParams params{1, 1.0};
    PrimeSet set = PrimeSet::first_n(25);
    FourierTable table;
    DensityGrid grid;

    LawFixture() {
        table = fourier_product(set, params, XGrid(60.0, 6001));
        const auto s = analytic_support(set, params);
        grid = density_invert(table, UGrid(s.lo - 1.0, s.hi + 1.0, 3001));
    }
};

const LawFixture& law() {
    static LawFixture f;
    return f;
}

}  // namespace

TEST_CASE("histogram matches the density in L1 and KS shrinks with n") {
    const auto& f = law();
    const auto big = sample_batch(f.set, f.params, 1000000, 99);
    const auto rep = empirical_vs_density(big, f.grid);
    CHECK(rep.l1_distance <= 0.02);
    CHECK(std::abs(rep.mean_gap) <= 3 * rep.mean_se);
    CHECK(std::abs(rep.second_gap) <= 3 * rep.second_se);
    CHECK(rep.outside_fraction == 0.0);

    // KS decreases over three doublings
    double prev = 1.0;
    for (std::uint64_t n : {125000ull, 250000ull, 500000ull, 1000000ull}) {
        const auto batch = sample_batch(f.set, f.params, n, 99);
        const auto r = empirical_vs_density(batch, f.grid);
        CHECK(r.ks_distance < prev);
        prev = r.ks_distance;
    }
}

TEST_CASE("single-prime histogram reproduces the closed-form density") {
    const SymPowerParams params(1, 1.0);
    const PrimeSet set({5});
    const auto s = single_prime_support(5, params);
    const auto grid = density_single_prime_grid(5, params, UGrid(s.lo - 0.05, s.hi + 0.05, 4001));
    const auto batch = sample_batch(set, params, 1000000, 11);
    const auto rep = empirical_vs_density(batch, grid);
    CHECK(rep.l1_distance <= 0.02);
}

TEST_CASE("empirical characteristic function tracks the table") {
    const auto& f = law();
    const auto batch = sample_batch(f.set, f.params, 250000, 4);

    // x = 0: both sides are 1 up to quadrature tolerance
    const double xs0[] = {0.0};
    const auto at0 = characteristic_check(batch, f.table, xs0);
    CHECK(at0.max_deviation <= 1e-9);

    std::vector<double> xs;
    for (int k = 1; k <= 10; ++k) {
        xs.push_back(f.table.x_grid.point(f.table.index_of(k)));
        xs.push_back(f.table.x_grid.point(f.table.index_of(-k)));
    }
    const auto rep = characteristic_check(batch, f.table, xs);
    CHECK(rep.max_deviation <= 4.0 / std::sqrt(250000.0) + 1e-5);

    // n^{-1/2} trend: 16x the samples should cut the deviation by about 4
    const auto small = characteristic_check(sample_batch(f.set, f.params, 15625, 4), f.table, xs);
    const auto large = characteristic_check(sample_batch(f.set, f.params, 250000, 4), f.table, xs);
    CHECK(large.max_deviation < small.max_deviation);
}

TEST_CASE("single-prime batch matches the factor directly") {
    const SymPowerParams params(2, 1.0);
    const PrimeSet set({3});
    const auto table = fourier_product(set, params, XGrid(10.0, 201));
    const auto batch = sample_batch(set, params, 200000, 21);
    std::vector<double> xs = {table.x_grid.point(table.index_of(1.0)),
                              table.x_grid.point(table.index_of(-2.5))};
    const auto rep = characteristic_check(batch, table, xs);
    CHECK(rep.max_deviation <= 4.0 / std::sqrt(200000.0) + 1e-5);
}

TEST_CASE("configuration mismatches are rejected") {
    const auto& f = law();
    const auto batch = sample_batch(PrimeSet::first_n(5), f.params, 100, 1);
    const double xs[] = {0.0};
    CHECK_THROWS_AS(characteristic_check(batch, f.table, xs), validation_error);

    DensityGrid blank;
    CHECK_THROWS_AS(empirical_vs_density(batch, blank), validation_error);
}
