#include "mfunc/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "mfunc/core_math.hpp"
#include "mfunc/density.hpp"
#include "mfunc/fourier.hpp"
#include "mfunc/moments.hpp"
#include "mfunc/montecarlo.hpp"
#include "mfunc/oracles.hpp"
#include "mfunc/parallel.hpp"
#include "mfunc/primes.hpp"
#include "mfunc/rng.hpp"

namespace mfunc {
namespace {

std::string fmt(const char* pattern, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, pattern, a);
    return buf;
}

std::string fmt2(const char* pattern, double a, double b) {
    char buf[192];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// One fully built verification configuration: table + inverted density.
struct BuiltConfig {
    SymPowerParams params;
    FourierTable table;
    DensityGrid grid;
    double build_seconds = 0.0;
};

BuiltConfig build_density_config(int r, double sigma) {
    const auto t0 = std::chrono::steady_clock::now();
    BuiltConfig cfg;
    cfg.params = SymPowerParams(r, sigma);
    const PrimeSet set = PrimeSet::first_n(25);
    const XGrid x_grid(80.0, 8001);
    cfg.table = fourier_product(set, cfg.params, x_grid);
    const SupportInterval support = analytic_support(set, cfg.params);
    const UGrid u_grid(support.lo - 1.5, support.hi + 1.5, 4001);
    InvertOptions inv;
    inv.tail_tol = 2e-5;
    cfg.grid = density_invert(cfg.table, u_grid, inv);
    cfg.build_seconds = seconds_since(t0);
    return cfg;
}

const double kMcCheckX[10] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
    std::vector<CriterionResult> results;
    auto add = [&](int id, const std::string& name, bool pass, const std::string& detail) {
        results.push_back({id, name, pass, detail});
    };

    // shared configurations: (r, sigma) over the verification matrix
    std::vector<BuiltConfig> main4;
    for (auto [r, sigma] : {std::pair{1, 0.75}, {1, 1.0}, {2, 0.75}, {2, 1.0}})
        main4.push_back(build_density_config(r, sigma));

    // 1. normalization: mass = 1 +- 1e-4, under 60 s per configuration
    {
        bool pass = true;
        std::string detail;
        for (const auto& cfg : main4) {
            const double err = std::abs(cfg.grid.mass - 1.0);
            pass = pass && err <= 1e-4 && cfg.build_seconds < 60.0;
            detail += fmt2("(r=%g,s=%.2f) ", static_cast<double>(cfg.params.r),
                           cfg.params.sigma) +
                      fmt2("|mass-1|=%.2e [%.1fs]  ", err, cfg.build_seconds);
        }
        add(1, "normalization: density mass = 1 within 1e-4", pass, detail);
    }

    // 2. nonnegativity and decay at the grid ends
    {
        bool pass = true;
        std::string detail;
        for (const auto& cfg : main4) {
            double min_v = 0.0;
            for (double v : cfg.grid.values) min_v = std::min(min_v, v);
            const double end_v =
                std::max(std::abs(cfg.grid.values.front()), std::abs(cfg.grid.values.back()));
            pass = pass && min_v >= -1e-6 && end_v < 1e-5;
            detail += fmt2("min=%.1e ends=%.1e  ", min_v, end_v);
        }
        add(2, "nonnegativity >= -1e-6 and grid-end decay < 1e-5", pass, detail);
    }

    // 3. trivial bound |factor| <= 1 + 1e-10 on a fuzz grid over (p, x, sigma, r)
    {
        const auto pool = primes_up_to(997);
        const std::size_t n = opts.fuzz_points;
        std::vector<double> excess(n, 0.0);
        parallel_for(n, [&](std::size_t i) {
            const std::uint64_t w1 = rng::substream_word(opts.seed, i, 101);
            const std::uint64_t w2 = rng::substream_word(opts.seed, i, 102);
            const std::uint64_t p = pool[w1 % pool.size()];
            const double x = (static_cast<double>(w2 >> 11) * 0x1.0p-53 - 0.5) * 400.0;
            const double sigma = (i % 2 == 0) ? 0.6 : 1.0;
            const int r = (i / 2) % 2 == 0 ? 1 : 2;
            const auto v = fourier_factor(FourierFactorSpec(SymPowerParams(r, sigma), p), x);
            excess[i] = std::abs(v) - 1.0;
        });
        double worst = -1.0;
        for (double e : excess) worst = std::max(worst, e);
        add(3, "trivial bound |factor| <= 1 + 1e-10 (fuzz)", worst <= 1e-10,
            fmt2("max(|factor|-1)=%.2e over %g points", worst, static_cast<double>(n)));
    }

    // 4. decay-shape sup |factor| sqrt(1+|x|) / p^sigma stable under doubling x-range
    {
        std::vector<std::uint64_t> pr;
        for (auto p : primes_up_to(997))
            if (p >= 11) pr.push_back(p);
        const double x_step = opts.quick ? 4.0 : 1.0;
        bool pass = true;
        std::string detail;
        for (double sigma : {0.6, 0.75, 1.0}) {
            double sup200 = 0.0, sup400 = 0.0;
            for (int r : {1, 2}) {
                std::vector<double> s200(pr.size(), 0.0), s400(pr.size(), 0.0);
                parallel_for(pr.size(), [&](std::size_t i) {
                    FourierFactorSpec spec(SymPowerParams(r, sigma), pr[i], 1e-10);
                    const double psig = std::pow(static_cast<double>(pr[i]), sigma);
                    for (double x = 0.0; x <= 400.0 + 1e-9; x += x_step) {
                        const double ratio =
                            std::abs(fourier_factor(spec, x)) * std::sqrt(1.0 + x) / psig;
                        if (x <= 200.0 + 1e-9) s200[i] = std::max(s200[i], ratio);
                        s400[i] = std::max(s400[i], ratio);
                    }
                });
                for (std::size_t i = 0; i < pr.size(); ++i) {
                    sup200 = std::max(sup200, s200[i]);
                    sup400 = std::max(sup400, s400[i]);
                }
            }
            const double ratio = sup400 / sup200;
            pass = pass && std::isfinite(sup400) && ratio < 1.2;
            detail += fmt2("s=%.2f sup=%.3f", sigma, sup200) + fmt(" x2-ratio=%.3f  ", ratio);
        }
        add(4, "decay bound sup stable under doubling the x-range", pass, detail);
    }

    // 5. Chebyshev coefficients: closed form vs Sato-Tate quadrature + exact spots
    {
        double worst = 0.0;
        bool spots = true;
        for (int r = 1; r <= 5; ++r)
            for (int j = 1; j <= 4; ++j)
                for (int ell = 0; ell <= 12; ++ell) {
                    const double q = oracles::cheb_coeff_quadrature(ell, j, r);
                    worst = std::max(worst, std::abs(q - cheb_coeff(ell, j, r)));
                }
        for (int r = 1; r <= 6; ++r) spots = spots && cheb_coeff(0, 1, r) == 0;
        spots = spots && cheb_coeff(0, 2, 1) == -1;
        for (int j = 2; j <= 4; ++j) spots = spots && cheb_coeff(0, j, 2) == 1;
        add(5, "Chebyshev coefficients: quadrature agreement 1e-10 + exact spots",
            worst <= 1e-10 && spots, fmt("max|closed-quad|=%.2e", worst));
    }

    // 6. first moment of the density vs the closed-form prime sum (sigma = 1)
    {
        bool pass = true;
        std::string detail;
        for (const auto& cfg : main4) {
            if (cfg.params.sigma != 1.0) continue;
            const double numeric = power_moment_from_density(cfg.grid, 1);
            const double closed = first_moment_sum(cfg.grid.prime_set, cfg.params, 1.0).value;
            const double gap = std::abs(numeric - closed);
            pass = pass && gap <= 1e-3;
            detail += fmt2("r=%g gap=%.2e  ", static_cast<double>(cfg.params.r), gap);
        }
        add(6, "first moment matches closed form within 1e-3", pass, detail);
    }

    // 7. Monte Carlo law check: histogram L1 and characteristic function
    {
        bool pass = true;
        std::string detail;
        const double n = static_cast<double>(opts.mc_samples);
        const double l1_bound = 0.02 * std::sqrt(std::max(1.0, 1e6 / n));
        const double cf_bound = 4.0 / std::sqrt(n) + 1e-5;
        for (const auto& cfg : main4) {
            if (cfg.params.sigma != 1.0) continue;
            const auto t0 = std::chrono::steady_clock::now();
            const SampleBatch batch =
                sample_batch(cfg.grid.prime_set, cfg.params, opts.mc_samples, opts.seed);
            const DistributionReport rep = empirical_vs_density(batch, cfg.grid);
            std::vector<double> xs;
            for (double k : kMcCheckX) {
                xs.push_back(cfg.table.x_grid.point(cfg.table.index_of(k)));
                xs.push_back(cfg.table.x_grid.point(cfg.table.index_of(-k)));
            }
            const CharacteristicReport cf = characteristic_check(batch, cfg.table, xs);
            const double elapsed = seconds_since(t0);
            pass = pass && rep.l1_distance <= l1_bound && cf.max_deviation <= cf_bound &&
                   elapsed < 120.0;
            detail += fmt2("r=%g L1=%.3f", static_cast<double>(cfg.params.r), rep.l1_distance) +
                      fmt2(" cf=%.1e [%.0fs]  ", cf.max_deviation, elapsed);
        }
        add(7, "Monte Carlo law: L1 and characteristic function within bounds", pass, detail);
    }

    // 8. Cauchy vanishing of the Haar logarithm integral
    {
        double worst = 0.0;
        const auto pool = primes_up_to(997);
        for (std::size_t i = 0; i < 20; ++i) {
            const std::uint64_t w1 = rng::substream_word(opts.seed, i, 201);
            const std::uint64_t w2 = rng::substream_word(opts.seed, i, 202);
            const std::uint64_t p = pool[w1 % pool.size()];
            const double sigma = 0.6 + 2.0 * (static_cast<double>(w2 >> 11) * 0x1.0p-53);
            worst = std::max(worst, cauchy_vanishing_check(p, sigma, 4096));
        }
        add(8, "Cauchy vanishing |contour integral| < 1e-10", worst < 1e-10,
            fmt("max residue %.2e over 20 draws", worst));
    }

    // 9. Case I/II factorization at the characteristic-function level (q = 2)
    {
        const XGrid grid(40.0, 1601);
        double worst = 0.0;
        for (int r : {1, 2}) {
            const SymPowerParams params(r, 1.0);
            const FourierTable all = fourier_product(PrimeSet::up_to(200), params, grid);
            const FourierTable no_q = fourier_product(PrimeSet::up_to(200, 2), params, grid);
            FourierFactorSpec q_spec(params, 2);
            for (int k = 0; k < grid.n; ++k) {
                const auto lhs = all.at_index(k);
                const auto rhs = no_q.at_index(k) * fourier_factor(q_spec, grid.point(k));
                worst = std::max(worst, std::abs(lhs - rhs));
            }
        }
        add(9, "Case I/II: full product = excluded product * factor(q)", worst <= 1e-9,
            fmt("max pointwise gap %.2e", worst));
    }

    // 10. compact support for sigma = 1.2: mass outside the analytic interval
    {
        bool pass = true;
        std::string detail;
        for (int r : {1, 2}) {
            const BuiltConfig cfg = build_density_config(r, 1.2);
            const double outside = mass_outside(cfg.grid, *cfg.grid.support_hint);
            pass = pass && std::abs(outside) < 1e-4;
            detail += fmt2("r=%g outside=%.2e  ", static_cast<double>(r), outside);
        }
        add(10, "compact support (sigma=1.2): outside mass < 1e-4", pass, detail);
    }

    // 11. parity of the first moment: depends on r only through r mod 2
    {
        const PrimeSet set = PrimeSet::first_n(50);
        const double odd1 = first_moment_sum(set, SymPowerParams(1, 0.8), 1.0).value;
        const double odd3 = first_moment_sum(set, SymPowerParams(3, 0.8), 1.0).value;
        const double odd5 = first_moment_sum(set, SymPowerParams(5, 0.8), 1.0).value;
        const double even2 = first_moment_sum(set, SymPowerParams(2, 0.8), 1.0).value;
        const double even4 = first_moment_sum(set, SymPowerParams(4, 0.8), 1.0).value;
        const double even6 = first_moment_sum(set, SymPowerParams(6, 0.8), 1.0).value;
        const bool pass = odd1 == odd3 && odd3 == odd5 && even2 == even4 && even4 == even6;
        add(11, "parity: first moment identical for r=1,3,5 and r=2,4,6 (exact)", pass,
            fmt2("odd=%.12g even=%.12g", odd1, even2));
    }

    // 12. near-1 regression with the frozen constant
    {
        std::vector<std::uint64_t> pr;
        for (auto p : primes_up_to(499))
            if (p >= 11) pr.push_back(p);
        std::vector<double> worst_per(pr.size(), 0.0);
        parallel_for(pr.size(), [&](std::size_t i) {
            for (double sigma : {0.6, 0.75, 1.0})
                for (int r : {1, 2}) {
                    FourierFactorSpec spec(SymPowerParams(r, sigma), pr[i]);
                    const double z2 = std::pow(static_cast<double>(pr[i]), -2.0 * sigma);
                    for (int k = 1; k <= 40; ++k) {
                        const double x = 0.25 * k;
                        const double lhs = std::abs(fourier_factor(spec, x) - 1.0);
                        const double rhs = kNear1K * (x + x * x) * z2;
                        worst_per[i] = std::max(worst_per[i], lhs / rhs);
                    }
                }
        });
        double worst = 0.0;
        for (double w : worst_per) worst = std::max(worst, w);
        add(12, "near-1 expansion holds with frozen K", worst <= 1.0,
            fmt2("max |factor-1| / (K (x+x^2) p^-2s) = %.3f (K=%.3f)", worst, kNear1K));
    }

    return results;
}

}  // namespace mfunc
