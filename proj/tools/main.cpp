// mfunc: command-line driver for the value-distribution toolkit.
//
// Subcommands: factor, density, moments, sample, verify.
// Exit codes: 0 ok, 1 validation error, 2 numerical failure, 3 verification failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mfunc/acceptance.hpp"
#include "mfunc/core_math.hpp"
#include "mfunc/density.hpp"
#include "mfunc/fourier.hpp"
#include "mfunc/moments.hpp"
#include "mfunc/montecarlo.hpp"
#include "mfunc/primes.hpp"
#include "mfunc/serialize.hpp"

namespace {

using nlohmann::json;

struct RunConfig {
    int r = 1;
    double sigma = 1.0;
    std::uint64_t primes_upto = 0;          // sieve cutoff (0 = unset)
    std::vector<std::uint64_t> prime_list;  // explicit primes (overrides cutoff)
    std::uint64_t exclude_q = 0;            // 0 = no exclusion
    double limit_tol = 0.0;                 // > 0: choose the cutoff from the tail bound
    double x_max = 80.0;
    int x_n = 8001;
    double u_min = 0.0, u_max = 0.0;        // equal = derive from the analytic support
    int u_n = 4001;
    double u_margin = 1.5;
    double quad_tol = 1e-11;
    double scale = 1.0;
    std::uint64_t seed = 1;
    std::uint64_t n_samples = 1'000'000;
    std::string out_dir = ".";
    std::string format = "json";            // density/sample text output: json or csv
    std::string preset = "desk";            // verify: desk or quick
    bool density_check = false;             // moments: also integrate a density
};

// config file fills exactly the fields whose flags were not passed
void overlay_config_file(RunConfig& cfg, const CLI::App* sub, const std::string& path) {
    std::ifstream is(path);
    if (!is) throw mfunc::validation_error("config file not found: " + path);
    json j = json::parse(is);
    auto want = [&](const char* flag, const char* key) {
        return j.contains(key) && (!sub->get_option_no_throw(flag) || sub->count(flag) == 0);
    };
    if (want("--r", "r")) cfg.r = j["r"].get<int>();
    if (want("--sigma", "sigma")) cfg.sigma = j["sigma"].get<double>();
    if (want("--primes-upto", "primes_upto")) cfg.primes_upto = j["primes_upto"].get<std::uint64_t>();
    if (want("--primes", "primes")) cfg.prime_list = j["primes"].get<std::vector<std::uint64_t>>();
    if (want("--exclude-q", "exclude_q") && !j["exclude_q"].is_null())
        cfg.exclude_q = j["exclude_q"].get<std::uint64_t>();
    if (want("--limit-tol", "limit_tol")) cfg.limit_tol = j["limit_tol"].get<double>();
    if (want("--xmax", "x_max")) cfg.x_max = j["x_max"].get<double>();
    if (want("--xn", "x_n")) cfg.x_n = j["x_n"].get<int>();
    if (want("--umin", "u_min")) cfg.u_min = j["u_min"].get<double>();
    if (want("--umax", "u_max")) cfg.u_max = j["u_max"].get<double>();
    if (want("--un", "u_n")) cfg.u_n = j["u_n"].get<int>();
    if (want("--u-margin", "u_margin")) cfg.u_margin = j["u_margin"].get<double>();
    if (want("--quad-tol", "quad_tol")) cfg.quad_tol = j["quad_tol"].get<double>();
    if (want("--scale", "scale")) cfg.scale = j["scale"].get<double>();
    if (want("--seed", "seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (want("--n", "n_samples")) cfg.n_samples = j["n_samples"].get<std::uint64_t>();
    if (want("--out", "out_dir")) cfg.out_dir = j["out_dir"].get<std::string>();
    if (want("--format", "format")) cfg.format = j["format"].get<std::string>();
    if (want("--preset", "preset")) cfg.preset = j["preset"].get<std::string>();
}

std::optional<std::uint64_t> excluded_of(const RunConfig& cfg) {
    if (cfg.exclude_q == 0) return std::nullopt;
    return cfg.exclude_q;
}

mfunc::PrimeSet config_prime_set(const RunConfig& cfg) {
    if (!cfg.prime_list.empty()) {
        auto list = cfg.prime_list;
        if (cfg.exclude_q) std::erase(list, cfg.exclude_q);
        return mfunc::PrimeSet(std::move(list), excluded_of(cfg));
    }
    if (cfg.primes_upto >= 2) return mfunc::PrimeSet::up_to(cfg.primes_upto, excluded_of(cfg));
    throw mfunc::validation_error("no prime set: pass --primes-upto, --primes or --limit-tol");
}

mfunc::FourierTable build_table(const RunConfig& cfg) {
    const mfunc::SymPowerParams params(cfg.r, cfg.sigma);
    const mfunc::XGrid grid(cfg.x_max, cfg.x_n);
    if (cfg.limit_tol > 0.0) {
        mfunc::LimitOptions opts;
        opts.target_tol = cfg.limit_tol;
        opts.exclude = excluded_of(cfg);
        opts.quad_tol = cfg.quad_tol;
        return mfunc::fourier_limit(params, grid, opts);
    }
    return mfunc::fourier_product(config_prime_set(cfg), params, grid, cfg.quad_tol);
}

std::filesystem::path out_path(const RunConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.out_dir);
    return std::filesystem::path(cfg.out_dir) / name;
}

int cmd_factor(const RunConfig& cfg) {
    const mfunc::FourierTable table = build_table(cfg);
    const auto path = out_path(cfg, "fourier_table.json");
    mfunc::write_text_file(path, mfunc::to_json(table).dump(2) + "\n");
    std::printf("wrote %s (%zu primes, |M(0)| = %s)\n", path.c_str(), table.prime_set.size(),
                mfunc::format_g17(std::abs(table.at_x(0.0))).c_str());
    if (table.tail_bound > 0)
        std::printf("cutoff y = %s, estimated Euler tail %s\n",
                    mfunc::format_g17(table.tail_y).c_str(),
                    mfunc::format_g17(table.tail_bound).c_str());
    return 0;
}

mfunc::DensityGrid build_density(const RunConfig& cfg, const mfunc::FourierTable& table) {
    const mfunc::UGrid u_grid = [&] {
        if (cfg.u_max > cfg.u_min) return mfunc::UGrid(cfg.u_min, cfg.u_max, cfg.u_n);
        const auto s = mfunc::analytic_support(table.prime_set, table.params);
        return mfunc::UGrid(s.lo - cfg.u_margin, s.hi + cfg.u_margin, cfg.u_n);
    }();
    return mfunc::density_invert(table, u_grid);
}

int cmd_density(const RunConfig& cfg) {
    const mfunc::FourierTable table = build_table(cfg);
    const mfunc::DensityGrid grid = build_density(cfg, table);

    const bool csv = cfg.format == "csv";
    const auto path = out_path(cfg, csv ? "density.csv" : "density.json");
    mfunc::write_text_file(path, csv ? mfunc::density_grid_to_csv(grid)
                                     : mfunc::to_json(grid).dump(2) + "\n");
    const double outside = mfunc::mass_outside(grid, *grid.support_hint);
    std::printf("wrote %s\n", path.c_str());
    std::printf("mass                = %s\n", mfunc::format_g17(grid.mass).c_str());
    std::printf("support bound       = [%s, %s]\n",
                mfunc::format_g17(grid.support_hint->lo).c_str(),
                mfunc::format_g17(grid.support_hint->hi).c_str());
    std::printf("mass outside bound  = %s\n", mfunc::format_g17(outside).c_str());
    std::printf("x-tail error budget = %s\n", mfunc::format_g17(grid.inversion_tail).c_str());
    return 0;
}

int cmd_moments(const RunConfig& cfg) {
    const mfunc::SymPowerParams params(cfg.r, cfg.sigma);
    mfunc::MomentReport report;
    report.params = params;
    report.scale = cfg.scale;

    if (!cfg.prime_list.empty()) {
        const auto set = config_prime_set(cfg);
        report.closed_form = mfunc::first_moment_sum(set, params, cfg.scale).value;
        report.prime_description = std::to_string(set.size()) + " listed primes";
    } else if (cfg.primes_upto >= 2) {
        const auto m =
            mfunc::first_moment_cutoff(cfg.primes_upto, excluded_of(cfg), params, cfg.scale);
        report.closed_form = m.value;
        report.tail_bound = m.tail_bound;
        report.prime_description =
            "primes <= " + std::to_string(cfg.primes_upto) +
            (cfg.exclude_q ? " excluding " + std::to_string(cfg.exclude_q) : std::string());
    } else {
        throw mfunc::validation_error("moments: pass --primes-upto or --primes");
    }

    if (cfg.density_check) {
        // densities exist for r=1,2 only; higher powers use the parity
        // representative, which shares the first moment
        RunConfig dcfg = cfg;
        dcfg.r = (cfg.r % 2 == 0) ? 2 : 1;
        const mfunc::FourierTable table = build_table(dcfg);
        const mfunc::DensityGrid grid = build_density(dcfg, table);
        report.numeric_from_density = cfg.scale * mfunc::power_moment_from_density(grid, 1);
        report.density_discrepancy = std::abs(*report.numeric_from_density - report.closed_form);
    }

    const auto path = out_path(cfg, "moments.json");
    mfunc::write_text_file(path, mfunc::to_json(report).dump(2) + "\n");

    std::printf("%-22s %s\n", "prime set", report.prime_description.c_str());
    std::printf("%-22s %s\n", "closed form", mfunc::format_g17(report.closed_form).c_str());
    if (report.tail_bound > 0)
        std::printf("%-22s %s\n", "cutoff tail bound",
                    mfunc::format_g17(report.tail_bound).c_str());
    if (report.numeric_from_density) {
        std::printf("%-22s %s\n", "from density",
                    mfunc::format_g17(*report.numeric_from_density).c_str());
        std::printf("%-22s %s\n", "discrepancy",
                    mfunc::format_g17(*report.density_discrepancy).c_str());
    }
    std::printf("wrote %s\n", path.c_str());
    return 0;
}

int cmd_sample(const RunConfig& cfg) {
    const mfunc::SymPowerParams params(cfg.r, cfg.sigma);
    const auto set = config_prime_set(cfg);
    const auto batch = mfunc::sample_batch(set, params, cfg.n_samples, cfg.seed);

    const auto bin_path = out_path(cfg, "samples.bin");
    mfunc::write_batch_binary(batch, bin_path);
    if (cfg.format == "csv")
        mfunc::write_text_file(out_path(cfg, "samples.csv"), mfunc::batch_to_csv(batch));

    // compare against the analytic density for the same prime set
    const mfunc::FourierTable table = build_table(cfg);
    const mfunc::DensityGrid grid = build_density(cfg, table);
    const auto rep = mfunc::empirical_vs_density(batch, grid);

    json j;
    j["l1_distance"] = rep.l1_distance;
    j["ks_distance"] = rep.ks_distance;
    j["mean_gap"] = rep.mean_gap;
    j["mean_se"] = rep.mean_se;
    j["second_moment_gap"] = rep.second_gap;
    j["second_moment_se"] = rep.second_se;
    j["bins"] = rep.bins;
    j["outside_fraction"] = rep.outside_fraction;
    const auto rep_path = out_path(cfg, "sample_report.json");
    mfunc::write_text_file(rep_path, j.dump(2) + "\n");

    std::printf("wrote %s (%llu samples, seed %llu)\n", bin_path.c_str(),
                static_cast<unsigned long long>(batch.n_samples),
                static_cast<unsigned long long>(batch.seed));
    std::printf("L1(hist, density)   = %.6f over %zu bins\n", rep.l1_distance, rep.bins);
    std::printf("KS distance         = %.6f\n", rep.ks_distance);
    std::printf("mean gap            = %.3e (se %.3e)\n", rep.mean_gap, rep.mean_se);
    std::printf("second moment gap   = %.3e (se %.3e)\n", rep.second_gap, rep.second_se);
    std::printf("wrote %s\n", rep_path.c_str());
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    mfunc::AcceptanceOptions opts;
    if (cfg.preset == "quick") {
        opts.quick = true;
        opts.mc_samples = 100'000;
        opts.fuzz_points = 1'000;
    } else if (cfg.preset != "desk") {
        throw mfunc::validation_error("verify: unknown preset '" + cfg.preset +
                                      "' (expected desk or quick)");
    }
    const auto results = mfunc::run_acceptance(opts);

    json j = json::array();
    int failed = 0;
    for (const auto& r : results) {
        std::printf("%s  %2d  %s\n        %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.detail.c_str());
        if (!r.pass) ++failed;
        j.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    }
    const auto path = out_path(cfg, "verify_report.json");
    mfunc::write_text_file(path, j.dump(2) + "\n");
    std::printf("%d/%zu criteria passed; wrote %s\n", static_cast<int>(results.size()) - failed,
                results.size(), path.c_str());
    return failed == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"value-distribution densities of symmetric-power Euler products"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file (flags take precedence)");
        sub->add_option("--r", cfg.r, "symmetric power degree");
        sub->add_option("--sigma", cfg.sigma, "evaluation point sigma > 1/2");
        sub->add_option("--primes-upto", cfg.primes_upto, "use all primes <= this cutoff");
        sub->add_option("--primes", cfg.prime_list, "explicit prime list")->delimiter(',');
        sub->add_option("--exclude-q", cfg.exclude_q, "excluded prime q");
        sub->add_option("--out", cfg.out_dir, "output directory");
        sub->add_option("--format", cfg.format, "output format: json or csv");
        sub->add_option("--quad-tol", cfg.quad_tol, "factor quadrature tolerance");
        return sub;
    };

    auto* factor = add_common(app.add_subcommand("factor", "compute a Fourier table"));
    factor->add_option("--limit-tol", cfg.limit_tol, "truncated-limit tail tolerance");
    factor->add_option("--xmax", cfg.x_max, "grid half-width");
    factor->add_option("--xn", cfg.x_n, "grid points (odd)");

    auto* density = add_common(app.add_subcommand("density", "invert a table to a density"));
    density->add_option("--limit-tol", cfg.limit_tol, "truncated-limit tail tolerance");
    density->add_option("--xmax", cfg.x_max, "x grid half-width");
    density->add_option("--xn", cfg.x_n, "x grid points (odd)");
    density->add_option("--umin", cfg.u_min, "u grid start");
    density->add_option("--umax", cfg.u_max, "u grid end");
    density->add_option("--un", cfg.u_n, "u grid points");
    density->add_option("--u-margin", cfg.u_margin, "margin beyond the analytic support");

    auto* moments = add_common(app.add_subcommand("moments", "closed-form moment report"));
    moments->add_option("--scale", cfg.scale, "linear test function scale c");
    moments->add_flag("--density-check", cfg.density_check,
                      "also integrate u against a computed density");
    moments->add_option("--un", cfg.u_n, "u grid points for --density-check");
    moments->add_option("--xmax", cfg.x_max, "x grid half-width for --density-check");
    moments->add_option("--xn", cfg.x_n, "x grid points for --density-check");

    auto* sample = add_common(app.add_subcommand("sample", "Monte Carlo batch + comparison"));
    sample->add_option("--n", cfg.n_samples, "number of samples");
    sample->add_option("--seed", cfg.seed, "RNG seed");
    sample->add_option("--xmax", cfg.x_max, "x grid half-width for the comparison table");
    sample->add_option("--xn", cfg.x_n, "x grid points (odd)");
    sample->add_option("--un", cfg.u_n, "u grid points");

    auto* verify = app.add_subcommand("verify", "run the verification suite");
    verify->add_option("--preset", cfg.preset, "desk (full) or quick");
    verify->add_option("--out", cfg.out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        CLI::App* sub = app.get_subcommands().front();
        if (!config_path.empty()) overlay_config_file(cfg, sub, config_path);

        if (factor->parsed()) return cmd_factor(cfg);
        if (density->parsed()) return cmd_density(cfg);
        if (moments->parsed()) return cmd_moments(cfg);
        if (sample->parsed()) return cmd_sample(cfg);
        if (verify->parsed()) return cmd_verify(cfg);
    } catch (const mfunc::validation_error& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return 1;
    } catch (const mfunc::numerical_error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
