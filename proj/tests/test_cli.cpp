#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

namespace {

namespace fs = std::filesystem;

int run(const std::string& args) {
    const std::string cmd = std::string(MFUNC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

fs::path fresh_dir(const char* name) {
    const auto dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("factor writes a table with M(0) = 1 and reruns byte-identically") {
    const auto dir = fresh_dir("mfunc_cli_factor");
    const std::string args = "factor --r 1 --sigma 1.0 --primes-upto 30 --xmax 10 --xn 201 --out " +
                             dir.string();
    REQUIRE(run(args) == 0);
    const auto path = dir / "fourier_table.json";
    REQUIRE(fs::exists(path));
    const auto first = slurp(path);

    const auto j = nlohmann::json::parse(first);
    CHECK(j["params"]["r"] == 1);
    CHECK(j["primes"].size() == 10);
    const int mid = (j["x_grid"]["n"].get<int>() - 1) / 2;
    CHECK(j["values"][mid][0].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(j["values"][mid][1].get<double>() == doctest::Approx(0.0));

    REQUIRE(run(args) == 0);
    CHECK(slurp(path) == first);
}

TEST_CASE("factor routes the excluded prime") {
    const auto dir = fresh_dir("mfunc_cli_exclude");
    REQUIRE(run("factor --r 2 --sigma 0.75 --primes-upto 40 --exclude-q 2 --xmax 5 --xn 101 --out " +
                dir.string()) == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "fourier_table.json"));
    CHECK(j["excluded"] == 2);
    for (const auto& p : j["primes"]) CHECK(p.get<int>() != 2);
}

TEST_CASE("density emits CSV with the documented header") {
    const auto dir = fresh_dir("mfunc_cli_density");
    REQUIRE(run("density --r 1 --sigma 1.2 --primes-upto 60 --xmax 40 --xn 2001 --un 501 "
                "--format csv --out " +
                dir.string()) == 0);
    const auto csv = slurp(dir / "density.csv");
    REQUIRE(!csv.empty());
    CHECK(csv.rfind("# {", 0) == 0);
    CHECK(csv.find("\nu,value\n") != std::string::npos);
}

TEST_CASE("moments reports the closed form in JSON") {
    const auto dir = fresh_dir("mfunc_cli_moments");
    REQUIRE(run("moments --r 3 --sigma 1.0 --primes 2,3,5 --out " + dir.string()) == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "moments.json"));
    // odd parity: same value as r = 1
    CHECK(j["closed_form"].get<double>() == doctest::Approx(-0.2005555555555556).epsilon(1e-12));
}

TEST_CASE("sample writes a reproducible binary batch and a report") {
    const auto dir1 = fresh_dir("mfunc_cli_sample1");
    const auto dir2 = fresh_dir("mfunc_cli_sample2");
    const std::string base =
        "sample --r 1 --sigma 1.0 --primes-upto 30 --n 5000 --seed 7 --xmax 40 --xn 2001 --un 801";
    REQUIRE(run(base + " --out " + dir1.string()) == 0);
    REQUIRE(run(base + " --out " + dir2.string()) == 0);
    CHECK(slurp(dir1 / "samples.bin") == slurp(dir2 / "samples.bin"));
    const auto rep = nlohmann::json::parse(slurp(dir1 / "sample_report.json"));
    CHECK(rep["l1_distance"].get<double>() < 0.5);
    CHECK(rep.contains("ks_distance"));
}

TEST_CASE("config file fills fields and flags take precedence") {
    const auto dir = fresh_dir("mfunc_cli_config");
    {
        std::ofstream os(dir / "cfg.json");
        os << R"({"r": 1, "sigma": 1.0, "primes": [2, 3, 5], "scale": 2.0})";
    }
    REQUIRE(run("moments --config " + (dir / "cfg.json").string() + " --scale 1.0 --out " +
                dir.string()) == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "moments.json"));
    CHECK(j["scale"].get<double>() == 1.0);  // flag wins
    CHECK(j["closed_form"].get<double>() ==
          doctest::Approx(-0.2005555555555556).epsilon(1e-12));
}

TEST_CASE("exit codes distinguish validation from numerical failure") {
    CHECK(run("moments --r 1 --sigma 0.4 --primes 2,3") == 1);
    CHECK(run("moments --r 1 --sigma 1.0") == 1);  // no prime set
    CHECK(run("verify --preset nosuch") == 1);
    // sigma barely above 1/2 with a tight limit tolerance: cutoff over budget
    CHECK(run("factor --r 1 --sigma 0.51 --limit-tol 1e-8 --xmax 10 --xn 21") == 2);
}

TEST_CASE("verify quick preset writes a machine-readable report") {
    const auto dir = fresh_dir("mfunc_cli_verify");
    REQUIRE(run("verify --preset quick --out " + dir.string()) == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "verify_report.json"));
    REQUIRE(j.size() == 12);
    for (const auto& c : j) {
        CHECK(c.contains("id"));
        CHECK(c.contains("pass"));
        CHECK(c["pass"].get<bool>());
    }
}
