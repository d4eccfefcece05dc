#include "mfunc/serialize.hpp"

#include <bit>
#include <cstdio>
#include <fstream>

namespace mfunc {

static_assert(std::endian::native == std::endian::little,
              "batch binary layout v1 is little-endian");

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::json to_json(const SymPowerParams& params) {
    return {{"r", params.r}, {"sigma", params.sigma}};
}

SymPowerParams params_from_json(const nlohmann::json& j) {
    return SymPowerParams(j.at("r").get<int>(), j.at("sigma").get<double>());
}

namespace {

nlohmann::json prime_set_fields(const PrimeSet& set) {
    nlohmann::json j;
    j["primes"] = set.primes();
    if (set.excluded())
        j["excluded"] = *set.excluded();
    else
        j["excluded"] = nullptr;
    return j;
}

PrimeSet prime_set_from_fields(const nlohmann::json& j) {
    std::optional<std::uint64_t> excluded;
    if (j.contains("excluded") && !j.at("excluded").is_null())
        excluded = j.at("excluded").get<std::uint64_t>();
    return PrimeSet(j.at("primes").get<std::vector<std::uint64_t>>(), excluded);
}

}  // namespace

nlohmann::json to_json(const FourierTable& table) {
    nlohmann::json j = prime_set_fields(table.prime_set);
    j["params"] = to_json(table.params);
    j["x_grid"] = {{"min", table.x_grid.min()}, {"max", table.x_grid.max()}, {"n", table.x_grid.n}};
    auto values = nlohmann::json::array();
    for (const auto& v : table.values) values.push_back({v.real(), v.imag()});
    j["values"] = std::move(values);
    j["tail"] = {{"y", table.tail_y}, {"bound", table.tail_bound}};
    return j;
}

FourierTable fourier_table_from_json(const nlohmann::json& j) {
    FourierTable t;
    t.params = params_from_json(j.at("params"));
    t.prime_set = prime_set_from_fields(j);
    const auto& g = j.at("x_grid");
    t.x_grid = XGrid(g.at("max").get<double>(), g.at("n").get<int>());
    if (std::abs(g.at("min").get<double>() + t.x_grid.x_max) > 1e-12)
        throw validation_error("fourier_table_from_json: grid must be symmetric about 0");
    for (const auto& v : j.at("values"))
        t.values.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    if (t.values.size() != static_cast<std::size_t>(t.x_grid.n))
        throw validation_error("fourier_table_from_json: value count does not match grid");
    t.tail_y = j.at("tail").at("y").get<double>();
    t.tail_bound = j.at("tail").at("bound").get<double>();
    return t;
}

nlohmann::json to_json(const DensityGrid& grid) {
    nlohmann::json j = prime_set_fields(grid.prime_set);
    j["params"] = to_json(grid.params);
    j["u_grid"] = {{"min", grid.u_grid.u_min}, {"max", grid.u_grid.u_max}, {"n", grid.u_grid.n}};
    j["values"] = grid.values;
    j["mass"] = grid.mass;
    if (grid.support_hint)
        j["support_hint"] = {grid.support_hint->lo, grid.support_hint->hi};
    else
        j["support_hint"] = nullptr;
    j["inversion_tail"] = grid.inversion_tail;
    return j;
}

DensityGrid density_grid_from_json(const nlohmann::json& j) {
    DensityGrid g;
    g.params = params_from_json(j.at("params"));
    g.prime_set = prime_set_from_fields(j);
    const auto& u = j.at("u_grid");
    g.u_grid = UGrid(u.at("min").get<double>(), u.at("max").get<double>(), u.at("n").get<int>());
    g.values = j.at("values").get<std::vector<double>>();
    if (g.values.size() != static_cast<std::size_t>(g.u_grid.n))
        throw validation_error("density_grid_from_json: value count does not match grid");
    g.mass = j.at("mass").get<double>();
    if (j.contains("support_hint") && !j.at("support_hint").is_null())
        g.support_hint = SupportInterval{j.at("support_hint").at(0).get<double>(),
                                         j.at("support_hint").at(1).get<double>()};
    g.inversion_tail = j.value("inversion_tail", 0.0);
    return g;
}

std::string density_grid_to_csv(const DensityGrid& grid) {
    nlohmann::json meta = to_json(grid);
    meta.erase("values");
    std::string out = "# " + meta.dump() + "\nu,value\n";
    for (int k = 0; k < grid.u_grid.n; ++k) {
        out += format_g17(grid.u_grid.point(k));
        out += ',';
        out += format_g17(grid.values[static_cast<std::size_t>(k)]);
        out += '\n';
    }
    return out;
}

nlohmann::json to_json(const MomentReport& report) {
    nlohmann::json j;
    j["params"] = to_json(report.params);
    j["primes"] = report.prime_description;
    j["scale"] = report.scale;
    j["closed_form"] = report.closed_form;
    j["tail_bound"] = report.tail_bound;
    j["numeric_from_density"] =
        report.numeric_from_density ? nlohmann::json(*report.numeric_from_density) : nullptr;
    j["numeric_from_mc"] =
        report.numeric_from_mc ? nlohmann::json(*report.numeric_from_mc) : nullptr;
    j["density_discrepancy"] =
        report.density_discrepancy ? nlohmann::json(*report.density_discrepancy) : nullptr;
    j["mc_discrepancy"] =
        report.mc_discrepancy ? nlohmann::json(*report.mc_discrepancy) : nullptr;
    return j;
}

namespace {

constexpr char kBatchMagic[8] = {'M', 'F', 'S', 'B', '0', '0', '0', '1'};

template <class T>
void put(std::ofstream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::ifstream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

}  // namespace

void write_batch_binary(const SampleBatch& batch, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw validation_error("write_batch_binary: cannot open " + path.string());
    os.write(kBatchMagic, sizeof kBatchMagic);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(batch.params.r));
    put<std::uint32_t>(os, 0);
    put<double>(os, batch.params.sigma);
    put<std::uint64_t>(os, batch.prime_set.excluded().value_or(0));
    put<std::uint64_t>(os, batch.seed);
    put<std::uint64_t>(os, batch.n_samples);
    put<std::uint64_t>(os, batch.prime_set.size());
    for (std::uint64_t p : batch.prime_set.primes()) put<std::uint64_t>(os, p);
    os.write(reinterpret_cast<const char*>(batch.values.data()),
             static_cast<std::streamsize>(batch.values.size() * sizeof(double)));
    if (!os) throw numerical_error("write_batch_binary: short write to " + path.string(), 0.0);
}

SampleBatch read_batch_binary(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw validation_error("read_batch_binary: cannot open " + path.string());
    char magic[8];
    is.read(magic, sizeof magic);
    if (!is || !std::equal(std::begin(magic), std::end(magic), std::begin(kBatchMagic)))
        throw validation_error("read_batch_binary: bad magic in " + path.string());
    SampleBatch batch;
    const auto r = get<std::uint32_t>(is);
    get<std::uint32_t>(is);
    const auto sigma = get<double>(is);
    batch.params = SymPowerParams(static_cast<int>(r), sigma);
    const auto excluded = get<std::uint64_t>(is);
    batch.seed = get<std::uint64_t>(is);
    batch.n_samples = get<std::uint64_t>(is);
    const auto n_primes = get<std::uint64_t>(is);
    std::vector<std::uint64_t> primes(n_primes);
    for (auto& p : primes) p = get<std::uint64_t>(is);
    batch.prime_set = PrimeSet(std::move(primes),
                               excluded ? std::optional<std::uint64_t>(excluded) : std::nullopt);
    batch.values.resize(batch.n_samples);
    is.read(reinterpret_cast<char*>(batch.values.data()),
            static_cast<std::streamsize>(batch.values.size() * sizeof(double)));
    if (!is) throw validation_error("read_batch_binary: truncated file " + path.string());
    return batch;
}

std::string batch_to_csv(const SampleBatch& batch) {
    nlohmann::json meta;
    meta["params"] = to_json(batch.params);
    meta["primes"] = batch.prime_set.primes();
    meta["excluded"] = batch.prime_set.excluded() ? nlohmann::json(*batch.prime_set.excluded())
                                                  : nlohmann::json(nullptr);
    meta["seed"] = batch.seed;
    meta["n"] = batch.n_samples;
    std::string out = "# " + meta.dump() + "\nvalue\n";
    for (double v : batch.values) {
        out += format_g17(v);
        out += '\n';
    }
    return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw validation_error("write_text_file: cannot open " + path.string());
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os) throw numerical_error("write_text_file: short write to " + path.string(), 0.0);
}

}  // namespace mfunc
