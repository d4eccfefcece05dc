#pragma once

#include <filesystem>
#include <string>

#include "mfunc/density.hpp"
#include "mfunc/fourier.hpp"
#include "mfunc/moments.hpp"
#include "mfunc/montecarlo.hpp"

#include <json.hpp>

namespace mfunc {

/// 17-significant-digit formatting for text outputs (round-trip safe).
std::string format_g17(double v);

nlohmann::json to_json(const SymPowerParams& params);
SymPowerParams params_from_json(const nlohmann::json& j);

// FourierTable <-> {params, primes, excluded, x_grid:{min,max,n},
//                   values:[[re,im],...], tail:{y,bound}}
nlohmann::json to_json(const FourierTable& table);
FourierTable fourier_table_from_json(const nlohmann::json& j);

// DensityGrid <-> {params, primes, excluded, u_grid:{min,max,n}, values:[...],
//                  mass, support_hint, inversion_tail}
nlohmann::json to_json(const DensityGrid& grid);
DensityGrid density_grid_from_json(const nlohmann::json& j);

/// CSV rows "u,value" preceded by one '#' line holding the JSON metadata.
std::string density_grid_to_csv(const DensityGrid& grid);

nlohmann::json to_json(const MomentReport& report);

/// Compact binary batch, layout v1 (little-endian):
///   magic "MFSB0001" | u32 r | u32 reserved | f64 sigma | u64 excluded(0=none)
///   | u64 seed | u64 n | u64 n_primes | u64 primes[] | f64 values[]
void write_batch_binary(const SampleBatch& batch, const std::filesystem::path& path);
SampleBatch read_batch_binary(const std::filesystem::path& path);

/// CSV rows "value" preceded by one '#' metadata line.
std::string batch_to_csv(const SampleBatch& batch);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace mfunc
