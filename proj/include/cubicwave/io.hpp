#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "cubicwave/spectral.hpp"
#include "cubicwave/threshold.hpp"

namespace cubicwave::io {

using nlohmann::json;

json point_to_json(const SpacetimePoint& p);
SpacetimePoint point_from_json(const json& j);

/// Round-trippable float formatting used by every CSV writer.
std::string fmt(double x);

void write_text(const std::filesystem::path& path, const std::string& text);

/// FieldState as CSV (node coordinates + u1 + u2) plus a JSON grid header.
void write_field(const FieldState& s, const std::filesystem::path& csv_path);

/// Trace CSV (tau, h_norm, sup_u1, a3) and JSON run metadata.
void write_trace(const EvolutionTrace& tr, const json& config_echo,
                 const std::filesystem::path& csv_path,
                 const std::filesystem::path& json_path);

json spectrum_to_json(const SpectrumReport& r);

/// Row-major CSV dump with a JSON sidecar holding the grid metadata.
void write_operator_matrix(const OperatorMatrix& op, const std::filesystem::path& csv_path);

/// FNV-1a over a canonical encoding of (v, cfg); keys the resume state file.
std::string threshold_record_key(const FieldState& v, const json& cfg_echo);

json threshold_record(const std::string& key, const ManifoldSample& rec);

/// Persist a run: trace.csv, run.json and (when states are stored) one CSV
/// per stored state under states/, with the grid described once.
void save_run(const EvolutionTrace& tr, const json& config_echo,
              const std::filesystem::path& dir);

/// Reload a saved run (series, grid, stored states).
EvolutionTrace load_run(const std::filesystem::path& dir);

} // namespace cubicwave::io
