#pragma once

#include <json.hpp>

#include "freqlab/experiments.hpp"

namespace freqlab {

using Json = nlohmann::json;

Json collection_to_json(const RectangleCollection& c);
RectangleCollection collection_from_json(const Json& j);

Json grid_config_to_json(const GridConfig& cfg);
GridConfig grid_config_from_json(const Json& j);
Json exponent_config_to_json(const ExponentConfig& cfg);
ExponentConfig exponent_config_from_json(const Json& j);

// [[re, im], ...]
Json signal_to_json(const Signal& f);
Signal signal_from_json(const Json& j);
// little-endian float64 pairs (re, im)
void save_signal_binary(const std::string& path, const Signal& f);
Signal load_signal_binary(const std::string& path);

Json column_family_to_json(const ColumnFamily& fam);
Json decomposition_to_json(const DecompositionReport& rep);
Json rwt_report_to_json(const RWTReport& rep);

// fixed column order: seed,N,label,r,p,q,s,norm_f,norm_g,norm_t,ratio
std::string sweep_to_csv(const SweepReport& rep);
// config echo plus a content hash of the csv payload
Json sweep_sidecar(const SweepReport& rep, const Json& config);

std::uint64_t fnv1a(const std::string& data);

// time-frequency portrait of a tile pool (debug aid)
std::string svg_tile_diagram(const TilePool& pool, i64 N);

}  // namespace freqlab
