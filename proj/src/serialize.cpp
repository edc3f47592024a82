#include "freqlab/serialize.hpp"

#include <fstream>
#include <sstream>

namespace freqlab {

namespace {

Json dyadic_to_json(const DyadicInterval& d) {
  return Json{{"scale", d.scale}, {"index", d.index}};
}

DyadicInterval dyadic_from_json(const Json& j) {
  return {j.at("scale").get<int>(), j.at("index").get<i64>()};
}

Json tile_key_json(const SuperTile& p) {
  return Json{{"rect_id", p.rect_id}, {"start", p.time.start}};
}

}  // namespace

Json collection_to_json(const RectangleCollection& c) {
  Json rects = Json::array();
  for (const auto& r : c.rects)
    rects.push_back({{"r1", dyadic_to_json(r.r1)}, {"r2", dyadic_to_json(r.r2)}});
  return Json{{"label", c.label}, {"rects", rects}};
}

RectangleCollection collection_from_json(const Json& j) {
  RectangleCollection c;
  c.label = j.value("label", std::string{});
  for (const auto& rj : j.at("rects"))
    c.rects.push_back({dyadic_from_json(rj.at("r1")), dyadic_from_json(rj.at("r2"))});
  return c;
}

Json grid_config_to_json(const GridConfig& cfg) {
  return Json{{"log_size", cfg.log_size},
              {"freq_box_radius", cfg.freq_box_radius},
              {"phi_decay", cfg.phi_decay},
              {"bump_sharpness", cfg.bump_sharpness}};
}

GridConfig grid_config_from_json(const Json& j) {
  GridConfig cfg;
  cfg.log_size = j.value("log_size", cfg.log_size);
  cfg.freq_box_radius = j.value("freq_box_radius", cfg.freq_box_radius);
  cfg.phi_decay = j.value("phi_decay", cfg.phi_decay);
  cfg.bump_sharpness = j.value("bump_sharpness", cfg.bump_sharpness);
  return cfg;
}

Json exponent_config_to_json(const ExponentConfig& cfg) {
  return Json{{"r", cfg.r},     {"r0", cfg.r0},         {"p", cfg.p},
              {"q", cfg.q},     {"theta1", cfg.theta1}};
}

ExponentConfig exponent_config_from_json(const Json& j) {
  ExponentConfig cfg;
  cfg.r = j.value("r", cfg.r);
  cfg.r0 = j.value("r0", cfg.r0);
  cfg.p = j.value("p", cfg.p);
  cfg.q = j.value("q", cfg.q);
  cfg.theta1 = j.value("theta1", cfg.theta1);
  return cfg;
}

Json signal_to_json(const Signal& f) {
  Json out = Json::array();
  for (i64 x = 0; x < f.size(); ++x) out.push_back({f[x].real(), f[x].imag()});
  return out;
}

Signal signal_from_json(const Json& j) {
  Signal f(i64(j.size()));
  for (size_t i = 0; i < j.size(); ++i)
    f[i64(i)] = Complex(j[i].at(0).get<double>(), j[i].at(1).get<double>());
  return f;
}

void save_signal_binary(const std::string& path, const Signal& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_signal_binary: cannot open " + path);
  for (i64 x = 0; x < f.size(); ++x) {
    double re = f[x].real(), im = f[x].imag();
    out.write(reinterpret_cast<const char*>(&re), sizeof(double));
    out.write(reinterpret_cast<const char*>(&im), sizeof(double));
  }
}

Signal load_signal_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw std::runtime_error("load_signal_binary: cannot open " + path);
  auto bytes = in.tellg();
  in.seekg(0);
  i64 n = i64(bytes) / i64(2 * sizeof(double));
  Signal f(n);
  for (i64 x = 0; x < n; ++x) {
    double re = 0, im = 0;
    in.read(reinterpret_cast<char*>(&re), sizeof(double));
    in.read(reinterpret_cast<char*>(&im), sizeof(double));
    f[x] = Complex(re, im);
  }
  return f;
}

Json column_family_to_json(const ColumnFamily& fam) {
  Json cols = Json::array();
  for (const auto& c : fam.columns) {
    Json members = Json::array();
    for (const auto& p : c.members) members.push_back(tile_key_json(p));
    cols.push_back({{"top", tile_key_json(c.top)}, {"members", members}});
  }
  return Json{{"shift", fam.shift}, {"columns", cols}};
}

Json decomposition_to_json(const DecompositionReport& rep) {
  Json levels = Json::array();
  for (const auto& lvl : rep.levels)
    levels.push_back({{"n", lvl.n},
                      {"f_first", lvl.f_first},
                      {"tau_f", lvl.tau_f},
                      {"tau_h", lvl.tau_h},
                      {"size_f_entry", lvl.size_f_entry},
                      {"size_h_entry", lvl.size_h_entry},
                      {"top_measure_f", lvl.top_measure_f},
                      {"top_measure_h", lvl.top_measure_h},
                      {"family_f", column_family_to_json(lvl.fam_f)},
                      {"family_h", column_family_to_json(lvl.fam_h)}});
  Json residual = Json::array();
  for (const auto& p : rep.residual) residual.push_back(tile_key_json(p));
  return Json{{"shift", rep.shift},
              {"pool_size", rep.pool_size},
              {"energy_f_greedy", rep.energy_f_greedy},
              {"energy_h_greedy", rep.energy_h_greedy},
              {"energy_f_hat", rep.energy_f_hat},
              {"energy_h_hat", rep.energy_h_hat},
              {"size_f0", rep.size_f0},
              {"size_h0", rep.size_h0},
              {"restarts", rep.restarts},
              {"levels", levels},
              {"residual", residual}};
}

Json rwt_report_to_json(const RWTReport& rep) {
  Json per_d = Json::array();
  for (const auto& [d, v] : rep.per_d) per_d.push_back({{"d", d}, {"lambda", v}});
  return Json{{"lambda", rep.lambda},
              {"ratio", rep.ratio},
              {"hprime_fraction", rep.hprime_fraction},
              {"size_f_small", rep.size_f_small},
              {"size_f_small_bound", rep.size_f_small_bound},
              {"g_avg_small", rep.g_avg_small},
              {"g_avg_small_bound", rep.g_avg_small_bound},
              {"size_h_all", rep.size_h_all},
              {"n_small", rep.n_small},
              {"n_large", rep.n_large},
              {"doublings", rep.doublings},
              {"per_d", per_d}};
}

std::string sweep_to_csv(const SweepReport& rep) {
  std::ostringstream out;
  out.precision(17);
  out << "seed,N,label,r,p,q,s,norm_f,norm_g,norm_t,ratio\n";
  for (const auto& r : rep.rows)
    out << r.seed << ',' << r.N << ',' << r.label << ',' << r.r << ',' << r.p << ',' << r.q
        << ',' << r.s << ',' << r.norm_f << ',' << r.norm_g << ',' << r.norm_t << ','
        << r.ratio << '\n';
  return out.str();
}

Json sweep_sidecar(const SweepReport& rep, const Json& config) {
  std::string csv = sweep_to_csv(rep);
  return Json{{"config", config},
              {"rows", rep.rows.size()},
              {"content_hash", fnv1a(csv)}};
}

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string svg_tile_diagram(const TilePool& pool, i64 N) {
  // x axis: time [0, N); y axis: centered frequency [-N/2, N/2)
  const double w = 640.0, h = 640.0;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
  for (const auto& p : pool) {
    FreqInterval s1 = p.rect.side1();
    double x = double(p.time.start) / double(N) * w;
    double tw = double(p.time.len) / double(N) * w;
    double y = (0.5 - double(s1.hi) / double(N)) * h;
    double th = double(s1.length()) / double(N) * h;
    out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << tw << "\" height=\"" << th
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace freqlab
