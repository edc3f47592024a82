#include "freqlab/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace freqlab {

namespace {

using TileKey = std::pair<size_t, i64>;
TileKey key_of(const SuperTile& p) { return {p.rect_id, p.time.start}; }

double pow_or_one(double base, double e) {
  if (e == 0.0) return 1.0;
  return std::pow(base, e);
}

double snap_up(double e) {
  if (e <= 0) return 0;
  return std::ldexp(1.0, int(std::ceil(std::log2(e) - 1e-12)));
}

}  // namespace

SingleDecomposition decompose_f(const TilePool& pool, const Signal& f, i64 shift, int n,
                                double energy_hat, const ExponentConfig& cfg) {
  SingleDecomposition out;
  out.high.shift = shift;
  if (pool.empty() || energy_hat <= 0) {
    out.low = pool;
    return out;
  }
  auto avgs = tile_averages_f(pool, f, cfg);
  out.energy_hat = energy_hat;
  for (;;) {
    double tau = out.energy_hat * std::ldexp(1.0, -n - 1);
    TilePool stock, low;
    for (size_t i = 0; i < pool.size(); ++i)
      (avgs[i] >= tau ? stock : low).push_back(pool[i]);
    auto [fam, rest] = extract_family(stock, shift, [](const Column&) { return true; });
    low.insert(low.end(), rest.begin(), rest.end());
    // candidacy against the energy: the extracted family is one of the greedy
    // energy candidates, so its value cannot exceed the (snapped) energy
    if (tau * std::pow(fam.top_measure(), 1.0 / cfg.r0) <=
        out.energy_hat * (1.0 + 1e-9)) {
      out.high = std::move(fam);
      out.low = std::move(low);
      out.threshold = tau;
      return out;
    }
    out.energy_hat *= 2;
    if (++out.doublings > 64)
      throw std::logic_error("decompose_f: energy doubling did not stabilize");
  }
}

SingleDecomposition decompose_h(const TilePool& pool, const VectorFunction& h, i64 shift, int n,
                                double energy_hat, const GridConfig& gcfg,
                                const ExponentConfig& cfg) {
  SingleDecomposition out;
  out.high.shift = shift;
  if (pool.empty() || energy_hat <= 0) {
    out.low = pool;
    return out;
  }
  auto w = tile_weights_h(pool, h, shift, gcfg, cfg);
  std::map<TileKey, double> wmap;
  for (size_t i = 0; i < pool.size(); ++i) wmap[key_of(pool[i])] = w[i];
  const double rp = cfg.r_prime();
  out.energy_hat = energy_hat;
  for (;;) {
    double tau = out.energy_hat * std::pow(cfg.gamma(), -double(n) - 1.0);
    double tau_rp = std::pow(tau, rp);
    auto accept = [&](const Column& c) {
      double acc = 0;
      for (const auto& p : c.members) acc += wmap.at(key_of(p));
      return acc / double(c.top.time.len) >= tau_rp;
    };
    auto [fam, rest] = extract_family(pool, shift, accept);
    if (tau * std::pow(fam.top_measure(), 1.0 / rp) <= out.energy_hat * (1.0 + 1e-9)) {
      out.high = std::move(fam);
      out.low = std::move(rest);
      out.threshold = tau;
      return out;
    }
    out.energy_hat *= 2;
    if (++out.doublings > 64)
      throw std::logic_error("decompose_h: energy doubling did not stabilize");
  }
}

bool DecompositionReport::is_partition(const TilePool& pool) const {
  std::map<TileKey, int> count;
  for (const auto& p : pool) count[key_of(p)] = 0;
  auto tally = [&](const TilePool& tiles) {
    for (const auto& p : tiles) {
      auto it = count.find(key_of(p));
      if (it == count.end()) return false;
      ++it->second;
    }
    return true;
  };
  for (const auto& lvl : levels) {
    for (const auto& c : lvl.fam_f.columns)
      if (!tally(c.members)) return false;
    for (const auto& c : lvl.fam_h.columns)
      if (!tally(c.members)) return false;
  }
  if (!tally(residual)) return false;
  for (const auto& [k, v] : count)
    if (v != 1) return false;
  return true;
}

DecompositionReport global_decompose(const TilePool& pool, const Signal& f,
                                     const VectorFunction& h, i64 shift,
                                     const GridConfig& gcfg, const ExponentConfig& cfg) {
  DecompositionReport rep;
  rep.shift = shift;
  rep.pool_size = pool.size();
  rep.energy_f_greedy = energy_f(pool, f, shift, cfg, EnergyMode::Greedy).value;
  rep.energy_h_greedy = energy_h(pool, h, shift, gcfg, cfg, EnergyMode::Greedy).value;
  rep.size_f0 = size_f(pool, f, cfg);
  rep.size_h0 = size_h(pool, h, shift, gcfg, cfg);
  double hat_f = snap_up(rep.energy_f_greedy);
  double hat_h = snap_up(rep.energy_h_greedy);
  const double rp = cfg.r_prime();
  for (;;) {
    rep.levels.clear();
    TilePool current = pool;
    bool restarted = false;
    for (int n = 0;; ++n) {
      if (n > 2000) throw std::logic_error("global_decompose: level budget exceeded");
      double sf = size_f(current, f, cfg);
      double sh = size_h(current, h, shift, gcfg, cfg);
      if (sf <= 0 && sh <= 0) break;
      DecompositionLevel lvl;
      lvl.n = n;
      lvl.size_f_entry = sf;
      lvl.size_h_entry = sh;
      // extract from whichever side is (relatively) largest first
      double ratio_f = hat_f > 0 ? sf / hat_f : 0;
      double ratio_h = hat_h > 0 ? std::pow(sh / hat_h, rp / 2.0) : 0;
      lvl.f_first = ratio_f >= ratio_h;
      auto run_f = [&]() {
        SingleDecomposition d = decompose_f(current, f, shift, n, hat_f, cfg);
        if (d.doublings > 0) {
          hat_f = d.energy_hat;
          ++rep.restarts;
          restarted = true;
          return;
        }
        lvl.tau_f = d.threshold;
        lvl.fam_f = std::move(d.high);
        lvl.top_measure_f = lvl.fam_f.top_measure();
        current = std::move(d.low);
      };
      auto run_h = [&]() {
        SingleDecomposition d = decompose_h(current, h, shift, n, hat_h, gcfg, cfg);
        if (d.doublings > 0) {
          hat_h = d.energy_hat;
          ++rep.restarts;
          restarted = true;
          return;
        }
        lvl.tau_h = d.threshold;
        lvl.fam_h = std::move(d.high);
        lvl.top_measure_h = lvl.fam_h.top_measure();
        current = std::move(d.low);
      };
      if (lvl.f_first) {
        run_f();
        if (!restarted) run_h();
      } else {
        run_h();
        if (!restarted) run_f();
      }
      if (restarted) break;
      rep.levels.push_back(std::move(lvl));
    }
    if (!restarted) {
      rep.residual = std::move(current);
      break;
    }
    if (rep.restarts > 200)
      throw std::logic_error("global_decompose: restart budget exceeded");
  }
  rep.energy_f_hat = hat_f;
  rep.energy_h_hat = hat_h;
  return rep;
}

GenericEstimateReport generic_estimate(const DecompositionReport& report, const Signal& f,
                                       const Signal& g, const VectorFunction& h,
                                       const GridConfig& gcfg, const ExponentConfig& cfg,
                                       double theta1) {
  if (theta1 < 0 || theta1 > 1)
    throw std::invalid_argument("generic_estimate: theta1 must lie in [0,1]");
  GenericEstimateReport out;
  const i64 N = gcfg.size();
  const double r = cfg.r, rp = cfg.r_prime();
  const i64 shift = report.shift;

  // reassemble the pool and the participating rectangles
  TilePool all;
  for (const auto& lvl : report.levels) {
    for (const auto& c : lvl.fam_f.columns)
      all.insert(all.end(), c.members.begin(), c.members.end());
    for (const auto& c : lvl.fam_h.columns)
      all.insert(all.end(), c.members.begin(), c.members.end());
  }
  all.insert(all.end(), report.residual.begin(), report.residual.end());
  RectangleCollection rects;
  {
    std::map<size_t, FreqRectangle> seen;
    for (const auto& p : all) seen.emplace(p.rect_id, p.rect);
    for (const auto& [id, rc] : seen) rects.rects.push_back(rc);
  }
  BreakpointSet bp = BreakpointSet::dyadic(N, rects);
  RealSignal vr = variational_carleson(g, r, bp).pow(r);
  for (const auto& p : all) {
    double acc = 0;
    for (i64 x : p.time.shifted(shift).points()) acc += vr[x];
    out.g_factor = std::max(out.g_factor, std::pow(acc / double(p.time.len), 1.0 / r));
  }

  for (const auto& lvl : report.levels) {
    GenericEstimateLevel gl;
    gl.n = lvl.n;
    double c_here = 0;
    TilePool members;
    for (const auto* fam : {&lvl.fam_f, &lvl.fam_h}) {
      for (const auto& c : fam->columns) {
        members.insert(members.end(), c.members.begin(), c.members.end());
        c_here = std::max(c_here, std::pow(column_prior_constant(c, gcfg, cfg), 1.0 / rp));
      }
    }
    out.c_col = std::max(out.c_col, c_here);
    gl.lambda = shifted_form(members, f, g, h, shift, gcfg, cfg);
    gl.level_bound = c_here * out.g_factor * lvl.size_f_entry * lvl.size_h_entry *
                     (lvl.top_measure_f + lvl.top_measure_h);
    out.lhs += gl.lambda;
    out.levels.push_back(gl);
  }

  const double sigma = cfg.sigma(), th2 = 1.0 - theta1, r0 = cfg.r0;
  out.rhs = out.g_factor * pow_or_one(report.size_f0, sigma * theta1) *
            pow_or_one(report.energy_f_hat, 1.0 - sigma * theta1) *
            pow_or_one(report.size_h0, rp * sigma * th2 / r0) *
            pow_or_one(report.energy_h_hat, 1.0 - rp * sigma * th2 / r0);
  double geo = 1.0 / (1.0 - std::pow(2.0, -sigma)) / (1.0 - std::pow(2.0, -r0 / r));
  out.constant = (out.c_col > 0 ? out.c_col : 1.0) * std::pow(2.0, r0 + 2.0) * geo;
  out.ok = out.lhs <= out.constant * out.rhs * (1.0 + 1e-9) + 1e-12;
  return out;
}

ShiftReduction reduce_to_shifted_forms(const Signal& f, const Signal& g,
                                       const VectorFunction& h, const RectangleCollection& c,
                                       const GridConfig& gcfg, const ExponentConfig& cfg,
                                       int decay) {
  ShiftReduction out;
  TilePool pool = enumerate_super_tiles(c, gcfg);
  out.lhs = std::abs(trilinear_form(f, g, h, c));
  i64 max_r1 = 1;
  for (const auto& rc : c.rects) max_r1 = std::max(max_r1, rc.r1.length());
  for (i64 n = -max_r1 / 2; n < (max_r1 + 1) / 2; ++n)
    out.weighted += std::pow(1.0 + std::abs(double(n)), -double(decay)) *
                    shifted_form(pool, f, g, h, n, gcfg, cfg);
  out.constant = out.weighted > 0 ? out.lhs / out.weighted : 0.0;
  return out;
}

}  // namespace freqlab
