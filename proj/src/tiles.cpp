#include "freqlab/tiles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace freqlab {

namespace {

// tie-break order for top selection: minimize inf I_P^n, then maximize
// sup R1(P); remaining ties broken by ids for determinism
struct TieBreak {
  i64 n;
  bool operator()(const SuperTile& a, const SuperTile& b) const {
    i64 sa = a.time.shifted(n).start, sb = b.time.shifted(n).start;
    if (sa != sb) return sa < sb;
    i64 ra = a.rect.side1().hi, rb = b.rect.side1().hi;
    if (ra != rb) return ra > rb;
    if (a.rect_id != b.rect_id) return a.rect_id < b.rect_id;
    return a.time.start < b.time.start;
  }
};

std::map<size_t, const FreqRectangle*> distinct_rects(const TilePool& pool) {
  std::map<size_t, const FreqRectangle*> m;
  for (const auto& p : pool) m.emplace(p.rect_id, &p.rect);
  return m;
}

// candidate thresholds: the attained values themselves (the sup of
// t * measure(t)^{1/e} is achieved at one of them) plus the powers of two in
// between (the decomposition thresholds, so extracted families coincide with
// scanned ones)
std::vector<double> threshold_list(const std::vector<double>& vals) {
  std::set<double> t;
  double lo = 0, hi = 0;
  for (double v : vals)
    if (v > 0) {
      t.insert(v);
      if (lo == 0 || v < lo) lo = v;
      if (v > hi) hi = v;
    }
  if (hi > 0) {
    int mlo = std::max(int(std::floor(std::log2(lo))), -200);
    int mhi = std::min(int(std::floor(std::log2(hi))), 200);
    for (int m = mlo; m <= mhi; ++m) t.insert(std::ldexp(1.0, m));
  }
  return {t.begin(), t.end()};
}

}  // namespace

TilePool enumerate_super_tiles(const RectangleCollection& c, const GridConfig& cfg) {
  cfg.validate();
  const i64 N = cfg.size();
  TilePool out;
  for (size_t id = 0; id < c.rects.size(); ++id) {
    const auto& R = c.rects[id];
    i64 l1 = R.r1.length(), l2 = R.r2.length();
    if (l2 < l1)
      throw std::invalid_argument(
          "enumerate_super_tiles: low-eccentricity rectangle (use the mirror mode)");
    i64 ilen = N / l1;
    for (i64 s = 0; s < N; s += ilen) out.push_back({id, R, {s, ilen, N}});
  }
  return out;
}

std::vector<SmallTile> small_tiles_of(const SuperTile& p, i64 n, const GridConfig& cfg) {
  (void)cfg;
  const i64 N = p.time.N;
  i64 w = N / p.rect.r2.length();
  TimeInterval win = p.time.shifted(n);
  std::vector<SmallTile> out;
  for (i64 off = 0; off < win.len; off += w)
    out.push_back({p.rect_id, {(win.start + off) % N, w, N}});
  return out;
}

bool order_prec_eq(const SuperTile& p, const SuperTile& pp, i64 n) {
  return p.rect.side1().contains(pp.rect.side1()) &&
         p.time.shifted(n).subset_of(pp.time.shifted(n));
}

bool order_lt(const SuperTile& p, const SuperTile& pp) {
  FreqInterval a = p.rect.side1(), b = pp.rect.side1();
  return a.contains(b) && a != b && p.time.subset_of(pp.time) && !(p.time == pp.time);
}

bool shifted_tiles_intersect(const SuperTile& a, const SuperTile& b, i64 n) {
  return a.rect.side1().intersects(b.rect.side1()) &&
         a.time.shifted(n).intersects(b.time.shifted(n));
}

Column maximal_column(const SuperTile& top, const TilePool& pool, i64 n) {
  Column c{top, {}, n};
  bool found = false;
  for (const auto& p : pool) {
    if (p == top) found = true;
    if (order_prec_eq(p, top, n)) c.members.push_back(p);
  }
  if (!found) throw std::invalid_argument("maximal_column: top not in pool");
  // structure lemma (asserted on every construction): members' small tiles
  // sit inside the top window, and distinct member rectangles have disjoint R2
  TimeInterval topwin = top.time.shifted(n);
  GridConfig probe;
  for (const auto& p : c.members) {
    for (const auto& rho : small_tiles_of(p, n, probe))
      if (!rho.time.subset_of(topwin))
        throw std::logic_error("column structure: small tile escapes top window");
  }
  auto rects = distinct_rects(c.members);
  for (auto i = rects.begin(); i != rects.end(); ++i)
    for (auto j = std::next(i); j != rects.end(); ++j)
      if (i->second->side2().intersects(j->second->side2()))
        throw std::logic_error("column structure: member R2 sides intersect");
  return c;
}

bool mutual_disjointness(const ColumnFamily& fam) {
  for (size_t i = 0; i < fam.columns.size(); ++i)
    for (size_t j = i + 1; j < fam.columns.size(); ++j) {
      const auto& a = fam.columns[i];
      const auto& b = fam.columns[j];
      for (const auto& p : a.members)
        for (const auto& q : b.members)
          if (p == q) return false;
      if (shifted_tiles_intersect(a.top, b.top, fam.shift)) return false;
    }
  return true;
}

std::pair<ColumnFamily, TilePool>
extract_family(const TilePool& stock, i64 n,
               const std::function<bool(const Column&)>& accept) {
  ColumnFamily fam;
  fam.shift = n;
  TilePool live = stock;
  std::vector<char> retired(live.size(), 0);  // retired as top candidates
  TieBreak tb{n};
  while (true) {
    // evaluate every remaining candidate; failures are retired permanently
    std::vector<size_t> passers;
    for (size_t i = 0; i < live.size(); ++i) {
      if (retired[i]) continue;
      if (accept(maximal_column(live[i], live, n)))
        passers.push_back(i);
      else
        retired[i] = 1;
    }
    if (passers.empty()) break;
    // tie-break-first maximal element among the passers (maximality here is
    // what makes the extracted shifted top tiles pairwise disjoint)
    int pick = -1;
    for (size_t i : passers) {
      bool maximal = true;
      for (size_t j : passers)
        if (j != i && order_prec(live[i], live[j], n)) { maximal = false; break; }
      if (!maximal) continue;
      if (pick < 0 || tb(live[i], live[size_t(pick)])) pick = int(i);
    }
    Column c = maximal_column(live[size_t(pick)], live, n);
    fam.columns.push_back(c);
    TilePool next;
    std::vector<char> next_retired;
    for (size_t i = 0; i < live.size(); ++i) {
      bool removed = false;
      for (const auto& m : c.members)
        if (live[i] == m) { removed = true; break; }
      if (!removed) {
        next.push_back(live[i]);
        next_retired.push_back(retired[i]);
      }
    }
    live = std::move(next);
    retired = std::move(next_retired);
  }
  return {std::move(fam), std::move(live)};
}

std::vector<double> tile_averages_f(const TilePool& pool, const Signal& f,
                                    const ExponentConfig& cfg) {
  std::map<size_t, RealSignal> cache;  // |pi_{R1} f|^{r0} per rectangle
  for (const auto& [id, rect] : distinct_rects(pool))
    cache.emplace(id, sharp_projection(f, rect->side1()).abs().pow(cfg.r0));
  std::vector<double> out;
  out.reserve(pool.size());
  for (const auto& p : pool) {
    const RealSignal& a = cache.at(p.rect_id);
    double s = 0;
    for (i64 x : p.time.points()) s += a[x];
    out.push_back(std::pow(s / double(p.time.len), 1.0 / cfg.r0));
  }
  return out;
}

std::vector<double> tile_weights_h(const TilePool& pool, const VectorFunction& h, i64 n,
                                   const GridConfig& gcfg, const ExponentConfig& cfg) {
  const double rp = cfg.r_prime();
  std::map<size_t, RealSignal> habs;  // |h_R|^{r'}
  for (const auto& [id, rect] : distinct_rects(pool)) {
    if (id >= h.components.size())
      throw std::invalid_argument("tile_weights_h: h misaligned with pool");
    habs.emplace(id, h.components[id].abs().pow(rp));
  }
  std::vector<double> out;
  out.reserve(pool.size());
  for (const auto& p : pool) {
    RealSignal phi = weight_phi(p.time.shifted(n), gcfg);
    out.push_back((habs.at(p.rect_id) * phi).sum());
  }
  return out;
}

double size_f(const TilePool& pool, const Signal& f, const ExponentConfig& cfg) {
  if (pool.empty()) return 0.0;
  auto avgs = tile_averages_f(pool, f, cfg);
  return *std::max_element(avgs.begin(), avgs.end());
}

double size_h(const TilePool& pool, const VectorFunction& h, i64 n, const GridConfig& gcfg,
              const ExponentConfig& cfg) {
  if (pool.empty()) return 0.0;
  auto w = tile_weights_h(pool, h, n, gcfg, cfg);
  double best = 0;
  for (size_t t = 0; t < pool.size(); ++t) {
    double acc = 0;
    for (size_t i = 0; i < pool.size(); ++i)
      if (order_prec_eq(pool[i], pool[t], n)) acc += w[i];
    best = std::max(best, acc / double(pool[t].time.len));
  }
  return std::pow(best, 1.0 / cfg.r_prime());
}

double size_h_exhaustive(const TilePool& pool, const VectorFunction& h, i64 n,
                         const GridConfig& gcfg, const ExponentConfig& cfg) {
  const size_t K = pool.size();
  if (K == 0) return 0.0;
  if (K > 14) throw std::invalid_argument("size_h_exhaustive: pool too large");
  auto w = tile_weights_h(pool, h, n, gcfg, cfg);
  double best = 0;
  for (std::uint32_t mask = 1; mask < (1u << K); ++mask) {
    for (size_t t = 0; t < K; ++t) {
      if (!(mask >> t & 1)) continue;
      bool column = true;
      double acc = 0;
      for (size_t i = 0; i < K && column; ++i) {
        if (!(mask >> i & 1)) continue;
        if (!order_prec_eq(pool[i], pool[t], n)) column = false;
        acc += w[i];
      }
      if (column) best = std::max(best, acc / double(pool[t].time.len));
    }
  }
  return std::pow(best, 1.0 / cfg.r_prime());
}

EnergyResult energy_f(const TilePool& pool, const Signal& f, i64 n, const ExponentConfig& cfg,
                      EnergyMode mode) {
  EnergyResult res;
  if (pool.empty()) return res;
  auto avgs = tile_averages_f(pool, f, cfg);
  const double inv_r0 = 1.0 / cfg.r0;
  if (mode == EnergyMode::Exhaustive && pool.size() > 14)
    throw std::invalid_argument("energy exhaustive: pool too large");
  for (double t : threshold_list(avgs)) {
    TilePool stock;
    for (size_t i = 0; i < pool.size(); ++i)
      if (avgs[i] >= t) stock.push_back(pool[i]);
    if (stock.empty()) continue;
    if (mode == EnergyMode::Greedy) {
      auto [fam, rest] = extract_family(stock, n, [](const Column&) { return true; });
      double v = t * std::pow(fam.top_measure(), inv_r0);
      if (v > res.value) {
        res.value = v;
        res.threshold = t;
        res.family = std::move(fam);
      }
    } else {
      // max-weight antichain (w.r.t. shifted-tile intersection) over the stock
      const size_t K = stock.size();
      std::vector<std::uint32_t> bad(K, 0);
      for (size_t i = 0; i < K; ++i)
        for (size_t j = 0; j < K; ++j)
          if (i != j && shifted_tiles_intersect(stock[i], stock[j], n))
            bad[i] |= (1u << j);
      double best_meas = 0;
      for (std::uint32_t mask = 1; mask < (1u << K); ++mask) {
        bool ok = true;
        double meas = 0;
        for (size_t i = 0; i < K && ok; ++i) {
          if (!(mask >> i & 1)) continue;
          if (mask & bad[i]) ok = false;
          meas += double(stock[i].time.len);
        }
        if (ok) best_meas = std::max(best_meas, meas);
      }
      double v = t * std::pow(best_meas, inv_r0);
      if (v > res.value) {
        res.value = v;
        res.threshold = t;
      }
    }
  }
  return res;
}

namespace {

// can the pool tiles be assigned to the chosen columns so that every column's
// weight sum reaches its demand?  (exhaustive h-energy feasibility)
bool assignable(const std::vector<double>& demand, std::vector<double> have,
                const std::vector<std::vector<int>>& options,
                const std::vector<double>& wmulti, size_t idx) {
  double remaining = 0;
  for (size_t i = idx; i < wmulti.size(); ++i) remaining += wmulti[i];
  double deficit = 0;
  for (size_t c = 0; c < demand.size(); ++c) deficit += std::max(0.0, demand[c] - have[c]);
  if (deficit <= 1e-12) return true;
  if (remaining < deficit - 1e-12) return false;
  if (idx >= wmulti.size()) return false;
  for (int c : options[idx]) {
    have[size_t(c)] += wmulti[idx];
    if (assignable(demand, have, options, wmulti, idx + 1)) return true;
    have[size_t(c)] -= wmulti[idx];
  }
  return assignable(demand, have, options, wmulti, idx + 1);
}

}  // namespace

EnergyResult energy_h(const TilePool& pool, const VectorFunction& h, i64 n,
                      const GridConfig& gcfg, const ExponentConfig& cfg, EnergyMode mode) {
  EnergyResult res;
  if (pool.empty()) return res;
  auto w = tile_weights_h(pool, h, n, gcfg, cfg);
  const double rp = cfg.r_prime();
  const double inv_rp = 1.0 / rp;
  // candidate column quantities bound the threshold range
  std::vector<double> qs;
  for (size_t t = 0; t < pool.size(); ++t) {
    double acc = 0;
    for (size_t i = 0; i < pool.size(); ++i)
      if (order_prec_eq(pool[i], pool[t], n)) acc += w[i];
    qs.push_back(std::pow(acc / double(pool[t].time.len), inv_rp));
  }
  if (mode == EnergyMode::Exhaustive && pool.size() > 14)
    throw std::invalid_argument("energy exhaustive: pool too large");
  for (double t : threshold_list(qs)) {
    double t_rp = std::pow(t, rp);
    if (mode == EnergyMode::Greedy) {
      auto accept = [&](const Column& c) {
        double acc = 0;
        for (const auto& p : c.members)
          for (size_t i = 0; i < pool.size(); ++i)
            if (pool[i] == p) { acc += w[i]; break; }
        return acc / double(c.top.time.len) >= t_rp;
      };
      auto [fam, rest] = extract_family(pool, n, accept);
      if (fam.columns.empty()) continue;
      double v = t * std::pow(fam.top_measure(), inv_rp);
      if (v > res.value) {
        res.value = v;
        res.threshold = t;
        res.family = std::move(fam);
      }
    } else {
      const size_t K = pool.size();
      std::vector<std::uint32_t> bad(K, 0);
      for (size_t i = 0; i < K; ++i)
        for (size_t j = 0; j < K; ++j)
          if (i != j && shifted_tiles_intersect(pool[i], pool[j], n)) bad[i] |= (1u << j);
      double best_meas = 0;
      for (std::uint32_t mask = 1; mask < (1u << K); ++mask) {
        bool anti = true;
        for (size_t i = 0; i < K && anti; ++i)
          if ((mask >> i & 1) && (mask & bad[i])) anti = false;
        if (!anti) continue;
        // columns = chosen tops; check assignment feasibility
        std::vector<int> tops;
        for (size_t i = 0; i < K; ++i)
          if (mask >> i & 1) tops.push_back(int(i));
        double meas = 0;
        std::vector<double> demand, have;
        for (int tp : tops) {
          meas += double(pool[size_t(tp)].time.len);
          demand.push_back(t_rp * double(pool[size_t(tp)].time.len));
          have.push_back(w[size_t(tp)]);
        }
        if (meas <= best_meas) continue;
        std::vector<std::vector<int>> options;
        std::vector<double> wmulti;
        for (size_t i = 0; i < K; ++i) {
          if (mask >> i & 1) continue;
          std::vector<int> opts;
          for (size_t c = 0; c < tops.size(); ++c)
            if (order_prec_eq(pool[i], pool[size_t(tops[c])], n)) opts.push_back(int(c));
          if (opts.size() == 1)
            have[size_t(opts[0])] += w[i];  // unique home: always assign
          else if (opts.size() > 1) {
            options.push_back(std::move(opts));
            wmulti.push_back(w[i]);
          }
        }
        if (assignable(demand, have, options, wmulti, 0)) best_meas = meas;
      }
      if (best_meas > 0) {
        double v = t * std::pow(best_meas, inv_rp);
        if (v > res.value) {
          res.value = v;
          res.threshold = t;
        }
      }
    }
  }
  return res;
}

EnergyBoundsReport energy_bounds_check(const TilePool& pool, const Signal& f,
                                       const VectorFunction& h, i64 n, const GridConfig& gcfg,
                                       const ExponentConfig& cfg, double C) {
  EnergyBoundsReport rep;
  rep.energy_f_value = energy_f(pool, f, n, cfg, EnergyMode::Greedy).value;
  rep.energy_h_value = energy_h(pool, h, n, gcfg, cfg, EnergyMode::Greedy).value;
  const i64 N = gcfg.size();
  BreakpointSet bp = BreakpointSet::dyadic(N);
  RealSignal v = variational_carleson(f, cfg.r0, bp);
  rep.majorant_f = log_plus(double(n)) * std::pow(v.pow(cfg.r0).sum(), 1.0 / cfg.r0);
  double rp = cfg.r_prime();
  double acc = 0;
  for (const auto& comp : h.components) acc += comp.abs().pow(rp).sum();
  rep.majorant_h = std::pow(acc, 1.0 / rp);  // ||h||_{L^{r'}(l^{r'})}
  rep.ratio_f = rep.majorant_f > 0 ? rep.energy_f_value / rep.majorant_f : 0;
  rep.ratio_h = rep.majorant_h > 0 ? rep.energy_h_value / rep.majorant_h : 0;
  if (rep.energy_f_value > C * rep.majorant_f + 1e-12)
    throw std::logic_error("energy_bounds_check: f energy exceeds majorant");
  if (rep.energy_h_value > C * rep.majorant_h + 1e-12)
    throw std::logic_error("energy_bounds_check: h energy exceeds majorant");
  return rep;
}

double shifted_form(const TilePool& pool, const Signal& f, const Signal& g,
                    const VectorFunction& h, i64 n, const GridConfig& gcfg,
                    const ExponentConfig& cfg) {
  if (pool.empty()) return 0.0;
  const i64 N = gcfg.size();
  BumpProfile prof{gcfg.bump_sharpness};
  auto avgs = tile_averages_f(pool, f, cfg);
  std::map<size_t, RealSignal> g2;    // |pi_{R2} g|^2
  std::map<size_t, RealSignal> hconv; // |h_R * chi_check_{R3}|
  for (const auto& [id, rect] : distinct_rects(pool)) {
    g2.emplace(id, sharp_projection(g, rect->side2()).abs().square());
    if (id >= h.components.size())
      throw std::invalid_argument("shifted_form: h misaligned with pool");
    hconv.emplace(id, convolve_with_bump(h.components[id], rect->minus_sum(), prof).abs());
  }
  double total = 0;
  for (size_t i = 0; i < pool.size(); ++i) {
    const auto& p = pool[i];
    const RealSignal& gg = g2.at(p.rect_id);
    const RealSignal& hh = hconv.at(p.rect_id);
    double inner = 0;
    for (const auto& rho : small_tiles_of(p, n, gcfg)) {
      double l2 = 0, linf = 0;
      for (i64 x : rho.time.points()) {
        l2 += gg[x];
        linf = std::max(linf, hh[x]);
      }
      inner += std::sqrt(double(rho.time.len)) * std::sqrt(l2) * linf;
    }
    total += avgs[i] * inner;
  }
  (void)N;
  return total;
}

double column_prior_constant(const Column& c, const GridConfig& gcfg, const ExponentConfig& cfg) {
  const i64 N = gcfg.size();
  const double r = cfg.r, rp = cfg.r_prime();
  const i64 n = c.shift;
  BumpProfile prof{gcfg.bump_sharpness};
  double out = 0;
  for (const auto& p : c.members) {
    // kernel of the R3 filter: kappa(u) = idft(multiplier)(u)/sqrt(N)
    RealSignal mult = bump_multiplier(p.rect.minus_sum(), prof, N);
    Signal kappa = idft(mult.cast<Complex>().eval()) / std::sqrt(double(N));
    RealSignal kabs = kappa.abs();
    RealSignal phiP = weight_phi(p.time.shifted(n), gcfg);
    double c_tiles = 0;
    RealSignal phisum = RealSignal::Zero(N);
    for (const auto& rho : small_tiles_of(p, n, gcfg)) {
      RealSignal phi_rho = weight_phi(rho.time, gcfg);
      phisum += phi_rho;
      double dmax = 0;
      for (i64 y : rho.time.points()) {
        double d = 0;
        for (i64 z = 0; z < N; ++z)
          d += std::pow(kabs[((y - z) % N + N) % N], r) * std::pow(phi_rho[z], -r / rp);
        dmax = std::max(dmax, d);
      }
      c_tiles = std::max(c_tiles, double(rho.time.len) * std::pow(dmax, rp / r));
    }
    double c_sum = (phisum / phiP).maxCoeff();
    out = std::max(out, c_tiles * c_sum);
  }
  return out;
}

ColumnBoundReport column_bound_check(const Column& c, const Signal& f, const Signal& g,
                                     const VectorFunction& h, const GridConfig& gcfg,
                                     const ExponentConfig& cfg) {
  ColumnBoundReport rep;
  const i64 N = gcfg.size();
  const double r = cfg.r, rp = cfg.r_prime();
  const i64 n = c.shift;
  BumpProfile prof{gcfg.bump_sharpness};

  rep.lhs = shifted_form(c.members, f, g, h, n, gcfg, cfg);
  double Sf = size_f(c.members, f, cfg);
  double Sh = size_h(c.members, h, n, gcfg, cfg);

  // V^r g with breakpoints at the member rectangles' endpoints
  RectangleCollection local;
  for (const auto& [id, rect] : distinct_rects(c.members)) local.rects.push_back(*rect);
  BreakpointSet bp = BreakpointSet::dyadic(N, local);
  RealSignal vr = variational_carleson(g, r, bp).pow(r);

  std::map<size_t, RealSignal> g2, gr;
  for (const auto& [id, rect] : distinct_rects(c.members)) {
    RealSignal a = sharp_projection(g, rect->side2()).abs();
    g2.emplace(id, a.square());
    gr.emplace(id, a.pow(r));
  }

  // step (a): per member, Hoelder across small tiles with constant 1
  rep.step_a_margin = 0;
  for (const auto& p : c.members) {
    const RealSignal& gg = g2.at(p.rect_id);
    const RealSignal& ggr = gr.at(p.rect_id);
    double lhs_a = 0, rhs_a = 0;
    for (const auto& rho : small_tiles_of(p, n, gcfg)) {
      double l2 = 0;
      for (i64 x : rho.time.points()) l2 += gg[x];
      lhs_a += std::pow(double(rho.time.len), 1.0 - r / 2.0) * std::pow(l2, r / 2.0);
    }
    for (i64 x : p.time.shifted(n).points()) rhs_a += ggr[x];
    if (rhs_a > 0) rep.step_a_margin = std::max(rep.step_a_margin, lhs_a / rhs_a);
  }

  // step (b): pointwise tile sum vs (V^r g)^r over the top window
  rep.step_b_margin = 0;
  std::map<size_t, std::vector<char>> covered;  // E_R indicators
  for (const auto& [id, rect] : distinct_rects(c.members))
    covered.emplace(id, std::vector<char>(size_t(N), 0));
  for (const auto& p : c.members)
    for (i64 x : p.time.shifted(n).points()) covered.at(p.rect_id)[size_t(x)] = 1;
  for (i64 x : c.top.time.shifted(n).points()) {
    double s = 0;
    for (const auto& [id, ind] : covered)
      if (ind[size_t(x)]) s += gr.at(id)[x];
    if (vr[x] > 0) rep.step_b_margin = std::max(rep.step_b_margin, s / vr[x]);
    else if (s > 1e-12)
      rep.step_b_margin = std::max(rep.step_b_margin, 2.0);
  }

  rep.c_prior = column_prior_constant(c, gcfg, cfg);

  double avg_v = 0;
  for (i64 x : c.top.time.shifted(n).points()) avg_v += vr[x];
  avg_v /= double(c.top.time.len);
  rep.rhs = std::pow(avg_v, 1.0 / r) * Sf * Sh * double(c.top.time.len);
  rep.ok = rep.lhs <= std::pow(rep.c_prior, 1.0 / rp) * rep.rhs * (1.0 + 1e-9) + 1e-12;
  return rep;
}

}  // namespace freqlab
