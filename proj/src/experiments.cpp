#include "freqlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>

namespace freqlab {

namespace {

// (Cf)^{100 r0} overflows double range; the level-set machinery runs in
// extended precision
using ld = long double;

std::vector<ld> shifted_max_ld(const std::vector<ld>& a, i64 m, i64 N) {
  std::vector<ld> pref(size_t(N + 1), 0);
  for (i64 x = 0; x < N; ++x) pref[size_t(x + 1)] = pref[size_t(x)] + a[size_t(x)];
  auto wrap_sum = [&](i64 start, i64 len) {
    start = ((start % N) + N) % N;
    if (start + len <= N) return pref[size_t(start + len)] - pref[size_t(start)];
    return pref[size_t(N)] - pref[size_t(start)] + pref[size_t(start + len - N)];
  };
  std::vector<ld> out(size_t(N), 0);
  for (i64 len = 1; len <= N; len *= 2)
    for (i64 x = 0; x < N; ++x) {
      i64 base = (x / len) * len;
      ld avg = wrap_sum(base + m * len, len) / ld(len);
      if (avg > out[size_t(x)]) out[size_t(x)] = avg;
    }
  return out;
}

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

Signal random_phases(const RealSignal& mask, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
  Signal out(mask.size());
  for (i64 x = 0; x < mask.size(); ++x) {
    double a = ang(rng);
    out[x] = mask[x] * Complex(std::cos(a), std::sin(a));
  }
  return out;
}

Signal random_gaussian(i64 N, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Signal out(N);
  for (i64 x = 0; x < N; ++x) out[x] = Complex(gauss(rng), gauss(rng));
  return out;
}

}  // namespace

ExceptionalSetResult exceptional_set(const Signal& f, const Signal& g, const SetSpec& spec,
                                     const GridConfig& gcfg, const ExponentConfig& cfg,
                                     const RWTConfig& rwt) {
  spec.validate();
  const i64 N = gcfg.size();
  const i64 n = rwt.n_shift;
  const double mF = spec.measure_F(), mG = spec.measure_G(), mH = spec.measure_H();

  RealSignal Cf = carleson(f);
  std::vector<ld> u(size_t(N), 0);
  for (i64 x = 0; x < N; ++x) u[size_t(x)] = std::pow(ld(Cf[x]), ld(100.0 * cfg.r0));
  RealSignal vr = variational_carleson(g, cfg.r, BreakpointSet::dyadic(N)).pow(cfg.r);
  std::vector<ld> v(size_t(N), 0);
  for (i64 x = 0; x < N; ++x) v[size_t(x)] = ld(vr[x]);

  // smallest multiplier putting each point inside either level-set family
  const ld inf = std::numeric_limits<ld>::infinity();
  std::vector<ld> need1(size_t(N), 0), need2(size_t(N), 0);
  for (i64 m = -N / 2; m < N / 2; ++m) {
    auto M1 = shifted_max_ld(u, -n + m, N);
    ld T1 = ld(log_plus(double(m - n)) * (1.0 + double(m) * double(m)) * mF / mH);
    auto M2 = shifted_max_ld(v, m, N);
    ld T2 = ld(log_plus(double(m)) * (1.0 + double(m) * double(m)) * mG / mH);
    for (i64 x = 0; x < N; ++x) {
      ld r1 = T1 > 0 ? M1[size_t(x)] / T1 : (M1[size_t(x)] > 0 ? inf : 0);
      ld r2 = T2 > 0 ? M2[size_t(x)] / T2 : (M2[size_t(x)] > 0 ? inf : 0);
      need1[size_t(x)] = std::max(need1[size_t(x)], r1);
      need2[size_t(x)] = std::max(need2[size_t(x)], r2);
    }
  }

  ExceptionalSetResult out;
  ld c1 = rwt.c1, c2 = rwt.c2;
  for (;;) {
    double excess = 0;
    for (i64 x = 0; x < N; ++x)
      if (spec.H[x] > 0 && (need1[size_t(x)] > c1 || need2[size_t(x)] > c2)) excess += 1;
    if (excess < 0.5 * mH) break;
    c1 *= 2;
    c2 *= 2;
    if (++out.doublings > rwt.max_doublings)
      throw std::logic_error("exceptional_set: doubling budget exceeded");
  }
  out.c1 = double(c1);
  out.c2 = double(c2);
  out.E = RealSignal::Zero(N);
  out.Hprime = RealSignal::Zero(N);
  for (i64 x = 0; x < N; ++x) {
    bool in_e = need1[size_t(x)] > c1 || need2[size_t(x)] > c2;
    out.E[x] = in_e ? 1.0 : 0.0;
    out.Hprime[x] = (spec.H[x] > 0 && !in_e) ? 1.0 : 0.0;
  }
  return out;
}

RWTReport restricted_weak_type_experiment(const SetSpec& spec, const RectangleCollection& c,
                                          const GridConfig& gcfg, const ExponentConfig& cfg,
                                          const RWTConfig& rwt, std::uint64_t seed) {
  const double inv_p = 1.0 / cfg.p;
  const double window_lo = 1.0 / (100.0 * cfg.r0) + 99.0 / (100.0 * cfg.r);
  if (!(window_lo <= inv_p + 1e-12 && inv_p <= 1.0 / cfg.r0 + 1e-12))
    throw std::invalid_argument("restricted_weak_type_experiment: p outside the window");
  const i64 N = gcfg.size();
  const i64 n = rwt.n_shift;

  std::mt19937_64 rng(mix_seed(seed));
  Signal f = random_phases(spec.F, rng);
  Signal g = random_phases(spec.G, rng);

  ExceptionalSetResult ex = exceptional_set(f, g, spec, gcfg, cfg, rwt);
  RWTReport rep;
  rep.doublings = ex.doublings;
  rep.hprime_fraction = ex.Hprime.sum() / spec.measure_H();

  VectorFunction h = dual_optimal_h(f, g, c, cfg.r, ex.Hprime);
  rep.lambda = std::abs(trilinear_form(f, g, h, c));
  double inv_sp = 1.0 - inv_p - 1.0 / cfg.r;  // 1/s'
  double denom = std::pow(spec.measure_F(), inv_p) *
                 std::pow(spec.measure_G(), 1.0 / cfg.r) *
                 std::pow(spec.measure_H(), inv_sp);
  rep.ratio = denom > 0 ? rep.lambda / denom : 0.0;

  TilePool pool = enumerate_super_tiles(c, gcfg);
  TilePool small, large;
  for (const auto& p : pool) {
    bool inside_e = true;
    for (i64 x : p.time.shifted(n).points())
      if (ex.E[x] == 0.0) { inside_e = false; break; }
    (inside_e ? large : small).push_back(p);
  }
  rep.n_small = small.size();
  rep.n_large = large.size();

  rep.size_f_small = size_f(small, f, cfg);
  rep.size_f_small_bound =
      log_plus(double(n)) *
      std::pow(spec.measure_F() / spec.measure_H(), 1.0 / (100.0 * cfg.r0));
  RealSignal vr = variational_carleson(g, cfg.r, BreakpointSet::dyadic(N, c)).pow(cfg.r);
  for (const auto& p : small) {
    double acc = 0;
    for (i64 x : p.time.shifted(n).points()) acc += vr[x];
    rep.g_avg_small = std::max(rep.g_avg_small, acc / double(p.time.len));
  }
  rep.g_avg_small_bound = spec.measure_G() / spec.measure_H();
  rep.size_h_all = size_h(pool, h, n, gcfg, cfg);

  // distance classes of the tiles buried inside E
  std::map<int, TilePool> classes;
  for (const auto& p : large) {
    i64 dist = N;  // E = everything: no complement to reach
    TimeInterval win = p.time.shifted(n);
    for (i64 x = 0; x < N; ++x)
      if (ex.E[x] == 0.0) dist = std::min(dist, win.dist(x));
    int d = int(std::floor(std::log2(1.0 + double(dist) / double(p.time.len))));
    classes[d].push_back(p);
  }
  for (const auto& [d, tiles] : classes)
    rep.per_d.emplace_back(d, shifted_form(tiles, f, g, h, n, gcfg, cfg));
  return rep;
}

double SweepReport::max_ratio(i64 N) const {
  double out = 0;
  for (const auto& r : rows)
    if (r.N == N) out = std::max(out, r.ratio);
  return out;
}

double SweepReport::median_ratio(i64 N) const {
  std::vector<double> v;
  for (const auto& r : rows)
    if (r.N == N) v.push_back(r.ratio);
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

SweepReport norm_ratio_sweep(const std::vector<int>& log_sizes,
                             const std::vector<CollectionMode>& modes, int trials,
                             std::uint64_t seed0, const ExponentConfig& cfg) {
  SweepReport rep;
  for (int L : log_sizes) {
    GridConfig gcfg;
    gcfg.log_size = L;
    for (size_t mi = 0; mi < modes.size(); ++mi) {
      for (int t = 0; t < trials; ++t) {
        std::uint64_t seed =
            mix_seed(seed0 + 0x10001ull * std::uint64_t(L) + 0x101ull * mi + std::uint64_t(t));
        GenParams gp;
        gp.single = {{1, 1}, {2, -2}};
        RectangleCollection coll = generate_collection(modes[mi], seed, gcfg, gp);
        std::mt19937_64 rng(mix_seed(seed + 1));
        const i64 N = gcfg.size();
        Signal f = random_gaussian(N, rng);
        Signal g = random_gaussian(N, rng);
        SweepRow row;
        row.seed = seed;
        row.N = N;
        row.label = coll.label;
        row.r = cfg.r;
        row.p = cfg.p;
        row.q = cfg.q;
        row.s = cfg.s();
        row.norm_f = norm_lp(f, cfg.p);
        row.norm_g = norm_lp(g, cfg.q);
        RealSignal tv = square_function(f, g, coll, cfg.r);
        row.norm_t = std::pow(tv.pow(row.s).sum(), 1.0 / row.s);
        double denom = row.norm_f * row.norm_g;
        row.ratio = denom > 0 ? row.norm_t / denom : 0.0;
        rep.rows.push_back(std::move(row));
      }
    }
  }
  return rep;
}

double dilation_homogeneity_gap(const Signal& f, const Signal& g, const RectangleCollection& c,
                                const ExponentConfig& cfg) {
  const i64 N = f.size();
  const double s = cfg.s();
  auto ratio_of = [&](const Signal& ff, const Signal& gg, const RectangleCollection& cc) {
    RealSignal tv = square_function(ff, gg, cc, cfg.r);
    double nt = std::pow(tv.pow(s).sum(), 1.0 / s);
    double denom = norm_lp(ff, cfg.p) * norm_lp(gg, cfg.q);
    return denom > 0 ? nt / denom : 0.0;
  };
  double r1 = ratio_of(f, g, c);
  Signal f2(2 * N), g2(2 * N);
  for (i64 x = 0; x < 2 * N; ++x) {
    f2[x] = f[x % N];
    g2[x] = g[x % N];
  }
  RectangleCollection c2;
  c2.label = c.label;
  for (const auto& rc : c.rects)
    c2.rects.push_back({{rc.r1.scale + 1, rc.r1.index}, {rc.r2.scale + 1, rc.r2.index}});
  double r2 = ratio_of(f2, g2, c2);
  return r1 > 0 ? std::abs(r2 / r1 - 1.0) : 0.0;
}

void interpolation_limit(double r, double p, double& theta, double& p0) {
  theta = 2.0 / r;
  p0 = 1.0 / ((1.0 / p - 1.0 / r) / (1.0 - 2.0 / r));
}

InterpolationResult interpolation_exponents(double r, double p, double q) {
  InterpolationResult res;
  double rp = r / (r - 1.0);
  if (!(r > 2.0 && p > rp && p < r && q > rp && q < r)) return res;
  for (double eps = 1e-2; eps >= 1e-9; eps *= 0.5) {
    double t1 = 2.0 - eps;
    double t1p = t1 / (t1 - 1.0);
    double theta = t1p / r;  // from 1/r' = (1-θ) + θ/t1
    if (!(theta > 0.0 && theta < 1.0)) continue;
    double lo = (t1 - 1.0) / (50.0 * (3.0 * t1 - 2.0)) + 0.99 * (t1 - 1.0) / t1;
    double hi = (2.0 * t1 - 2.0) / (3.0 * t1 - 2.0);
    if (!(lo < hi)) continue;
    double inv_p1 = 0.5 * (lo + hi);
    double inv_p0 = (1.0 / p - theta * inv_p1) / (1.0 - theta);
    double inv_q0 = (1.0 / q - theta / t1p) / (1.0 - theta);
    if (!(inv_p0 > 0.0 && inv_p0 < 1.0 && inv_q0 > 0.0 && inv_q0 < 1.0)) continue;
    res.feasible = true;
    res.theta = theta;
    res.t1 = t1;
    res.p1 = 1.0 / inv_p1;
    res.p0 = 1.0 / inv_p0;
    res.q0 = 1.0 / inv_q0;
    res.residual[0] = std::abs(1.0 / p - ((1.0 - theta) * inv_p0 + theta * inv_p1));
    res.residual[1] = std::abs(1.0 / q - ((1.0 - theta) * inv_q0 + theta / t1p));
    res.residual[2] = std::abs(1.0 / rp - ((1.0 - theta) + theta / t1));
    return res;
  }
  return res;
}

}  // namespace freqlab
