#include "freqlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace freqlab {

Eccentricity eccentricity(const FreqRectangle& r) {
  i64 l1 = r.r1.length(), l2 = r.r2.length();
  i64 g = std::gcd(l1, l2);
  return {l2 / g, l1 / g};
}

TimeInterval shift_interval(const TimeInterval& i, i64 n) { return i.shifted(n); }

FreqInterval shift_interval(const FreqInterval& i, i64 n) {
  i64 len = i.length();
  return {i.lo + n * len, i.hi + n * len};
}

std::pair<RectangleCollection, RectangleCollection>
split_by_eccentricity(const RectangleCollection& c) {
  RectangleCollection high, low;
  high.label = c.label + "/high";
  low.label = c.label + "/low";
  for (const auto& r : c.rects) {
    if (r.r2.length() > r.r1.length())
      high.rects.push_back(r);
    else
      low.rects.push_back(r);
  }
  return {high, low};
}

DisjointnessReport validate_disjoint(const RectangleCollection& c) {
  for (size_t i = 0; i < c.rects.size(); ++i)
    for (size_t j = i + 1; j < c.rects.size(); ++j)
      if (c.rects[i].intersects(c.rects[j])) return {false, i, j};
  return {};
}

namespace {

void bisect(std::mt19937_64& rng, const FreqRectangle& r, int depth,
            std::vector<FreqRectangle>& out) {
  bool can1 = r.r1.scale > 0, can2 = r.r2.scale > 0;
  if (depth <= 0 || (!can1 && !can2) ||
      std::uniform_real_distribution<double>(0, 1)(rng) < 0.3) {
    out.push_back(r);
    return;
  }
  bool split1 = can1 && (!can2 || rng() % 2 == 0);
  FreqRectangle a = r, b = r;
  if (split1) {
    a.r1 = {r.r1.scale - 1, 2 * r.r1.index};
    b.r1 = {r.r1.scale - 1, 2 * r.r1.index + 1};
  } else {
    a.r2 = {r.r2.scale - 1, 2 * r.r2.index};
    b.r2 = {r.r2.scale - 1, 2 * r.r2.index + 1};
  }
  bisect(rng, a, depth - 1, out);
  bisect(rng, b, depth - 1, out);
}

}  // namespace

RectangleCollection generate_collection(CollectionMode mode, std::uint64_t seed,
                                        const GridConfig& cfg, const GenParams& params) {
  cfg.validate();
  std::mt19937_64 rng(seed);
  RectangleCollection out;
  i64 R = cfg.radius();
  switch (mode) {
    case CollectionMode::Single: {
      out.rects.push_back(params.single);
      out.label = "single";
      break;
    }
    case CollectionMode::UnitGrid: {
      i64 S = std::min<i64>(params.grid_side, R);
      for (i64 a = 0; a < S; ++a)
        for (i64 b = 0; b < S; ++b)
          out.rects.push_back({{0, a}, {0, b}});
      out.label = "unit-grid";
      break;
    }
    case CollectionMode::RecursiveBisection: {
      if ((R & (R - 1)) != 0) throw std::invalid_argument("radius must be a power of two");
      int k = 0;
      while ((i64(1) << k) < R) ++k;
      // four quadrant squares of the box [-R, R)^2, each bisected randomly
      for (i64 a : {i64(-1), i64(0)})
        for (i64 b : {i64(-1), i64(0)})
          bisect(rng, {{k, a}, {k, b}}, params.max_depth, out.rects);
      out.label = "recursive-bisection";
      break;
    }
    case CollectionMode::StripLike: {
      if ((R & (R - 1)) != 0) throw std::invalid_argument("radius must be a power of two");
      int kmax = 0;
      while ((i64(1) << kmax) < R) ++kmax;
      // random dyadic partition of [-R, R) into thin strips, each paired with a
      // full half-height second side -> high eccentricity
      std::vector<DyadicInterval> strips;
      std::vector<DyadicInterval> work{{kmax, -1}, {kmax, 0}};
      while (!work.empty()) {
        DyadicInterval d = work.back();
        work.pop_back();
        if (d.scale > params.min_log_width && rng() % 2 == 0) {
          work.push_back({d.scale - 1, 2 * d.index});
          work.push_back({d.scale - 1, 2 * d.index + 1});
        } else {
          strips.push_back(d);
        }
      }
      for (const auto& s : strips) {
        DyadicInterval tall{kmax, rng() % 2 == 0 ? i64(0) : i64(-1)};
        if (tall.length() > s.length())  // keep e(R) > 1
          out.rects.push_back({s, tall});
      }
      out.label = "strip-like";
      break;
    }
  }
  auto rep = validate_disjoint(out);
  if (!rep.ok) throw std::logic_error("generate_collection produced an overlap");
  return out;
}

// ---------------------------------------------------------------------------
// Rational arithmetic
// ---------------------------------------------------------------------------
Rat::Rat(i64 n, i64 d) {
  if (d == 0) throw std::invalid_argument("Rat: zero denominator");
  if (d < 0) { n = -n; d = -d; }
  i64 g = std::gcd(n < 0 ? -n : n, d);
  if (g > 1) { n /= g; d /= g; }
  num = n;
  den = d;
}
Rat Rat::operator+(const Rat& o) const { return Rat(num * o.den + o.num * den, den * o.den); }
Rat Rat::operator-(const Rat& o) const { return Rat(num * o.den - o.num * den, den * o.den); }
Rat Rat::operator*(const Rat& o) const { return Rat(num * o.num, den * o.den); }
Rat Rat::operator/(const Rat& o) const { return Rat(num * o.den, den * o.num); }
bool Rat::operator<(const Rat& o) const { return num * o.den < o.num * den; }
bool Rat::operator<=(const Rat& o) const { return num * o.den <= o.num * den; }

RatInterval dilate(const RatInterval& i, const Rat& k) {
  Rat c = (i.lo + i.hi) / Rat(2);
  Rat h = (i.hi - i.lo) * k / Rat(2);
  return {c - h, c + h};
}
RatRect dilate(const RatRect& r, const Rat& k) { return {dilate(r.s1, k), dilate(r.s2, k)}; }

RatInterval grid_interval(ShiftedGrid g, int scale, i64 index) {
  Rat len = scale >= 0 ? Rat(i64(1) << scale) : Rat(1, i64(1) << (-scale));
  Rat shift(0);
  int sign = (scale % 2 == 0) ? 1 : -1;  // (-1)^k
  if (g == ShiftedGrid::D1) shift = len * Rat(sign, 3);
  if (g == ShiftedGrid::D2) shift = len * Rat(-sign, 3);
  Rat lo = len * Rat(index) + shift;
  return {lo, lo + len};
}

bool k_separation_check(const std::vector<RatRect>& rects, const Rat& k) {
  for (size_t i = 0; i < rects.size(); ++i)
    for (size_t j = i + 1; j < rects.size(); ++j)
      if (dilate(rects[i], k).intersects(dilate(rects[j], k))) return false;
  return true;
}

bool k_separation_check(const RectangleCollection& c, const Rat& k) {
  std::vector<RatRect> rr;
  for (const auto& r : c.rects) {
    FreqInterval a = r.side1(), b = r.side2();
    rr.push_back({{Rat(a.lo), Rat(a.hi)}, {Rat(b.lo), Rat(b.hi)}});
  }
  return k_separation_check(rr, k);
}

namespace {

struct SideCover {
  ShiftedGrid grid;
  int scale;
  i64 index;
  RatInterval interval;
  double factor;  // smallest c with J inside c*I
};

// best (smallest-dilate) shifted-grid interval containing I; guaranteed <= 5I
SideCover cover_side(const RatInterval& I) {
  double len = I.length().value();
  double c0 = (I.lo + I.hi).value() / 2;
  int klo = int(std::floor(std::log2(len))) - 1;
  int khi = int(std::ceil(std::log2(5.0 * len))) + 1;
  SideCover best{};
  best.factor = 1e300;
  for (int k = klo; k <= khi; ++k) {
    if (k < -62 || k > 62) continue;
    Rat lenk = k >= 0 ? Rat(i64(1) << k) : Rat(1, i64(1) << (-k));
    if (I.length() <= lenk == false) continue;  // must be at least as long as I
    for (ShiftedGrid g : {ShiftedGrid::D0, ShiftedGrid::D1, ShiftedGrid::D2}) {
      // candidate indices: J_left <= I.lo, scan the two nearest
      RatInterval probe = grid_interval(g, k, 0);
      double m0 = std::floor((I.lo - probe.lo).value() / lenk.value());
      for (i64 m = i64(m0) - 1; m <= i64(m0) + 1; ++m) {
        RatInterval J = grid_interval(g, k, m);
        if (!J.contains(I)) continue;
        Rat c = (I.lo + I.hi) / Rat(2);
        Rat half = I.length() / Rat(2);
        double need = std::max((c - J.lo).value(), (J.hi - c).value()) / half.value();
        if (need < best.factor) best = {g, k, m, J, need};
      }
    }
  }
  if (best.factor > 5.0 + 1e-9)
    throw std::logic_error("covering_dyadic_rectangle: no shifted-grid cover within 5I");
  return best;
}

}  // namespace

CoveringResult covering_dyadic_rectangle(const RatRect& r) {
  if (!(r.s1.lo < r.s1.hi) || !(r.s2.lo < r.s2.hi))
    throw std::invalid_argument("covering_dyadic_rectangle: degenerate rectangle");
  SideCover a = cover_side(r.s1), b = cover_side(r.s2);
  CoveringResult out;
  out.covering = {a.interval, b.interval};
  out.grid1 = a.grid;
  out.grid2 = b.grid;
  out.scale1 = a.scale;
  out.scale2 = b.scale;
  out.index1 = a.index;
  out.index2 = b.index;
  out.dilate_factor = std::max(a.factor, b.factor);
  return out;
}

WhitneyFamily whitney_decomposition(int max_shell) {
  if (max_shell > 25)
    throw std::invalid_argument("whitney_decomposition: max_shell > 25 overflows Rat");
  WhitneyFamily fam;
  // central piece: 16 * [-1/32, 1/32) = [-1/2, 1/2)
  fam.intervals.push_back({Rat(-1, 32), Rat(1, 32)});
  fam.shell.push_back(0);
  // shell j (j >= 1): [1/2 - 2^-j, 1/2 - 2^-j-1) split into 8 equal pieces,
  // mirrored on the left; shell 1 drops its first piece (covered centrally)
  for (int j = 1; j <= max_shell; ++j) {
    i64 den = i64(1) << (j + 4);  // piece length 2^{-j-4}
    i64 lo_num = den / 2 - (den >> j);        // (1/2 - 2^-j) * den
    int first = (j == 1) ? 1 : 0;
    for (int i = first; i < 8; ++i) {
      Rat a(lo_num + i, den), b(lo_num + i + 1, den);
      fam.intervals.push_back({a, b});
      fam.shell.push_back(j);
      fam.intervals.push_back({Rat(0) - b, Rat(0) - a});
      fam.shell.push_back(j);
    }
  }
  return fam;
}

}  // namespace freqlab
