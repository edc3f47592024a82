#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace freqlab {

using i64 = std::int64_t;

// ---------------------------------------------------------------------------
// Ambient configuration: cyclic group Z_N with N = 2^L, centered frequencies
// [-N/2, N/2), rectangles confined to [-radius, radius)^2.
// ---------------------------------------------------------------------------
struct GridConfig {
  int log_size = 10;          // L, N = 2^L
  i64 freq_box_radius = 0;    // <= N/8; 0 means "use N/8"
  int phi_decay = 6;          // M, decay power of the weight Phi_I
  double bump_sharpness = 1.0;// transition sharpness of the bump profile

  i64 size() const { return i64(1) << log_size; }
  i64 radius() const { return freq_box_radius > 0 ? freq_box_radius : size() / 8; }
  void validate() const {
    if (log_size < 3) throw std::invalid_argument("GridConfig: log_size must be >= 3");
    if (radius() > size() / 8) throw std::invalid_argument("GridConfig: freq_box_radius > N/8");
    if (phi_decay < 4) throw std::invalid_argument("GridConfig: phi_decay must be >= 4");
  }
};

// ---------------------------------------------------------------------------
// Half-open integer interval [lo, hi) in centered frequency coordinates.
// ---------------------------------------------------------------------------
struct FreqInterval {
  i64 lo = 0, hi = 0;
  i64 length() const { return hi - lo; }
  bool empty() const { return hi <= lo; }
  bool contains(i64 xi) const { return lo <= xi && xi < hi; }
  bool contains(const FreqInterval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool intersects(const FreqInterval& o) const { return lo < o.hi && o.lo < hi; }
  // membership in the concentric double 2*[lo,hi) (integer-exact test)
  bool double_contains(i64 xi) const {
    // 2*I = [c - len, c + len), c = (lo+hi)/2; compare in doubled coordinates
    i64 s = lo + hi, len = hi - lo;
    return 2 * xi >= s - 2 * len && 2 * xi < s + 2 * len;
  }
  bool operator==(const FreqInterval& o) const = default;
};

// Dyadic interval [m 2^k, (m+1) 2^k) on the integer (plain) grid, scale k >= 0.
struct DyadicInterval {
  int scale = 0;  // k
  i64 index = 0;  // m (may be negative in centered frequency coordinates)
  i64 length() const { return i64(1) << scale; }
  FreqInterval interval() const {
    i64 len = length();
    return {index * len, (index + 1) * len};
  }
  bool operator==(const DyadicInterval& o) const = default;
};

inline DyadicInterval dyadic_containing(int scale, i64 point) {
  i64 len = i64(1) << scale;
  i64 m = point >= 0 ? point / len : -((-point + len - 1) / len);
  return {scale, m};
}

// ---------------------------------------------------------------------------
// Periodic time interval on Z_N: arc of given length starting at start mod N.
// ---------------------------------------------------------------------------
struct TimeInterval {
  i64 start = 0;  // in [0, N)
  i64 len = 0;
  i64 N = 0;

  static TimeInterval plain(i64 lo, i64 hi, i64 N) { return {((lo % N) + N) % N, hi - lo, N}; }
  bool contains(i64 x) const {
    i64 d = ((x - start) % N + N) % N;
    return d < len;
  }
  // point enumeration (wrapped); size == len
  std::vector<i64> points() const {
    std::vector<i64> out;
    out.reserve(size_t(len));
    for (i64 j = 0; j < len; ++j) out.push_back((start + j) % N);
    return out;
  }
  TimeInterval shifted(i64 n) const {
    i64 s = ((start + n * len) % N + N) % N;
    return {s, len, N};
  }
  // arc containment on the circle Z_N
  bool subset_of(const TimeInterval& o) const {
    if (len > o.len) return false;
    if (o.len >= N) return true;
    i64 d = ((start - o.start) % N + N) % N;
    return d + len <= o.len;
  }
  bool intersects(const TimeInterval& o) const {
    i64 d = ((o.start - start) % N + N) % N;
    if (d < len) return true;
    i64 e = ((start - o.start) % N + N) % N;
    return e < o.len;
  }
  // periodic distance from a point to the arc (0 on the arc)
  i64 dist(i64 x) const {
    i64 d = ((x - start) % N + N) % N;
    if (d < len) return 0;
    return std::min(N - d, d - len + 1);
  }
  bool operator==(const TimeInterval& o) const = default;
};

// ---------------------------------------------------------------------------
// Frequency rectangle R = R1 x R2, both sides dyadic, centered coordinates.
// ---------------------------------------------------------------------------
struct FreqRectangle {
  DyadicInterval r1, r2;

  FreqInterval side1() const { return r1.interval(); }
  FreqInterval side2() const { return r2.interval(); }
  // R3 := 2(-R1 - R2), length 2(|R1|+|R2|)
  FreqInterval side3() const {
    FreqInterval a = side1(), b = side2();
    return {2 * (-a.hi - b.hi), 2 * (-a.lo - b.lo)};
  }
  // -R1 - R2 (the core on which the R3 bump equals 1), length |R1|+|R2|
  FreqInterval minus_sum() const {
    FreqInterval a = side1(), b = side2();
    return {-a.hi - b.hi, -a.lo - b.lo};
  }
  bool intersects(const FreqRectangle& o) const {
    return side1().intersects(o.side1()) && side2().intersects(o.side2());
  }
  bool operator==(const FreqRectangle& o) const = default;
};

struct RectangleCollection {
  std::vector<FreqRectangle> rects;
  std::string label;
  size_t size() const { return rects.size(); }
};

// eccentricity e(R) = |R2|/|R1|, returned as a pair (num, den) of powers of two
struct Eccentricity {
  i64 num = 1, den = 1;
  double value() const { return double(num) / double(den); }
};
Eccentricity eccentricity(const FreqRectangle& r);

// I + n|I| reduced mod N
TimeInterval shift_interval(const TimeInterval& i, i64 n);
FreqInterval shift_interval(const FreqInterval& i, i64 n); // non-periodic variant

std::pair<RectangleCollection, RectangleCollection>
split_by_eccentricity(const RectangleCollection& c);

struct DisjointnessReport {
  bool ok = true;
  size_t first = 0, second = 0;  // witness pair when !ok
};
DisjointnessReport validate_disjoint(const RectangleCollection& c);

enum class CollectionMode { RecursiveBisection, UnitGrid, Single, StripLike };

struct GenParams {
  int max_depth = 5;        // recursive-bisection
  i64 grid_side = 8;        // unit-grid: squares tiling [0, side)^2
  FreqRectangle single;     // single mode
  int min_log_width = 0;    // strip-like: minimum log2 width of strips
};

RectangleCollection generate_collection(CollectionMode mode, std::uint64_t seed,
                                        const GridConfig& cfg, const GenParams& params);

// ---------------------------------------------------------------------------
// Exact rational arithmetic for the Appendix-A shifted grids (thirds).
// ---------------------------------------------------------------------------
struct Rat {
  i64 num = 0, den = 1;
  Rat() = default;
  Rat(i64 n) : num(n), den(1) {}
  Rat(i64 n, i64 d);
  Rat operator+(const Rat& o) const;
  Rat operator-(const Rat& o) const;
  Rat operator*(const Rat& o) const;
  Rat operator/(const Rat& o) const;
  bool operator<(const Rat& o) const;
  bool operator<=(const Rat& o) const;
  bool operator==(const Rat& o) const = default;
  double value() const { return double(num) / double(den); }
};

struct RatInterval {
  Rat lo, hi;
  Rat length() const { return hi - lo; }
  bool contains(const RatInterval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool intersects(const RatInterval& o) const { return lo < o.hi && o.lo < hi; }
};

struct RatRect {
  RatInterval s1, s2;
  bool intersects(const RatRect& o) const { return s1.intersects(o.s1) && s2.intersects(o.s2); }
};

// concentric dilate k*I (k rational)
RatInterval dilate(const RatInterval& i, const Rat& k);
RatRect dilate(const RatRect& r, const Rat& k);

enum class ShiftedGrid { D0, D1, D2 };

// interval [2^k(m + s), 2^k(m + 1 + s)) with s = 0 / +(-1)^k/3 / -(-1)^k/3
RatInterval grid_interval(ShiftedGrid g, int scale, i64 index);

// true iff kR and kR' are disjoint for all distinct pairs
bool k_separation_check(const std::vector<RatRect>& rects, const Rat& k);
bool k_separation_check(const RectangleCollection& c, const Rat& k);

struct CoveringResult {
  RatRect covering;
  ShiftedGrid grid1, grid2;  // which of the 9 product grids
  int scale1 = 0, scale2 = 0;
  i64 index1 = 0, index2 = 0;
  double dilate_factor = 0;  // smallest c with R~ inside c*R (<= 5 guaranteed)
};
CoveringResult covering_dyadic_rectangle(const RatRect& r);

struct WhitneyFamily {
  std::vector<RatInterval> intervals;  // pairwise disjoint, union ~ (-1/2, 1/2)
  std::vector<int> shell;              // shell index j; |I| = 2^{-j-4} for j>=1
  double delta = 0.5;                  // decay base: |I_j| <= C delta^j
};
// max_shell <= 25 keeps every Rat cross-product within i64 range
WhitneyFamily whitney_decomposition(int max_shell = 25);

}  // namespace freqlab
