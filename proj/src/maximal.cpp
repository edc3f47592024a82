#include "freqlab/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace freqlab {

BreakpointSet BreakpointSet::full(i64 N) {
  BreakpointSet bp;
  bp.points.reserve(size_t(N + 1));
  for (i64 xi = -N / 2; xi <= N / 2; ++xi) bp.points.push_back(xi);
  return bp;
}

BreakpointSet BreakpointSet::dyadic(i64 N, const RectangleCollection& active) {
  std::set<i64> pts{-N / 2, N / 2};
  // endpoints of dyadic frequency intervals at scales >= log2(N)/2 (coarse
  // scales; fine scales would reproduce the full set)
  for (i64 len = 1; len <= N / 2; len *= 2)
    if (len * len >= N)
      for (i64 e = -N / 2; e <= N / 2; e += len) pts.insert(e);
  for (const auto& r : active.rects) {
    for (FreqInterval s : {r.side1(), r.side2(), r.side3()}) {
      pts.insert(std::clamp(s.lo, -N / 2, N / 2));
      pts.insert(std::clamp(s.hi, -N / 2, N / 2));
    }
  }
  BreakpointSet bp;
  bp.points.assign(pts.begin(), pts.end());
  return bp;
}

void BreakpointSet::validate(i64 N) const {
  if (points.size() < 2 || points.front() != -N / 2 || points.back() != N / 2)
    throw std::invalid_argument("BreakpointSet: must contain both extremes");
  for (size_t i = 1; i < points.size(); ++i)
    if (points[i] <= points[i - 1])
      throw std::invalid_argument("BreakpointSet: not strictly increasing");
}

Eigen::MatrixXcd partial_sums(const Signal& g, const BreakpointSet& bp) {
  const i64 N = g.size();
  bp.validate(N);
  Spectrum G = dft(g);
  const i64 B = i64(bp.points.size());
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(B, N);
  Signal acc = Signal::Zero(N);
  const double inv_sqrtN = 1.0 / std::sqrt(double(N));
  i64 b = 0;
  for (i64 xi = -N / 2; xi <= N / 2; ++xi) {
    while (b < B && bp.points[b] == xi) {
      S.row(b) = acc.matrix().transpose();
      ++b;
    }
    if (xi == N / 2) break;
    Complex coeff = G[freq_to_idx(xi, N)] * inv_sqrtN;
    if (coeff != 0.0) {
      const double w = 2.0 * M_PI * double(xi) / double(N);
      for (i64 x = 0; x < N; ++x)
        acc[x] += coeff * Complex(std::cos(w * double(x)), std::sin(w * double(x)));
    }
  }
  return S;
}

RealSignal carleson(const Signal& f) {
  const i64 N = f.size();
  BreakpointSet bp = BreakpointSet::full(N);
  Eigen::MatrixXcd S = partial_sums(f, bp);
  RealSignal out = RealSignal::Zero(N);
  for (i64 x = 0; x < N; ++x)
    for (i64 b = 0; b < S.rows(); ++b)
      out[x] = std::max(out[x], std::abs(S(b, x)));
  return out;
}

RealSignal variational_carleson(const Signal& g, double r, const BreakpointSet& bp) {
  if (r <= 1.0) throw std::invalid_argument("variational_carleson: r must be > 1");
  const i64 N = g.size();
  Eigen::MatrixXcd S = partial_sums(g, bp);
  const i64 B = S.rows();
  RealSignal out(N);
  std::vector<double> V(size_t(B), 0.0);
  for (i64 x = 0; x < N; ++x) {
    double best = 0.0;
    for (i64 j = 0; j < B; ++j) {
      double v = 0.0;
      for (i64 i = 0; i < j; ++i) {
        double step = std::abs(S(j, x) - S(i, x));
        double cand = V[size_t(i)] + std::pow(step, r);
        if (cand > v) v = cand;
      }
      V[size_t(j)] = v;
      if (v > best) best = v;
    }
    out[x] = std::pow(best, 1.0 / r);
  }
  return out;
}

RealSignal variational_carleson_exhaustive(const Signal& g, double r, const BreakpointSet& bp) {
  const i64 N = g.size();
  const size_t B = bp.points.size();
  if (B > 20) throw std::invalid_argument("exhaustive variation: breakpoint set too large");
  Eigen::MatrixXcd S = partial_sums(g, bp);
  RealSignal out(N);
  for (i64 x = 0; x < N; ++x) {
    double best = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << B); ++mask) {
      double v = 0.0;
      int prev = -1;
      for (size_t b = 0; b < B; ++b) {
        if (!(mask >> b & 1)) continue;
        if (prev >= 0) v += std::pow(std::abs(S(i64(b), x) - S(prev, x)), r);
        prev = int(b);
      }
      if (v > best) best = v;
    }
    out[x] = std::pow(best, 1.0 / r);
  }
  return out;
}

RealSignal shifted_maximal(const Signal& f, i64 m) {
  const i64 N = f.size();
  RealSignal absf = f.abs();
  // prefix sums for O(1) window averages
  std::vector<double> pref(size_t(N + 1), 0.0);
  for (i64 x = 0; x < N; ++x) pref[size_t(x + 1)] = pref[size_t(x)] + absf[x];
  auto wrap_sum = [&](i64 start, i64 len) {
    start = ((start % N) + N) % N;
    if (start + len <= N) return pref[size_t(start + len)] - pref[size_t(start)];
    return pref[size_t(N)] - pref[size_t(start)] + pref[size_t(start + len - N)];
  };
  RealSignal out = RealSignal::Zero(N);
  for (int k = 0; (i64(1) << k) <= N; ++k) {
    i64 len = i64(1) << k;
    for (i64 x = 0; x < N; ++x) {
      i64 base = (x / len) * len;           // dyadic I containing x
      double avg = wrap_sum(base + m * len, len) / double(len);
      if (avg > out[x]) out[x] = avg;
    }
  }
  return out;
}

double norm_lp(const Signal& f, double p) {
  if (std::isinf(p)) return f.abs().maxCoeff();
  if (p < 1.0) throw std::invalid_argument("norm_lp: p must be >= 1");
  return std::pow(f.abs().pow(p).sum(), 1.0 / p);
}

double norm_lp_window(const Signal& f, double p, const TimeInterval& w) {
  double acc = 0.0;
  if (std::isinf(p)) {
    for (i64 x : w.points()) acc = std::max(acc, std::abs(f[x]));
    return acc;
  }
  for (i64 x : w.points()) acc += std::pow(std::abs(f[x]), p);
  return std::pow(acc, 1.0 / p);
}

double mixed_norm(const std::vector<Signal>& h, double outer, double inner) {
  if (h.empty()) throw std::invalid_argument("mixed_norm: empty family");
  const i64 N = h.front().size();
  double acc = 0.0;
  for (i64 x = 0; x < N; ++x) {
    double in = 0.0;
    for (const auto& s : h) in += std::pow(std::abs(s[x]), inner);
    acc += std::pow(in, outer / inner);
  }
  return std::pow(acc, 1.0 / outer);
}

}  // namespace freqlab
