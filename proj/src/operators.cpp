#include "freqlab/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace freqlab {

RealSignal square_function(const Signal& f, const Signal& g, const RectangleCollection& c,
                           double r) {
  const i64 N = f.size();
  RealSignal out = RealSignal::Zero(N);
  if (c.rects.empty()) return out;
  const bool sup = std::isinf(r);
  for (const auto& R : c.rects) {
    RealSignal a = bilinear_projection(f, g, R).abs();
    if (sup)
      out = out.max(a);
    else
      out += a.pow(r);
  }
  return sup ? out : out.pow(1.0 / r).eval();
}

RealSignal smooth_square_function(const Signal& f, const Signal& g, const RectangleCollection& c,
                                  double r, const BumpProfile& profile) {
  const i64 N = f.size();
  RealSignal out = RealSignal::Zero(N);
  if (c.rects.empty()) return out;
  const bool sup = std::isinf(r);
  for (const auto& R : c.rects) {
    RealSignal a = (smooth_projection(f, R.side1(), profile) *
                    smooth_projection(g, R.side2(), profile))
                       .abs();
    if (sup)
      out = out.max(a);
    else
      out += a.pow(r);
  }
  return sup ? out : out.pow(1.0 / r).eval();
}

RealSignal linear_rdf(const Signal& f, const std::vector<FreqInterval>& intervals, double r) {
  for (size_t i = 0; i < intervals.size(); ++i)
    for (size_t j = i + 1; j < intervals.size(); ++j)
      if (intervals[i].intersects(intervals[j]))
        throw std::invalid_argument("linear_rdf: overlapping intervals");
  const i64 N = f.size();
  RealSignal out = RealSignal::Zero(N);
  const bool sup = std::isinf(r);
  for (const auto& I : intervals) {
    RealSignal a = sharp_projection(f, I).abs();
    if (sup)
      out = out.max(a);
    else
      out += a.pow(r);
  }
  return sup ? out : out.pow(1.0 / r).eval();
}

Complex trilinear_form(const Signal& f, const Signal& g, const VectorFunction& h,
                       const RectangleCollection& c) {
  const i64 N = f.size();
  h.validate(c, N);
  Complex acc = 0.0;
  for (size_t i = 0; i < c.rects.size(); ++i)
    acc += (bilinear_projection(f, g, c.rects[i]) * h.components[i]).sum();
  return acc;
}

Complex trilinear_form_freq(const Signal& f, const Signal& g, const VectorFunction& h,
                            const RectangleCollection& c) {
  // sum_x u v h = (1/sqrt N) sum_{xi in R1, eta in R2} f^(xi) g^(eta) h^(-xi-eta)
  const i64 N = f.size();
  h.validate(c, N);
  Spectrum F = dft(f), G = dft(g);
  Complex acc = 0.0;
  const double inv_sqrtN = 1.0 / std::sqrt(double(N));
  for (size_t i = 0; i < c.rects.size(); ++i) {
    Spectrum H = dft(h.components[i]);
    FreqInterval a = c.rects[i].side1(), b = c.rects[i].side2();
    Complex local = 0.0;
    for (i64 xi = a.lo; xi < a.hi; ++xi)
      for (i64 eta = b.lo; eta < b.hi; ++eta)
        local += F[freq_to_idx(xi, N)] * G[freq_to_idx(eta, N)] * H[freq_to_idx(-xi - eta, N)];
    acc += local * inv_sqrtN;
  }
  return acc;
}

Complex smooth_trilinear_form(const Signal& f, const Signal& g, const VectorFunction& h,
                              const RectangleCollection& c, const BumpProfile& profile) {
  const i64 N = f.size();
  h.validate(c, N);
  Complex acc = 0.0;
  for (size_t i = 0; i < c.rects.size(); ++i) {
    Signal u = smooth_projection(f, c.rects[i].side1(), profile);
    Signal v = smooth_projection(g, c.rects[i].side2(), profile);
    acc += (u * v * h.components[i]).sum();
  }
  return acc;
}

VectorFunction dual_optimal_h(const Signal& f, const Signal& g, const RectangleCollection& c,
                              double r, const RealSignal& support) {
  const i64 N = f.size();
  const double rp = r / (r - 1.0);
  std::vector<Signal> proj;
  proj.reserve(c.rects.size());
  RealSignal denom = RealSignal::Zero(N);
  for (const auto& R : c.rects) {
    proj.push_back(bilinear_projection(f, g, R));
    denom += proj.back().abs().pow(r);
  }
  VectorFunction h;
  for (auto& u : proj) {
    Signal comp(N);
    for (i64 x = 0; x < N; ++x) {
      double d = std::pow(denom[x], (r - 1.0) / r);
      if (support[x] == 0.0 || d == 0.0) {
        comp[x] = 0.0;
      } else {
        comp[x] = std::conj(u[x]) * std::pow(std::abs(u[x]), r - 2.0) / d;
      }
    }
    h.components.push_back(std::move(comp));
  }
  (void)rp;
  return h;
}

}  // namespace freqlab
