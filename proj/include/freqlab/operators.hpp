#pragma once

#include "freqlab/maximal.hpp"

namespace freqlab {

// ---------------------------------------------------------------------------
// Exponent bookkeeping: r > 2, 2 < r0 < r (default (r+2)/2), derived
// r' = r/(r-1), sigma = (r - r0)/r, gamma = 2^{r0/r'}.
// ---------------------------------------------------------------------------
struct ExponentConfig {
  double r = 4.0;
  double r0 = 3.0;
  double p = 3.0, q = 3.0;   // 1/p + 1/q = 1/s
  double theta1 = 0.5;       // theta1 + theta2 = 1

  double r_prime() const { return r / (r - 1.0); }
  double r0_prime() const { return r0 / (r0 - 1.0); }
  double s() const { return 1.0 / (1.0 / p + 1.0 / q); }
  double s_prime() const { return s() / (s() - 1.0); }
  double sigma() const { return (r - r0) / r; }
  double gamma() const { return std::pow(2.0, r0 / r_prime()); }
  double theta2() const { return 1.0 - theta1; }

  bool in_range() const {
    double rp = r_prime(), sv = s();
    return r > 2.0 && r0 > 2.0 && r0 < r && rp < p && p < r && rp < q && q < r &&
           rp / 2.0 < sv && sv < r / 2.0 && theta1 >= 0.0 && theta1 <= 1.0;
  }
  void validate() const {
    if (!(r > 2.0)) throw std::invalid_argument("ExponentConfig: r must be > 2");
    if (!(r0 > 2.0 && r0 < r)) throw std::invalid_argument("ExponentConfig: need 2 < r0 < r");
  }
  static ExponentConfig with_default_r0(double r) {
    ExponentConfig c;
    c.r = r;
    c.r0 = (r + 2.0) / 2.0;
    return c;
  }
};

// family {h_R} aligned with a RectangleCollection (one signal per rectangle)
struct VectorFunction {
  std::vector<Signal> components;  // components[i] corresponds to rects[i]
  void validate(const RectangleCollection& c, i64 N) const {
    if (components.size() != c.rects.size())
      throw std::invalid_argument("VectorFunction: misaligned with collection");
    for (const auto& s : components)
      if (s.size() != N) throw std::invalid_argument("VectorFunction: wrong signal length");
  }
};

// T^r(f,g) = (sum_R |pi_R(f,g)|^r)^{1/r}; r = infinity gives the sup variant
RealSignal square_function(const Signal& f, const Signal& g, const RectangleCollection& c,
                           double r);
RealSignal smooth_square_function(const Signal& f, const Signal& g, const RectangleCollection& c,
                                  double r, const BumpProfile& profile);
// RdF^r for a disjoint family of sharp linear projections
RealSignal linear_rdf(const Signal& f, const std::vector<FreqInterval>& intervals, double r);

// Lambda(f,g,h) = sum_R sum_x pi_{R1}f pi_{R2}g h_R; time- and frequency-side
Complex trilinear_form(const Signal& f, const Signal& g, const VectorFunction& h,
                       const RectangleCollection& c);
Complex trilinear_form_freq(const Signal& f, const Signal& g, const VectorFunction& h,
                            const RectangleCollection& c);
Complex smooth_trilinear_form(const Signal& f, const Signal& g, const VectorFunction& h,
                              const RectangleCollection& c, const BumpProfile& profile);

// h_R = 1_support conj(pi_R(f,g)) |pi_R(f,g)|^{r-2} / (sum |pi_R'|^r)^{(r-1)/r}
VectorFunction dual_optimal_h(const Signal& f, const Signal& g, const RectangleCollection& c,
                              double r, const RealSignal& support);

}  // namespace freqlab
