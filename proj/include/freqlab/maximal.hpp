#pragma once

#include "freqlab/fourier.hpp"

namespace freqlab {

// sorted candidate frequency truncation points in [-N/2, N/2]
struct BreakpointSet {
  std::vector<i64> points;

  static BreakpointSet full(i64 N);
  // dyadic-interval endpoints plus endpoints of the active collection
  static BreakpointSet dyadic(i64 N, const RectangleCollection& active = {});
  void validate(i64 N) const;
};

// Carleson operator: max over the N+1 half-line truncations of the partial
// Fourier sums  |sum_{xi < xi0} f^(xi) e^{2 pi i xi x / N} / sqrt(N)|
RealSignal carleson(const Signal& f);

// r-variation of the partial-sum process over the breakpoints, exact DP
RealSignal variational_carleson(const Signal& g, double r, const BreakpointSet& bp);

// brute force over all breakpoint subsets; tiny N only (oracle)
RealSignal variational_carleson_exhaustive(const Signal& g, double r, const BreakpointSet& bp);

// shifted maximal function M^m f(x) = max over dyadic I containing x of the
// average of |f| over I^m (periodic shift by m|I|)
RealSignal shifted_maximal(const Signal& f, i64 m);

double norm_lp(const Signal& f, double p);          // p >= 1 or infinity
double norm_lp_window(const Signal& f, double p, const TimeInterval& w);
// mixed norm (sum_x (sum_k |h_k(x)|^inner)^{outer/inner})^{1/outer}
double mixed_norm(const std::vector<Signal>& h, double outer, double inner);

// log+(x) = log2(2 + |x|)
inline double log_plus(double x) { return std::log2(2.0 + std::abs(x)); }

// matrix of partial sums: row b = S_{bp[b]}, S_xi(x) = sum_{eta < xi} tones
Eigen::MatrixXcd partial_sums(const Signal& g, const BreakpointSet& bp);

}  // namespace freqlab
