#pragma once

#include <cstdint>
#include <string>

#include "freqlab/decomp.hpp"

namespace freqlab {

// finite sets as 0/1 indicator vectors, counting measure
struct SetSpec {
  RealSignal F, G, H;
  double measure_F() const { return F.sum(); }
  double measure_G() const { return G.sum(); }
  double measure_H() const { return H.sum(); }
  void validate() const {
    if (H.size() == 0 || H.sum() <= 0)
      throw std::invalid_argument("SetSpec: weak-type runs need a nonempty H");
  }
};

struct RWTConfig {
  double c1 = 1.0, c2 = 1.0;  // initial multipliers for the two level-set families
  int decay_N = 6;            // weight exponent of the shift reduction
  int max_doublings = 4000;
  i64 n_shift = 0;
};

struct ExceptionalSetResult {
  RealSignal E, Hprime;  // 0/1 indicators
  double c1 = 0, c2 = 0; // final multipliers
  int doublings = 0;
};

// union over m of the level sets of M^{-n+m}((Cf)^{100 r0}) and M^{m'}((V^r g)^r),
// thresholds c * log+(.) <m>^2 |F or G| / |H|; constants doubled until the
// remainder H' = H \ E is a major subset (|H'| > |H|/2)
ExceptionalSetResult exceptional_set(const Signal& f, const Signal& g, const SetSpec& spec,
                                     const GridConfig& gcfg, const ExponentConfig& cfg,
                                     const RWTConfig& rwt);

struct RWTReport {
  double lambda = 0;        // |Lambda(f, g, h)| over the collection
  double ratio = 0;         // lambda / (|F|^{1/p} |G|^{1/r} |H|^{1/s'})
  double hprime_fraction = 0;  // |H'| / |H| (must exceed 1/2)
  double size_f_small = 0, size_f_small_bound = 0;  // 7.2-style size estimate
  double g_avg_small = 0, g_avg_small_bound = 0;    // 7.3-style average estimate
  double size_h_all = 0;                            // trivially <= 1
  std::vector<std::pair<int, double>> per_d;        // d -> Lambda^n over P_d
  size_t n_small = 0, n_large = 0;
  int doublings = 0;
};

// draws |f| <= 1_F, |g| <= 1_G with random phases, removes the exceptional
// set, pairs with the dual-optimal h supported on H' and evaluates the form
RWTReport restricted_weak_type_experiment(const SetSpec& spec, const RectangleCollection& c,
                                          const GridConfig& gcfg, const ExponentConfig& cfg,
                                          const RWTConfig& rwt, std::uint64_t seed);

struct SweepRow {
  std::uint64_t seed = 0;
  i64 N = 0;
  std::string label;
  double r = 0, p = 0, q = 0, s = 0;
  double norm_f = 0, norm_g = 0, norm_t = 0, ratio = 0;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  double max_ratio(i64 N) const;
  double median_ratio(i64 N) const;
};

SweepReport norm_ratio_sweep(const std::vector<int>& log_sizes,
                             const std::vector<CollectionMode>& modes, int trials,
                             std::uint64_t seed0, const ExponentConfig& cfg);

// relative gap |ratio(doubled instance)/ratio - 1|; zero exactly when
// 1/p + 1/q = 1/s (counting-measure homogeneity under periodic doubling)
double dilation_homogeneity_gap(const Signal& f, const Signal& g, const RectangleCollection& c,
                                const ExponentConfig& cfg);

struct InterpolationResult {
  bool feasible = false;
  double theta = 0, t1 = 0, p0 = 0, q0 = 0, p1 = 0;
  double residual[3] = {0, 0, 0};  // the three equations of the system
};

// solves 1/p = (1-θ)/p0 + θ/p1, 1/q = (1-θ)/q0 + θ/t1', 1/r' = (1-θ) + θ/t1
// with t1 < 2 by continuation from the t1 = 2 limit
InterpolationResult interpolation_exponents(double r, double p, double q);

// the t1 = 2 limiting values: θ = 2/r, 1/p0 = (1/p - 1/r)/(1 - 2/r)
void interpolation_limit(double r, double p, double& theta, double& p0);

}  // namespace freqlab
