#pragma once

#include "freqlab/tiles.hpp"

namespace freqlab {

// ---------------------------------------------------------------------------
// Stopping-time decompositions. All thresholds are taken relative to a
// snapped energy E^ = 2^ceil(log2 E_greedy); the level-n thresholds are then
//   f:  tau_n = 2^{-n-1} E^        h:  tau_n = gamma^{-n-1} E^
// with gamma = 2^{r0/r'}. Snapping makes every postcondition an exact
// power-of-two statement. If an extracted family would contradict the energy
// bound (possible when decomposing a shrunken pool whose greedy energy was
// measured earlier), E^ is doubled and the extraction redone; the doubling
// count is reported.
// ---------------------------------------------------------------------------
enum class DecompKind { F, H };

struct SingleDecomposition {
  ColumnFamily high;
  TilePool low;
  double threshold = 0;   // final tau_n
  double energy_hat = 0;  // possibly doubled
  int doublings = 0;
};

SingleDecomposition decompose_f(const TilePool& pool, const Signal& f, i64 shift, int n,
                                double energy_hat, const ExponentConfig& cfg);
SingleDecomposition decompose_h(const TilePool& pool, const VectorFunction& h, i64 shift, int n,
                                double energy_hat, const GridConfig& gcfg,
                                const ExponentConfig& cfg);

struct DecompositionLevel {
  int n = 0;
  bool f_first = true;        // which side was extracted first at this level
  double tau_f = 0, tau_h = 0;
  double size_f_entry = 0, size_h_entry = 0;  // sizes of the pool entering the level
  ColumnFamily fam_f, fam_h;
  double top_measure_f = 0, top_measure_h = 0;
};

struct DecompositionReport {
  std::vector<DecompositionLevel> levels;
  double energy_f_greedy = 0, energy_h_greedy = 0;
  double energy_f_hat = 0, energy_h_hat = 0;  // snapped (and possibly doubled)
  double size_f0 = 0, size_h0 = 0;            // sizes of the input pool
  int restarts = 0;                           // energy doublings triggering a rerun
  TilePool residual;                          // zero-mass leftovers
  i64 shift = 0;
  size_t pool_size = 0;

  // every tile of the pool appears in exactly one level family or the residual
  bool is_partition(const TilePool& pool) const;
};

DecompositionReport global_decompose(const TilePool& pool, const Signal& f,
                                     const VectorFunction& h, i64 shift,
                                     const GridConfig& gcfg, const ExponentConfig& cfg);

struct GenericEstimateLevel {
  int n = 0;
  double lambda = 0;      // Lambda^n over the level's members
  double level_bound = 0; // C_col * gfac * S_f(entry) * S_h(entry) * top measure
};

struct GenericEstimateReport {
  double lhs = 0;        // sum over levels of Lambda^n
  double rhs = 0;        // g-factor times the size/energy product of eqn (6.1)
  double g_factor = 0;   // sup_P (avg over I_P^n of (V^r g)^r)^{1/r}
  double c_col = 0;      // max over columns of column_prior_constant^{1/r'}
  double constant = 0;   // c_col * 2^{r0+2} * geometric-series factors
  std::vector<GenericEstimateLevel> levels;
  bool ok = false;       // lhs <= constant * rhs
};

GenericEstimateReport generic_estimate(const DecompositionReport& report, const Signal& f,
                                       const Signal& g, const VectorFunction& h,
                                       const GridConfig& gcfg, const ExponentConfig& cfg,
                                       double theta1);

struct ShiftReduction {
  double lhs = 0;       // |Lambda over the collection|
  double weighted = 0;  // sum_n (1+|n|)^{-decay} Lambda^n over the super tile pool
  double constant = 0;  // lhs / weighted (0 when weighted vanishes)
};

ShiftReduction reduce_to_shifted_forms(const Signal& f, const Signal& g,
                                       const VectorFunction& h, const RectangleCollection& c,
                                       const GridConfig& gcfg, const ExponentConfig& cfg,
                                       int decay);

}  // namespace freqlab
