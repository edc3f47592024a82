#pragma once

#include <functional>

#include "freqlab/operators.hpp"

namespace freqlab {

// ---------------------------------------------------------------------------
// Time-frequency tiles. A super tile is (R, I) with |R1||I| = N; it owns
// e(R) = |R2|/|R1| small tiles of width N/|R2| tiling the shifted window I^n.
// ---------------------------------------------------------------------------
struct SmallTile {
  size_t rect_id = 0;
  TimeInterval time;  // I_rho, |R2||I_rho| = N
};

struct SuperTile {
  size_t rect_id = 0;
  FreqRectangle rect;
  TimeInterval time;  // I_P, |R1||I_P| = N
  bool operator==(const SuperTile& o) const {
    return rect_id == o.rect_id && time.start == o.time.start;
  }
};

using TilePool = std::vector<SuperTile>;

struct Column {
  SuperTile top;
  TilePool members;  // every member P satisfies P <=_n top; contains top
  i64 shift = 0;
};

struct ColumnFamily {
  std::vector<Column> columns;
  i64 shift = 0;
  double top_measure() const {
    double s = 0;
    for (const auto& c : columns) s += double(c.top.time.len);
    return s;
  }
};

TilePool enumerate_super_tiles(const RectangleCollection& c, const GridConfig& cfg);
std::vector<SmallTile> small_tiles_of(const SuperTile& p, i64 n, const GridConfig& cfg);

// p <=_n p' : R1(p) contains R1(p') and I_p^n inside I_p'^n
bool order_prec_eq(const SuperTile& p, const SuperTile& pp, i64 n);
inline bool order_prec(const SuperTile& p, const SuperTile& pp, i64 n) {
  return !(p == pp) && order_prec_eq(p, pp, n);
}
// strict unshifted inclusions
bool order_lt(const SuperTile& p, const SuperTile& pp);

// shifted top tile R1(P) x I_P^n
bool shifted_tiles_intersect(const SuperTile& a, const SuperTile& b, i64 n);

// members = everything in pool below top; asserts the column structure lemma
Column maximal_column(const SuperTile& top, const TilePool& pool, i64 n);

// both clauses: pairwise disjoint member sets, pairwise disjoint shifted tops
bool mutual_disjointness(const ColumnFamily& fam);

// deterministic greedy family extraction: repeatedly take the tie-break-first
// element, maximal among those whose maximal column passes `accept`, and
// extract its column; elements whose column fails are permanently retired as
// top candidates (valid for monotone predicates) but stay available as
// members. Returns the family and the untouched remainder; on return every
// remaining tile's maximal column fails `accept`.
std::pair<ColumnFamily, TilePool>
extract_family(const TilePool& stock, i64 n,
               const std::function<bool(const Column&)>& accept);

// local r0-average of |pi_{R1}f| on the (unshifted) I_P, per tile
std::vector<double> tile_averages_f(const TilePool& pool, const Signal& f,
                                    const ExponentConfig& cfg);
// integral weight  sum_z |h_R(z)|^{r'} Phi_{I_P^n}(z), per tile
std::vector<double> tile_weights_h(const TilePool& pool, const VectorFunction& h, i64 n,
                                   const GridConfig& gcfg, const ExponentConfig& cfg);

double size_f(const TilePool& pool, const Signal& f, const ExponentConfig& cfg);
double size_h(const TilePool& pool, const VectorFunction& h, i64 n, const GridConfig& gcfg,
              const ExponentConfig& cfg);
double size_h_exhaustive(const TilePool& pool, const VectorFunction& h, i64 n,
                         const GridConfig& gcfg, const ExponentConfig& cfg);

enum class EnergyMode { Greedy, Exhaustive };

struct EnergyResult {
  double value = 0;
  double threshold = 0;       // realizing threshold
  ColumnFamily family;        // realizing family (greedy mode)
};

EnergyResult energy_f(const TilePool& pool, const Signal& f, i64 n, const ExponentConfig& cfg,
                      EnergyMode mode);
EnergyResult energy_h(const TilePool& pool, const VectorFunction& h, i64 n,
                      const GridConfig& gcfg, const ExponentConfig& cfg, EnergyMode mode);

struct EnergyBoundsReport {
  double energy_f_value = 0, majorant_f = 0, ratio_f = 0;
  double energy_h_value = 0, majorant_h = 0, ratio_h = 0;
};
EnergyBoundsReport energy_bounds_check(const TilePool& pool, const Signal& f,
                                       const VectorFunction& h, i64 n, const GridConfig& gcfg,
                                       const ExponentConfig& cfg, double C = 8.0);

// shifted trilinear form Lambda^n over the pool
double shifted_form(const TilePool& pool, const Signal& f, const Signal& g,
                    const VectorFunction& h, i64 n, const GridConfig& gcfg,
                    const ExponentConfig& cfg);

// geometric constant of the bump-tail Hoelder step: for every member P,
//   sum_rho |I_rho| ||h_R * chi||_{L^inf(I_rho)}^{r'} <= c * sum_z |h_R|^{r'} Phi_{I_P^n}
double column_prior_constant(const Column& c, const GridConfig& gcfg, const ExponentConfig& cfg);

struct ColumnBoundReport {
  double lhs = 0;            // Lambda^n over the column
  double rhs = 0;            // (avg (V^r g)^r over I_top^n)^{1/r} * S_f * S_h * |I_top|
  double step_a_margin = 0;  // max over members of lhs_a/rhs_a (should be <= 1)
  double step_b_margin = 0;  // max over x of tile-sum/(V^r g)^r (should be <= 1)
  double c_prior = 0;        // geometric constant: lhs <= c_prior^{1/r'} * rhs
  bool ok = false;
};
ColumnBoundReport column_bound_check(const Column& c, const Signal& f, const Signal& g,
                                     const VectorFunction& h, const GridConfig& gcfg,
                                     const ExponentConfig& cfg);

}  // namespace freqlab
