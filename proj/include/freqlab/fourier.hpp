#pragma once

#include <Eigen/Dense>
#include <complex>

#include "freqlab/grid.hpp"

namespace freqlab {

using Complex = std::complex<double>;
using Signal = Eigen::ArrayXcd;    // length-N samples on Z_N
using Spectrum = Eigen::ArrayXcd;  // length-N coefficients, storage index = xi mod N
using RealSignal = Eigen::ArrayXd;

// centered frequency <-> storage index
inline i64 freq_to_idx(i64 xi, i64 N) { return ((xi % N) + N) % N; }
inline i64 idx_to_freq(i64 j, i64 N) { return j < N / 2 ? j : j - N; }

// unitary transform pair: ||dft(f)||_2 = ||f||_2
Spectrum dft(const Signal& f);
Signal idft(const Spectrum& F);

// ---------------------------------------------------------------------------
// Bump profile: even bump built from s(t) = e^{-1/t} / (e^{-1/t} + e^{-1/(1-t)}),
// chi = 1 on [-1/2, 1/2], 0 outside [-1, 1]; sharpness a >= 1 compresses the
// transition toward the core edge (a -> inf gives the sharp core cutoff).
// ---------------------------------------------------------------------------
struct BumpProfile {
  double sharpness = 1.0;
  double operator()(double t) const;  // chi(t)
};

// multiplier of smooth_projection: 1 on core, 0 outside 2*core, chi between
RealSignal bump_multiplier(const FreqInterval& core, const BumpProfile& profile, i64 N);

Signal sharp_projection(const Signal& f, const FreqInterval& i);
Signal smooth_projection(const Signal& f, const FreqInterval& core, const BumpProfile& profile);
Signal bilinear_projection(const Signal& f, const Signal& g, const FreqRectangle& r);
// h filtered by the multiplier chi_{core} (i.e. h * inverse-transform of chi)
Signal convolve_with_bump(const Signal& h, const FreqInterval& core, const BumpProfile& profile);

// Phi_I(z) = (1 + dist_per(z, I)/|I|)^{-M}, equal to 1 on I
RealSignal weight_phi(const TimeInterval& i, const GridConfig& cfg);

// cyclic translation tau_a f(x) = f(x - a)
Signal translate(const Signal& f, i64 a);

}  // namespace freqlab
