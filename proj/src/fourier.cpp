#include "freqlab/fourier.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <stdexcept>

namespace freqlab {

namespace {
thread_local Eigen::FFT<double> fft_plan;
}

Spectrum dft(const Signal& f) {
  const i64 N = f.size();
  if (N == 0) throw std::invalid_argument("dft: empty signal");
  Eigen::VectorXcd in = f.matrix(), out(N);
  fft_plan.fwd(out, in);
  return out.array() / std::sqrt(double(N));
}

Signal idft(const Spectrum& F) {
  const i64 N = F.size();
  if (N == 0) throw std::invalid_argument("idft: empty spectrum");
  Eigen::VectorXcd in = F.matrix(), out(N);
  fft_plan.inv(out, in);
  return out.array() * std::sqrt(double(N));
}

double BumpProfile::operator()(double t) const {
  t = std::fabs(t);
  if (t <= 0.5) return 1.0;
  if (t >= 1.0) return 0.0;
  // transition coordinate u in (0,1); sharpness a compresses toward the core
  double u = 2.0 * (t - 0.5);
  if (sharpness != 1.0) u = std::pow(u, 1.0 / sharpness);
  double v = 1.0 - u;  // chi = s(1-u): s(0+) = 0, s(1-) = 1
  double ea = std::exp(-1.0 / v), eb = std::exp(-1.0 / (1.0 - v));
  return ea / (ea + eb);
}

RealSignal bump_multiplier(const FreqInterval& core, const BumpProfile& profile, i64 N) {
  if (core.lo < -N || core.hi > N)
    throw std::invalid_argument("bump_multiplier: doubled interval escapes range");
  RealSignal m = RealSignal::Zero(N);
  double c = 0.5 * double(core.lo + core.hi);
  double len = double(core.length());
  for (i64 j = 0; j < N; ++j) {
    i64 xi = idx_to_freq(j, N);
    if (core.contains(xi)) {
      m[j] = 1.0;
    } else if (core.double_contains(xi)) {
      // rescale so the core maps to [-1/2, 1/2] and 2*core to [-1, 1]
      m[j] = profile((double(xi) - c) / len);
    }
  }
  return m;
}

Signal sharp_projection(const Signal& f, const FreqInterval& i) {
  const i64 N = f.size();
  Spectrum F = dft(f);
  for (i64 j = 0; j < N; ++j)
    if (!i.contains(idx_to_freq(j, N))) F[j] = 0.0;
  return idft(F);
}

Signal smooth_projection(const Signal& f, const FreqInterval& core, const BumpProfile& profile) {
  const i64 N = f.size();
  Spectrum F = dft(f);
  RealSignal m = bump_multiplier(core, profile, N);
  return idft((F * m).eval());
}

Signal bilinear_projection(const Signal& f, const Signal& g, const FreqRectangle& r) {
  return (sharp_projection(f, r.side1()) * sharp_projection(g, r.side2())).eval();
}

Signal convolve_with_bump(const Signal& h, const FreqInterval& core, const BumpProfile& profile) {
  return smooth_projection(h, core, profile);
}

RealSignal weight_phi(const TimeInterval& i, const GridConfig& cfg) {
  const i64 N = cfg.size();
  RealSignal phi(N);
  for (i64 z = 0; z < N; ++z)
    phi[z] = std::pow(1.0 + double(i.dist(z)) / double(i.len), -double(cfg.phi_decay));
  return phi;
}

Signal translate(const Signal& f, i64 a) {
  const i64 N = f.size();
  Signal out(N);
  for (i64 x = 0; x < N; ++x) out[x] = f[((x - a) % N + N) % N];
  return out;
}

}  // namespace freqlab
