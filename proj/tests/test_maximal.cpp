#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "freqlab/maximal.hpp"

using namespace freqlab;

namespace {

Signal tone(i64 xi, i64 N) {
  Signal f(N);
  for (i64 x = 0; x < N; ++x)
    f[x] = std::polar(1.0, 2.0 * M_PI * double(xi) * double(x) / double(N));
  return f;
}

Signal random_signal(i64 N, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Signal f(N);
  for (i64 x = 0; x < N; ++x) f[x] = Complex(gauss(rng), gauss(rng));
  return f;
}

}  // namespace

TEST_CASE("carleson basics") {
  const i64 N = 64;
  RealSignal ct = carleson(tone(5, N));
  for (i64 x = 0; x < N; ++x) CHECK(ct[x] == doctest::Approx(1.0).epsilon(1e-10));

  CHECK(carleson(Signal::Zero(N)).maxCoeff() == 0.0);

  std::mt19937_64 rng(1);
  Signal f = random_signal(N, rng);
  RealSignal cf = carleson(f);
  for (i64 x = 0; x < N; ++x) CHECK(cf[x] >= std::abs(f[x]) - 1e-12);
}

TEST_CASE("projection dominated by twice Carleson") {
  const i64 N = 64;
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    Signal f = random_signal(N, rng);
    RealSignal cf = carleson(f);
    i64 lo = i64(rng() % N) - N / 2;
    i64 hi = lo + 1 + i64(rng() % (N / 2 - lo));
    hi = std::min(hi, N / 2);
    Signal p = sharp_projection(f, {lo, hi});
    for (i64 x = 0; x < N; ++x) CHECK(std::abs(p[x]) <= 2.0 * cf[x] + 1e-12);
  }
}

TEST_CASE("variational carleson basics") {
  const i64 N = 32;
  auto full = BreakpointSet::full(N);
  RealSignal vt = variational_carleson(tone(3, N), 4.0, full);
  for (i64 x = 0; x < N; ++x) CHECK(vt[x] == doctest::Approx(1.0).epsilon(1e-10));

  std::mt19937_64 rng(3);
  Signal g = random_signal(N, rng);
  RealSignal v = variational_carleson(g, 4.0, full);
  RealSignal cg = carleson(g);
  for (i64 x = 0; x < N; ++x) CHECK(v[x] >= cg[x] - 1e-10);

  // monotone nonincreasing in r
  RealSignal v6 = variational_carleson(g, 6.0, full);
  for (i64 x = 0; x < N; ++x) CHECK(v6[x] <= v[x] + 1e-10);

  // restricted breakpoints never exceed the full set
  RealSignal vd = variational_carleson(g, 4.0, BreakpointSet::dyadic(N));
  for (i64 x = 0; x < N; ++x) CHECK(vd[x] <= v[x] + 1e-10);

  // nondecreasing under refinement
  BreakpointSet coarse = BreakpointSet::dyadic(N);
  BreakpointSet finer = coarse;
  finer.points.insert(std::lower_bound(finer.points.begin(), finer.points.end(), 3), 3);
  RealSignal vc = variational_carleson(g, 4.0, coarse);
  RealSignal vf = variational_carleson(g, 4.0, finer);
  for (i64 x = 0; x < N; ++x) CHECK(vf[x] >= vc[x] - 1e-10);
}

TEST_CASE("variational carleson DP equals exhaustive oracle") {
  const i64 N = 8;
  auto full = BreakpointSet::full(N);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 5; ++t) {
    Signal g = random_signal(N, rng);
    for (double r : {2.5, 4.0}) {
      RealSignal dp = variational_carleson(g, r, full);
      RealSignal ex = variational_carleson_exhaustive(g, r, full);
      for (i64 x = 0; x < N; ++x) CHECK(dp[x] == doctest::Approx(ex[x]).epsilon(1e-12));
    }
  }
}

TEST_CASE("shifted maximal function") {
  const i64 N = 16;
  Signal ones = Signal::Ones(N);
  for (i64 m : {i64(0), i64(1), i64(-3), i64(7)}) {
    RealSignal M = shifted_maximal(ones, m);
    for (i64 x = 0; x < N; ++x) CHECK(M[x] == doctest::Approx(1.0));
  }

  // delta spike of height N at 0, m = 0: direct dyadic enumeration oracle
  Signal spike = Signal::Zero(N);
  spike[0] = double(N);
  RealSignal M0 = shifted_maximal(spike, 0);
  for (i64 x = 0; x < N; ++x) {
    double expect = 0;
    for (i64 len = 1; len <= N; len *= 2) {
      i64 base = (x / len) * len;
      bool holds_zero = base == 0;  // aligned dyadic interval containing 0
      if (holds_zero) expect = std::max(expect, double(N) / double(len));
    }
    CHECK(M0[x] == doctest::Approx(expect));
  }

  // covariance under translations respecting the dyadic alignment
  std::mt19937_64 rng(5);
  Signal f = random_signal(N, rng);
  for (i64 m : {i64(0), i64(2), i64(-5)}) {
    RealSignal M = shifted_maximal(f, m);
    Signal tf = translate(f, N / 2);
    RealSignal Mt = shifted_maximal(tf, m);
    for (i64 x = 0; x < N; ++x) CHECK(Mt[(x + N / 2) % N] == doctest::Approx(M[x]));
  }
}

TEST_CASE("shifted maximal weak (1,1) with log factor") {
  const i64 N = 256;
  std::mt19937_64 rng(6);
  double worst = 0;
  for (int t = 0; t < 10; ++t) {
    Signal f = random_signal(N, rng);
    double l1 = f.abs().sum();
    for (i64 m : {i64(0), i64(3), i64(16), i64(-40)}) {
      RealSignal M = shifted_maximal(f, m);
      for (double lam : {0.1, 0.3, 1.0, 3.0}) {
        double count = 0;
        for (i64 x = 0; x < N; ++x)
          if (M[x] > lam) count += 1;
        worst = std::max(worst, count * lam / (log_plus(double(m)) * l1));
      }
    }
  }
  MESSAGE("weak (1,1) constant observed: " << worst);
  CHECK(worst <= 8.0);
}

TEST_CASE("norms") {
  const i64 N = 32;
  std::mt19937_64 rng(7);
  Signal f = random_signal(N, rng);

  // mixed norm of a single-signal family is the plain norm
  CHECK(mixed_norm({f}, 3.0, 1.5) == doctest::Approx(norm_lp(f, 3.0)).epsilon(1e-12));

  // delta columns: h_k = c_k delta_{x_k}, disjoint supports
  std::vector<Signal> h(3, Signal::Zero(N));
  h[0][2] = 2.0;
  h[1][9] = 3.0;
  h[2][9] = 4.0;
  double inner = 1.5, outer = 3.0;
  double at9 = std::pow(std::pow(3.0, inner) + std::pow(4.0, inner), 1.0 / inner);
  double expect = std::pow(std::pow(2.0, outer) + std::pow(at9, outer), 1.0 / outer);
  CHECK(mixed_norm(h, outer, inner) == doctest::Approx(expect).epsilon(1e-12));

  // Hoelder
  Signal g = random_signal(N, rng);
  double lhs = std::abs((f * g.conjugate()).sum());
  CHECK(lhs <= norm_lp(f, 3.0) * norm_lp(g, 1.5) + 1e-10);
  CHECK(lhs <= norm_lp(f, 2.0) * norm_lp(g, 2.0) + 1e-10);
}
