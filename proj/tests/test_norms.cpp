// Norm suite: Besov seminorms, Chemin-Lerner mixed norms, Lorentz norms via
// exact step-function rearrangement, and the Lorentz product/convolution
// inequality harnesses.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "bmhd/lorentz_checks.hpp"
#include "bmhd/norms.hpp"
#include "bmhd/ops.hpp"
#include "bmhd/rng.hpp"

using namespace bmhd;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ScalarField cos_mode(const Grid& g, int k, double amp = 1.0) {
  ScalarField f(g);
  f.c[g.flat_index({k, 0, 0})] = 0.5 * amp;
  f.c[g.flat_index({-k, 0, 0})] = 0.5 * amp;
  return f;
}

ScalarField random_resolved(const Grid& g, const DyadicPartition& part, Rng& rng,
                            double kmin2 = 0.5) {
  ScalarField f(g);
  const double r2 = part.resolved_radius() * part.resolved_radius();
  for (std::size_t i = 0; i < g.points(); ++i) {
    const double kk = static_cast<double>(g.k2(g.wavevector(i)));
    if (kk < kmin2 || kk > r2) continue;
    f.c[i] = cplx(rng.normal(), rng.normal());
  }
  symmetrize(f);
  return f;
}

}  // namespace

TEST_CASE("lorentz norm closed forms") {
  // indicator of a set of measure m
  const double m = 0.37;
  std::vector<double> vals{1.0, 0.0};
  std::vector<double> w{m, 1.0 - m};
  for (double p : {1.5, 2.0, 4.0}) {
    for (double q : {1.0, 2.0, 3.5}) {
      const double expect = std::pow(p / q, 1.0 / q) * std::pow(m, 1.0 / p);
      CHECK(lorentz_norm(vals, w, {p, q}) == doctest::Approx(expect).epsilon(1e-13));
    }
    CHECK(lorentz_norm(vals, w, {p, kInf}) ==
          doctest::Approx(std::pow(m, 1.0 / p)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(lorentz_norm(vals, w, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("lorentz (p,p) recovers the Lebesgue norm exactly") {
  Rng rng(17);
  std::vector<double> vals(40), w(40);
  double tot = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    vals[i] = rng.uniform() < 0.2 ? 0.0 : std::exp(rng.normal());
    w[i] = rng.uniform(0.05, 1.0);
    tot += w[i];
  }
  for (auto& x : w) x /= tot;
  for (double p : {1.5, 2.0, 3.0}) {
    long double acc = 0.0L;
    for (std::size_t i = 0; i < vals.size(); ++i)
      acc += std::pow((long double)vals[i], (long double)p) * w[i];
    const double lp = static_cast<double>(std::pow(acc, 1.0L / (long double)p));
    CHECK(lorentz_norm(vals, w, {p, p}) == doctest::Approx(lp).epsilon(1e-12));
  }
}

TEST_CASE("lorentz norm scaling and rearrangement invariance") {
  Rng rng(23);
  std::vector<double> vals(64), w(64, 1.0 / 64.0);
  for (auto& v : vals) v = std::exp(rng.normal());
  const LorentzSpec spec{2.5, 1.5};
  const double base = lorentz_norm(vals, w, spec);
  std::vector<double> scaled = vals;
  for (auto& v : scaled) v *= 3.0;
  CHECK(lorentz_norm(scaled, w, spec) == doctest::Approx(3.0 * base).epsilon(1e-12));
  // permutations do not change the norm
  std::vector<double> perm = vals;
  std::swap(perm[3], perm[40]);
  std::swap(perm[10], perm[61]);
  CHECK(lorentz_norm(perm, w, spec) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("besov norm of a single-band mode") {
  // |k| = 12 sits in band 3 alone with phi = 1
  Grid g(2, 64);
  DyadicPartition part = make_partition(g);
  ScalarField f = cos_mode(g, 12);
  for (double r : {1.0, 2.0, kInf}) {
    CHECK(besov_norm(f, {0.5, 2.0, r}, part) ==
          doctest::Approx(std::pow(2.0, 1.5) / std::sqrt(2.0)).epsilon(1e-12));
  }
  // p = inf uses the max of physical samples: ||cos||_inf = 1
  CHECK(besov_norm(f, {-1.0, kInf, kInf}, part) ==
        doctest::Approx(std::pow(2.0, -3.0)).epsilon(1e-11));
}

TEST_CASE("besov dilation scaling") {
  Grid g(2, 128);
  DyadicPartition part = make_partition(g);
  Rng rng(29);
  ScalarField f(g);
  for (std::size_t i = 0; i < g.points(); ++i) {
    const long long kk = g.k2(g.wavevector(i));
    if (kk >= 1 && kk <= 16) f.c[i] = cplx(rng.normal(), rng.normal());
  }
  symmetrize(f);
  const int mshift = 2;
  ScalarField fd = dilate(f, mshift);
  for (const BesovSpec spec : {BesovSpec{0.5, 2.0, 2.0}, BesovSpec{-0.7, 4.0, 1.0},
                               BesovSpec{1.0, 2.0, kInf}}) {
    const double lhs = besov_norm(fd, spec, part);
    const double rhs = std::pow(2.0, spec.s * mshift) * besov_norm(f, spec, part);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("inhomogeneous besov norm") {
  Grid g(2, 64);
  DyadicPartition part = make_partition(g);
  // constant field: all bands vanish, S_0 keeps the mean
  ScalarField c(g);
  c.c[0] = -2.5;
  CHECK(inhomogeneous_besov_norm(c, {0.7, 2.0, 2.0}, part) ==
        doctest::Approx(2.5).epsilon(1e-14));
  // equivalence with ||f||_p + homogeneous norm within a factor 4 for s > 0
  Rng rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    ScalarField f = random_resolved(g, part, rng);
    for (const BesovSpec spec : {BesovSpec{0.5, 2.0, 2.0}, BesovSpec{1.2, 4.0, 1.0}}) {
      const double inhom = inhomogeneous_besov_norm(f, spec, part);
      const double split = lp_norm(f, spec.p) + besov_norm(f, spec, part);
      CHECK(inhom <= 4.0 * split);
      CHECK(split <= 4.0 * inhom);
    }
  }
}

TEST_CASE("time quadrature closed form") {
  // f(t) = t on [0,1], 11 uniform samples: trapezoid of t^2 = 1/3 + h^2/6
  std::vector<double> times(11), vals(11);
  for (int i = 0; i <= 10; ++i) {
    times[i] = 0.1 * i;
    vals[i] = times[i];
  }
  CHECK(time_lp(vals, times, 2.0) ==
        doctest::Approx(std::sqrt(1.0 / 3.0 + 0.01 / 6.0)).epsilon(1e-13));
  CHECK(time_lp(vals, times, kInf) == doctest::Approx(1.0).epsilon(1e-14));
  std::vector<double> bad_times = times;
  bad_times[5] = bad_times[4];
  CHECK_THROWS_AS(time_lp(vals, bad_times, 2.0), std::invalid_argument);
}

TEST_CASE("chemin-lerner norm on a frozen trajectory") {
  Grid g(2, 64);
  DyadicPartition part = make_partition(g);
  ScalarField f = cos_mode(g, 12);
  const int nt = 9;
  std::vector<double> times(nt);
  std::vector<ScalarField> traj;
  for (int i = 0; i < nt; ++i) {
    times[i] = 0.125 * i;
    traj.push_back(f);
  }
  // constant trajectory: trapezoid is exact, value = T^{1/rho} * besov
  for (double rho : {1.0, 2.0, 4.0}) {
    MixedNormSpec spec{rho, {0.5, 2.0, 2.0}, times};
    const double expect = std::pow(1.0, 1.0 / rho) * besov_norm(f, spec.besov, part);
    CHECK(chemin_lerner_norm(traj, spec, part) == doctest::Approx(expect).epsilon(1e-12));
  }
  MixedNormSpec supspec{kInf, {0.5, 2.0, 2.0}, times};
  CHECK(chemin_lerner_norm(traj, supspec, part) ==
        doctest::Approx(besov_norm(f, supspec.besov, part)).epsilon(1e-12));
}

TEST_CASE("chemin-lerner of a heat-decaying mode matches the analytic integral") {
  Grid g(2, 64);
  DyadicPartition part = make_partition(g);
  ScalarField f0 = cos_mode(g, 12);  // band 3 pure, |k|^2 = 144
  const double T = 0.02;
  const int nt = 201;
  std::vector<double> times(nt);
  std::vector<ScalarField> traj;
  for (int i = 0; i < nt; ++i) {
    times[i] = T * i / (nt - 1);
    traj.push_back(heat_propagate(f0, times[i]));
  }
  const double rho = 2.0;
  MixedNormSpec spec{rho, {0.5, 2.0, 2.0}, times};
  // per-band series is ||Delta_3 f0||_2 e^{-144 t}; int_0^T e^{-288 t} dt
  const double band_norm = std::pow(2.0, 1.5) / std::sqrt(2.0);
  const double integral = (1.0 - std::exp(-288.0 * T)) / 288.0;
  const double expect = band_norm * std::sqrt(integral);
  CHECK(chemin_lerner_norm(traj, spec, part) == doctest::Approx(expect).epsilon(2e-4));
}

TEST_CASE("lorentz time norm of a decreasing step") {
  // value 1 up to t = 0.4, then 0; norm ~ indicator closed form
  std::vector<double> times, vals;
  for (int i = 0; i <= 200; ++i) {
    const double t = i / 200.0;
    times.push_back(t);
    vals.push_back(t <= 0.4 ? 1.0 : 0.0);
  }
  const double p = 3.0, q = 2.0;
  const double expect = std::pow(p / q, 1.0 / q) * std::pow(0.4, 1.0 / p);
  CHECK(lorentz_time_norm(vals, times, {p, q}) == doctest::Approx(expect).epsilon(0.02));
}

TEST_CASE("lorentz holder inequality harness") {
  LorentzCheckReport rep = lorentz_holder_check(200, 914001);
  CHECK(rep.n_trials == 200);
  CHECK(rep.violations == 0);
  CHECK(rep.max_ratio <= 1.0);
  CHECK(rep.max_ratio > 0.0);
}

TEST_CASE("lorentz young inequality harness") {
  LorentzCheckReport rep = lorentz_young_check(120, 914002);
  CHECK(rep.violations == 0);
  CHECK(rep.max_ratio <= 1.0);
  CHECK(rep.max_ratio > 0.0);
}

TEST_CASE("lorentz convolution endpoint harness") {
  LorentzCheckReport rep = lorentz_conv_endpoint_check(120, 914003);
  CHECK(rep.violations == 0);
  CHECK(rep.max_ratio <= 1.0);
  CHECK(rep.max_ratio > 0.0);
}

TEST_CASE("frozen holder index example") {
  // (4,2) x (4,2) -> (2,1): indicator of measure m on both sides
  const double m = 0.25;
  std::vector<double> vals{2.0, 0.0}, w{m, 1.0 - m};
  const double lhs = lorentz_norm({4.0, 0.0}, w, {2.0, 1.0});  // (fg = 4 on E)
  const double f = lorentz_norm(vals, w, {4.0, 2.0});
  CHECK(lhs <= 2.0 * f * f);  // r' = 2
}
