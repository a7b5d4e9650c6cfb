// Dyadic band decomposition: cutoff profiles, partition of unity,
// almost-orthogonality, low-pass/band filters, Bernstein ratios.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "bmhd/fft.hpp"
#include "bmhd/lp.hpp"
#include "bmhd/ops.hpp"
#include "bmhd/rng.hpp"

using namespace bmhd;

namespace {

ScalarField cos_mode(const Grid& g, int k) {
  ScalarField f(g);
  std::array<int, 3> kp{k, 0, 0}, km{-k, 0, 0};
  f.c[g.flat_index(kp)] = 0.5;
  f.c[g.flat_index(km)] = 0.5;
  return f;
}

ScalarField random_resolved(const Grid& g, const DyadicPartition& part, Rng& rng) {
  ScalarField f(g);
  const double r2 = part.resolved_radius() * part.resolved_radius();
  for (std::size_t i = 0; i < g.points(); ++i) {
    const double kk = static_cast<double>(g.k2(g.wavevector(i)));
    if (kk < 0.5 || kk > r2) continue;
    f.c[i] = cplx(rng.normal(), rng.normal());
  }
  symmetrize(f);
  return f;
}

double max_coeff_diff(const ScalarField& a, const ScalarField& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.c.size(); ++i)
    worst = std::max(worst, std::abs(a.c[i] - b.c[i]));
  return worst;
}

}  // namespace

TEST_CASE("cutoff profile shape") {
  CHECK(chi_profile(0.0) == 1.0);
  CHECK(chi_profile(0.75) == 1.0);
  CHECK(chi_profile(4.0 / 3.0) == 0.0);
  CHECK(chi_profile(10.0) == 0.0);
  // nonincreasing across the transition; strictly inside it the step is
  // strictly decreasing (the profile is flat beyond double precision at
  // the edges, so strictness only holds away from them)
  double prev = 1.0;
  for (double r = 0.76; r < 4.0 / 3.0; r += 0.01) {
    const double v = chi_profile(r);
    CHECK(v <= prev);
    prev = v;
  }
  prev = chi_profile(0.9);
  for (double r = 0.92; r <= 1.2; r += 0.02) {
    const double v = chi_profile(r);
    CHECK(v < prev);
    CHECK(v > 0.0);
    CHECK(v < 1.0);
    prev = v;
  }
  // phi support is exactly [3/4, 8/3]
  CHECK(phi_profile(0.74) == 0.0);
  CHECK(phi_profile(0.75) == 0.0);
  CHECK(phi_profile(8.0 / 3.0) == 0.0);
  CHECK(phi_profile(2.7) == 0.0);
  CHECK(phi_profile(1.4) == 1.0);  // plateau on [4/3, 3/2]
  CHECK(phi_profile(1.5) == 1.0);
  // frozen closed form: phi(1) + phi(2) = 1 (telescoping pair)
  CHECK(std::abs(phi_profile(1.0) + phi_profile(2.0) - 1.0) <= 1e-15);
}

TEST_CASE("partition construction and limits") {
  Grid g(2, 128);
  CHECK(default_j_max(g) == 4);
  CHECK(default_j_max(Grid(2, 64)) == 3);
  CHECK(default_j_max(Grid(2, 16)) == 1);
  CHECK_NOTHROW(make_partition(g, -2, 4));
  // (8/3) 2^5 = 85.3 exceeds the 2/3 ball radius 128/3
  CHECK_THROWS_AS(make_partition(g, -2, 5), std::invalid_argument);
  CHECK_THROWS_AS(make_partition(g, 3, 2), std::invalid_argument);
  DyadicPartition part = make_partition(g);
  CHECK(part.resolved_radius() == doctest::Approx(24.0));
}

TEST_CASE("partition of unity on the resolved annulus") {
  Grid g(2, 128);
  DyadicPartition part = make_partition(g);
  const double r2 = part.resolved_radius() * part.resolved_radius();
  double worst = 0.0;
  for (std::size_t i = 0; i < g.points(); ++i) {
    const double kk = static_cast<double>(g.k2(g.wavevector(i)));
    if (kk < 0.5 || kk > r2) continue;
    double sum = 0.0;
    for (int j = part.j_min(); j <= part.j_max(); ++j) sum += part.phi_values(j)[i];
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  CHECK(worst <= 1e-12);
  // telescoping: chi_J + sum_{j=0..jmax} phi_j = chi at scale jmax+1, everywhere
  worst = 0.0;
  for (std::size_t i = 0; i < g.points(); ++i) {
    double sum = part.chi_values(0)[i];
    for (int j = 0; j <= part.j_max(); ++j) sum += part.phi_values(j)[i];
    worst = std::max(worst, std::abs(sum - part.chi_values(part.j_max() + 1)[i]));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("almost orthogonality of bands") {
  Grid g(2, 128);
  DyadicPartition part = make_partition(g);
  for (int j = part.j_min(); j <= part.j_max(); ++j)
    for (int k = part.j_min(); k <= part.j_max(); ++k) {
      if (std::abs(j - k) < 2) continue;
      // multiplier supports are disjoint, so the product table is exactly zero
      double overlap = 0.0;
      for (std::size_t i = 0; i < g.points(); ++i)
        overlap = std::max(overlap, part.phi_values(j)[i] * part.phi_values(k)[i]);
      CHECK(overlap == 0.0);
    }
}

TEST_CASE("band content of cos(4 x1)") {
  Grid g(2, 64);
  DyadicPartition part = make_partition(g);
  ScalarField f = cos_mode(g, 4);
  for (int j = part.j_min(); j <= part.j_max(); ++j) {
    const double e = lp_norm(delta_j(f, part, j), 2.0);
    if (j == 1 || j == 2) {
      CHECK(e > 1e-6);
    } else {
      CHECK(e == 0.0);
    }
  }
  // the two active bands reconstruct the mode
  ScalarField sum = delta_j(f, part, 1) + delta_j(f, part, 2);
  CHECK(max_coeff_diff(sum, f) <= 1e-15);
}

TEST_CASE("low-pass endpoints on cos(4 x1)") {
  Grid g(2, 64);
  DyadicPartition part = make_partition(g, -2, 3);
  ScalarField f = cos_mode(g, 4);
  // chi(4/16) = 1: band passes the mode untouched
  CHECK(max_coeff_diff(s_j(f, part, 4), f) == 0.0);
  // chi(4) = 0: fully blocked
  CHECK(lp_norm(s_j(f, part, 0), 2.0) == 0.0);
}

TEST_CASE("bands reconstruct resolved fields") {
  Grid g(2, 128);
  DyadicPartition part = make_partition(g);
  Rng rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    ScalarField f = random_resolved(g, part, rng);
    ScalarField sum(g);
    for (int j = part.j_min(); j <= part.j_max(); ++j)
      axpy(sum, 1.0, delta_j(f, part, j));
    const double rel = lp_norm(sum - f, 2.0) / lp_norm(f, 2.0);
    CHECK(rel <= 1e-13);
  }
  // band_resolve is a projection compatible with reconstruction
  ScalarField raw(g);
  Rng rng2(77);
  for (std::size_t i = 0; i < g.points(); ++i) raw.c[i] = cplx(rng2.normal(), rng2.normal());
  symmetrize(raw);
  ScalarField f = band_resolve(raw, part);
  CHECK(std::abs(f.mean()) == 0.0);
  ScalarField sum(g);
  for (int j = part.j_min(); j <= part.j_max(); ++j) axpy(sum, 1.0, delta_j(f, part, j));
  CHECK(lp_norm(sum - f, 2.0) <= 1e-13 * lp_norm(f, 2.0));
}

TEST_CASE("delta_j commutes with dilation") {
  Grid g(2, 128);
  DyadicPartition part = make_partition(g);
  Rng rng(13);
  // content in bands around j = 0..1 so the dilated copy stays resolved
  ScalarField f(g);
  for (std::size_t i = 0; i < g.points(); ++i) {
    const long long kk = g.k2(g.wavevector(i));
    if (kk >= 1 && kk <= 9) f.c[i] = cplx(rng.normal(), rng.normal());
  }
  symmetrize(f);
  const int m = 2;
  ScalarField fd = dilate(f, m);
  for (int j = part.j_min() + m; j <= part.j_max(); ++j) {
    ScalarField lhs = delta_j(fd, part, j);
    ScalarField rhs = dilate(delta_j(f, part, j - m), m);
    CHECK(max_coeff_diff(lhs, rhs) <= 1e-14);
  }
}

TEST_CASE("bernstein ratios stay inside band support") {
  Grid g(2, 128);
  DyadicPartition part = make_partition(g);
  Rng rng(41);
  for (double p : {2.0, 4.0}) {
    for (int trial = 0; trial < 10; ++trial) {
      ScalarField f = random_resolved(g, part, rng);
      for (int j = 0; j <= part.j_max(); ++j) {
        ScalarField band = delta_j(f, part, j);
        const double base = lp_norm(band, p);
        if (base < 1e-12) continue;
        VectorField grad = gradient(band);
        const double ratio = lp_norm(grad, p) / base;
        CHECK(ratio >= 0.75 * std::pow(2.0, j));
        CHECK(ratio <= (8.0 / 3.0) * std::pow(2.0, j));
      }
    }
  }
}

TEST_CASE("band norm ledger matches direct computation") {
  Grid g(2, 64);
  DyadicPartition part = make_partition(g);
  Rng rng(55);
  ScalarField f = random_resolved(g, part, rng);
  std::vector<double> led = band_lp_norms(f, 4.0, part);
  REQUIRE(static_cast<int>(led.size()) == part.bands());
  for (int j = part.j_min(); j <= part.j_max(); ++j)
    CHECK(led[j - part.j_min()] == doctest::Approx(lp_norm(delta_j(f, part, j), 4.0)));
}
