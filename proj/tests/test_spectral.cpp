// Spectral core: transforms, norms, operators, dealiased products.
//
// Expected values are frozen against independent oracles computed here:
// closed-form trigonometric integrals for L^p norms and a direct O(N^4)
// coefficient-convolution sum for the dealiased product.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "bmhd/fft.hpp"
#include "bmhd/field.hpp"
#include "bmhd/grid.hpp"
#include "bmhd/ops.hpp"
#include "bmhd/rng.hpp"

using namespace bmhd;

namespace {

// Field from a pointwise formula evaluated on the collocation grid.
template <typename F>
ScalarField from_formula(const Grid& g, F&& f) {
  std::vector<double> vals(g.points());
  for (std::size_t i = 0; i < g.points(); ++i) {
    // reconstruct grid point from flat storage index
    std::size_t rem = i;
    double x[3] = {0, 0, 0};
    for (int d = g.dim - 1; d >= 0; --d) {
      x[d] = g.dx() * static_cast<double>(rem % g.n);
      rem /= g.n;
    }
    vals[i] = f(x[0], x[1], x[2]);
  }
  return field_from_physical(g, vals);
}

ScalarField random_dealiased(const Grid& g, Rng& rng, int kcap) {
  ScalarField f(g);
  for (std::size_t i = 0; i < g.points(); ++i) {
    const auto k = g.wavevector(i);
    if (g.k2(k) > static_cast<long long>(kcap) * kcap) continue;
    f.c[i] = cplx(rng.normal(), rng.normal());
  }
  symmetrize(f);
  dealias(f);
  return f;
}

}  // namespace

TEST_CASE("grid preconditions and wavenumber bookkeeping") {
  CHECK_THROWS_AS(Grid(4, 32), std::invalid_argument);
  CHECK_THROWS_AS(Grid(2, 12), std::invalid_argument);
  CHECK_THROWS_AS(Grid(2, 8), std::invalid_argument);
  CHECK_THROWS_AS(Grid(2, 48), std::invalid_argument);

  Grid g(2, 32);
  CHECK(g.points() == 1024);
  CHECK(g.wavenumber(0) == 0);
  CHECK(g.wavenumber(15) == 15);
  CHECK(g.wavenumber(16) == -16);
  CHECK(g.wavenumber(31) == -1);
  CHECK(g.index_of(-1) == 31);
  CHECK(g.flat_index({3, -2, 0}) == 3u * 32 + 30);

  // 2/3-rule ball for N = 128: keeps |k|^2 <= 1820, drops 1821
  Grid g128(2, 128);
  CHECK(g128.dealias_keeps(1820));
  CHECK(!g128.dealias_keeps(1821));
}

TEST_CASE("transform round trip") {
  Grid g(2, 32);
  Rng rng(7);
  ScalarField f = random_dealiased(g, rng, 10);
  std::vector<double> vals = to_physical(f);
  ScalarField back = field_from_physical(g, vals);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    num += std::norm(back.c[i] - f.c[i]);
    den += std::norm(f.c[i]);
  }
  CHECK(std::sqrt(num / den) <= 1e-13);
}

TEST_CASE("hermitian symmetry enforcement") {
  Grid g(2, 16);
  Rng rng(3);
  ScalarField f(g);
  for (auto& c : f.c) c = cplx(rng.normal(), rng.normal());
  CHECK(hermitian_defect(f) > 0.1);
  symmetrize(f);
  CHECK(hermitian_defect(f) <= 1e-15);
  // Nyquist row is zero
  CHECK(std::abs(f.c[g.flat_index({-8, 3, 0})]) == 0.0);
  // physical samples are real up to roundoff
  std::vector<cplx> vals;
  spectral_to_physical(g, f.c, vals);
  double worst = 0.0;
  for (const auto& v : vals) worst = std::max(worst, std::abs(v.imag()));
  CHECK(worst <= 1e-12);
}

TEST_CASE("lp norms of cos(x1): closed forms") {
  // oracle: mean of cos^2 = 1/2, mean of cos^4 = 3/8 on a full period
  for (int dim : {2, 3}) {
    Grid g(dim, 16);
    ScalarField f = from_formula(g, [](double x, double, double) { return std::cos(x); });
    CHECK(lp_norm(f, 2.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(lp_norm(f, 4.0) == doctest::Approx(std::pow(3.0 / 8.0, 0.25)).epsilon(1e-12));
    CHECK(lp_norm(f, std::numeric_limits<double>::infinity()) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  // |cos| is not a trig polynomial, so p = 1 is quadrature, not exact:
  // trapezoid on N = 128 resolves 2/pi to a few parts in 1e4
  Grid gf(2, 128);
  ScalarField cf = from_formula(gf, [](double x, double, double) { return std::cos(x); });
  CHECK(lp_norm(cf, 1.0) == doctest::Approx(2.0 / M_PI).epsilon(5e-4));
  CHECK_THROWS_AS(lp_norm(from_formula(Grid(2, 16), [](double x, double, double) { return x; }),
                          0.5),
                  std::invalid_argument);
}

TEST_CASE("parseval ties quadrature to coefficient sums") {
  Grid g(2, 32);
  Rng rng(11);
  ScalarField f = random_dealiased(g, rng, 9);
  long double coeff2 = 0.0L;
  for (const auto& c : f.c) coeff2 += std::norm(c);
  const double quad = lp_norm_samples(to_physical(f), 2.0);
  CHECK(quad == doctest::Approx(std::sqrt(static_cast<double>(coeff2))).epsilon(1e-12));
  // spectral fast path agrees with the collocation value
  CHECK(lp_norm(f, 2.0) == doctest::Approx(quad).epsilon(1e-12));
}

TEST_CASE("derivatives are exact on trigonometric fields") {
  Grid g(2, 32);
  ScalarField f = from_formula(g, [](double x, double, double) { return std::cos(2.0 * x); });
  ScalarField lap = laplacian(f);
  ScalarField expect = -4.0 * f;
  double worst = 0.0;
  for (std::size_t i = 0; i < f.c.size(); ++i)
    worst = std::max(worst, std::abs(lap.c[i] - expect.c[i]));
  CHECK(worst <= 1e-13);

  ScalarField h = from_formula(g, [](double x, double y, double) { return std::cos(x) * std::cos(y); });
  ScalarField divgrad = divergence(gradient(h));
  ScalarField expect2 = -2.0 * h;
  worst = 0.0;
  for (std::size_t i = 0; i < h.c.size(); ++i)
    worst = std::max(worst, std::abs(divgrad.c[i] - expect2.c[i]));
  CHECK(worst <= 1e-13);

  CHECK_THROWS_AS(derivative(f, 2), std::invalid_argument);
}

TEST_CASE("heat semigroup closed form") {
  Grid g(2, 32);
  ScalarField f = from_formula(g, [](double x, double, double) { return std::cos(2.0 * x); });
  ScalarField ht = heat_propagate(f, 0.1);
  const double factor = std::exp(-0.4);
  double worst = 0.0;
  for (std::size_t i = 0; i < f.c.size(); ++i)
    worst = std::max(worst, std::abs(ht.c[i] - factor * f.c[i]));
  CHECK(worst <= 1e-14);
  CHECK_THROWS_AS(heat_propagate(f, -0.1), std::invalid_argument);
}

TEST_CASE("dealiased product closed form") {
  Grid g(2, 32);
  ScalarField f = from_formula(g, [](double x, double, double) { return std::cos(x); });
  ScalarField p = multiply_dealiased(f, f);
  // cos^2 x = 1/2 + cos(2x)/2
  ScalarField expect = from_formula(g, [](double x, double, double) {
    return 0.5 + 0.5 * std::cos(2.0 * x);
  });
  double worst = 0.0;
  for (std::size_t i = 0; i < p.c.size(); ++i)
    worst = std::max(worst, std::abs(p.c[i] - expect.c[i]));
  CHECK(worst <= 1e-14);
}

TEST_CASE("dealiased product matches direct coefficient convolution") {
  // oracle: full O(N^4) convolution sum, independent of any FFT
  Grid g(2, 16);
  Rng rng(21);
  ScalarField a = random_dealiased(g, rng, 5);
  ScalarField b = random_dealiased(g, rng, 5);
  std::map<std::pair<int, int>, cplx> conv;
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == cplx(0.0)) continue;
    const auto ka = g.wavevector(i);
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      if (b.c[j] == cplx(0.0)) continue;
      const auto kb = g.wavevector(j);
      conv[{ka[0] + kb[0], ka[1] + kb[1]}] += a.c[i] * b.c[j];
    }
  }
  ScalarField p = multiply_dealiased(a, b);
  double worst = 0.0;
  for (std::size_t i = 0; i < p.c.size(); ++i) {
    const auto k = g.wavevector(i);
    if (!g.dealias_keeps(g.k2(k))) {
      CHECK(std::abs(p.c[i]) == 0.0);
      continue;
    }
    auto it = conv.find({k[0], k[1]});
    const cplx want = it == conv.end() ? cplx(0.0) : it->second;
    worst = std::max(worst, std::abs(p.c[i] - want));
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("leray projection") {
  Grid g(2, 32);
  Rng rng(5);
  VectorField u(g);
  for (int d = 0; d < 2; ++d) u[d] = random_dealiased(g, rng, 9);
  VectorField pu = leray_project(u);

  // divergence-free output
  CHECK(lp_norm(divergence(pu), 2.0) <= 1e-12 * lp_norm(pu, 2.0));
  // idempotent
  VectorField ppu = leray_project(pu);
  double worst = 0.0;
  for (int d = 0; d < 2; ++d)
    for (std::size_t i = 0; i < pu[d].c.size(); ++i)
      worst = std::max(worst, std::abs(ppu[d].c[i] - pu[d].c[i]));
  CHECK(worst <= 1e-13);
  // annihilates gradients
  ScalarField phi = random_dealiased(g, rng, 9);
  VectorField gphi = gradient(phi);
  VectorField pg = leray_project(gphi);
  CHECK(lp_norm(pg, 2.0) <= 1e-12 * std::max(1.0, lp_norm(gphi, 2.0)));
  // self-adjoint: (Pu, v) = (u, Pv)
  VectorField v(g);
  for (int d = 0; d < 2; ++d) v[d] = random_dealiased(g, rng, 9);
  CHECK(l2_inner(pu, v) == doctest::Approx(l2_inner(u, leray_project(v))).epsilon(1e-12));
}

TEST_CASE("dilation doubles wavenumbers") {
  Grid g(2, 64);
  ScalarField f = from_formula(g, [](double x, double y, double) {
    return std::cos(2.0 * x) + std::sin(3.0 * y);
  });
  ScalarField d = dilate(f, 2);
  ScalarField expect = from_formula(g, [](double x, double y, double) {
    return std::cos(8.0 * x) + std::sin(12.0 * y);
  });
  double worst = 0.0;
  for (std::size_t i = 0; i < d.c.size(); ++i)
    worst = std::max(worst, std::abs(d.c[i] - expect.c[i]));
  CHECK(worst <= 1e-13);
  // norms are dilation-invariant on the torus
  CHECK(lp_norm(d, 4.0) == doctest::Approx(lp_norm(f, 4.0)).epsilon(1e-12));
  // k = 3 dilated by 2^4 = 48 leaves the N = 64 range
  CHECK_THROWS_AS(dilate(f, 4), std::invalid_argument);
}

TEST_CASE("vector norms use pointwise magnitude") {
  Grid g(2, 16);
  VectorField u(g);
  u[0] = from_formula(g, [](double, double y, double) { return std::cos(y); });
  u[1] = ScalarField(g);
  CHECK(lp_norm(u, 2.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  // constant-magnitude field: |(cos y, sin y)| = 1 everywhere
  VectorField w(g);
  w[0] = from_formula(g, [](double, double y, double) { return std::cos(y); });
  w[1] = from_formula(g, [](double, double y, double) { return std::sin(y); });
  CHECK(lp_norm(w, 7.0) == doctest::Approx(1.0).epsilon(1e-12));
}
