#include "bmhd/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bmhd {

ScalarField::ScalarField(const Grid& g, std::vector<cplx> coeffs)
    : grid(g), c(std::move(coeffs)) {
  if (c.size() != grid.points())
    throw std::invalid_argument("coefficient array size does not match grid");
}

namespace {

// Visits each (i, j) with j the conjugate-mirror slot of i; i == j at
// self-conjugate points.  f(i, j) must be symmetric-safe for i > j skips.
template <typename F>
void for_conjugate_pairs(const Grid& g, F&& f) {
  const std::size_t total = g.points();
  for (std::size_t i = 0; i < total; ++i) {
    auto k = g.wavevector(i);
    std::array<int, 3> nk{-k[0], -k[1], -k[2]};
    // wavenumber -n/2 has no mirror slot; handled by the Nyquist zeroing
    bool has_mirror = true;
    for (int d = 0; d < g.dim; ++d)
      if (k[d] == -g.n / 2) has_mirror = false;
    if (!has_mirror) continue;
    const std::size_t j = g.flat_index(nk);
    if (j < i) continue;
    f(i, j);
  }
}

void zero_nyquist(ScalarField& f) {
  const Grid& g = f.grid;
  for (std::size_t i = 0; i < g.points(); ++i) {
    auto k = g.wavevector(i);
    for (int d = 0; d < g.dim; ++d)
      if (k[d] == -g.n / 2) {
        f.c[i] = 0.0;
        break;
      }
  }
}

}  // namespace

void symmetrize(ScalarField& f) {
  zero_nyquist(f);
  for_conjugate_pairs(f.grid, [&](std::size_t i, std::size_t j) {
    if (i == j) {
      f.c[i] = cplx(f.c[i].real(), 0.0);
    } else {
      const cplx avg = 0.5 * (f.c[i] + std::conj(f.c[j]));
      f.c[i] = avg;
      f.c[j] = std::conj(avg);
    }
  });
}

void symmetrize(VectorField& u) {
  for (auto& f : u.comp) symmetrize(f);
}

void dealias(ScalarField& f) {
  const Grid& g = f.grid;
  for (std::size_t i = 0; i < g.points(); ++i) {
    if (!g.dealias_keeps(g.k2(g.wavevector(i)))) f.c[i] = 0.0;
  }
}

void dealias(VectorField& u) {
  for (auto& f : u.comp) dealias(f);
}

void set_mean_zero(ScalarField& f) { f.c[0] = 0.0; }

double hermitian_defect(const ScalarField& f) {
  double worst = 0.0;
  for_conjugate_pairs(f.grid, [&](std::size_t i, std::size_t j) {
    worst = std::max(worst, std::abs(f.c[i] - std::conj(f.c[j])));
  });
  // Nyquist slots count as defects unless zero
  const Grid& g = f.grid;
  for (std::size_t i = 0; i < g.points(); ++i) {
    auto k = g.wavevector(i);
    for (int d = 0; d < g.dim; ++d)
      if (k[d] == -g.n / 2) {
        worst = std::max(worst, std::abs(f.c[i]));
        break;
      }
  }
  return worst;
}

void axpy(ScalarField& y, double a, const ScalarField& x) {
  for (std::size_t i = 0; i < y.c.size(); ++i) y.c[i] += a * x.c[i];
}

void scale(ScalarField& f, double a) {
  for (auto& v : f.c) v *= a;
}

void axpy(VectorField& y, double a, const VectorField& x) {
  for (int d = 0; d < y.dim(); ++d) axpy(y[d], a, x[d]);
}

void scale(VectorField& u, double a) {
  for (auto& f : u.comp) scale(f, a);
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  ScalarField r = a;
  axpy(r, 1.0, b);
  return r;
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  ScalarField r = a;
  axpy(r, -1.0, b);
  return r;
}

ScalarField operator*(double a, const ScalarField& f) {
  ScalarField r = f;
  scale(r, a);
  return r;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  VectorField r = a;
  axpy(r, 1.0, b);
  return r;
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  VectorField r = a;
  axpy(r, -1.0, b);
  return r;
}

VectorField operator*(double a, const VectorField& u) {
  VectorField r = u;
  scale(r, a);
  return r;
}

}  // namespace bmhd
