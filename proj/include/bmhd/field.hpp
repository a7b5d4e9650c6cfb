#pragma once
#include <complex>
#include <vector>

#include "bmhd/grid.hpp"

namespace bmhd {

using cplx = std::complex<double>;

// Real-valued scalar field held as its full complex spectrum.  Invariants kept
// by every constructor and operator in this library:
//   - Hermitian symmetry c(-k) = conj(c(k)), so physical values are real;
//   - Nyquist slots identically zero.
// Operations that cannot preserve an invariant re-impose it explicitly.
struct ScalarField {
  Grid grid;
  std::vector<cplx> c;   // spectral coefficients, storage order

  explicit ScalarField(const Grid& g) : grid(g), c(g.points(), cplx(0.0)) {}
  ScalarField(const Grid& g, std::vector<cplx> coeffs);

  cplx mean() const { return c[0]; }
};

// dim-component vector field.
struct VectorField {
  std::vector<ScalarField> comp;

  VectorField() = default;
  explicit VectorField(const Grid& g) : comp(g.dim, ScalarField(g)) {}
  const Grid& grid() const { return comp.front().grid; }
  int dim() const { return static_cast<int>(comp.size()); }
  ScalarField& operator[](int i) { return comp[i]; }
  const ScalarField& operator[](int i) const { return comp[i]; }
};

// Forces c(-k) = conj(c(k)) by averaging conjugate pairs, zeroes Nyquist slots.
void symmetrize(ScalarField& f);
void symmetrize(VectorField& u);

// Zeroes every mode outside the 2/3-rule ball (Nyquist included).
void dealias(ScalarField& f);
void dealias(VectorField& u);

void set_mean_zero(ScalarField& f);

// Largest |c(-k) - conj(c(k))| over the spectrum; 0 for a symmetric field.
double hermitian_defect(const ScalarField& f);

// In-place linear algebra on spectra.
void axpy(ScalarField& y, double a, const ScalarField& x);
void scale(ScalarField& f, double a);
void axpy(VectorField& y, double a, const VectorField& x);
void scale(VectorField& u, double a);

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double a, const ScalarField& f);
VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(double a, const VectorField& u);

}  // namespace bmhd
