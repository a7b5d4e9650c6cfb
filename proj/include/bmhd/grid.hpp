#pragma once
#include <array>
#include <cstddef>

namespace bmhd {

// Uniform periodic grid on [0, 2*pi)^dim.  Integration uses the normalized
// measure dx/(2*pi)^dim, so constants have unit mass and Parseval reads
// ||f||_2^2 = sum_k |fhat(k)|^2 with Fourier-series coefficients fhat.
//
// Spectral storage is a full complex array in row-major index order; the
// storage index i along each axis carries wavenumber i for i < n/2 and
// i - n for i >= n/2.  The Nyquist slot i = n/2 (wavenumber -n/2) has no
// conjugate partner on the grid and is kept identically zero.
struct Grid {
  int dim;
  int n;

  Grid(int dim_, int n_);

  std::size_t points() const;      // n^dim storage slots
  double dx() const;               // 2*pi/n

  int wavenumber(int i) const;     // storage index -> signed wavenumber
  int index_of(int k) const;       // signed wavenumber -> storage index

  // Decodes a flat storage index into per-axis wavenumbers (unused axes 0).
  std::array<int, 3> wavevector(std::size_t flat) const;
  std::size_t flat_index(const std::array<int, 3>& k) const;

  // 2/3-rule dealiasing keeps the open ball 9*|k|^2 < n^2 (radius n/3).
  bool dealias_keeps(long long k2) const;
  long long k2(const std::array<int, 3>& k) const;

  bool operator==(const Grid& o) const { return dim == o.dim && n == o.n; }
};

}  // namespace bmhd
