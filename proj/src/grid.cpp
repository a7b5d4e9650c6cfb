#include "bmhd/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bmhd {

Grid::Grid(int dim_, int n_) : dim(dim_), n(n_) {
  if (dim != 2 && dim != 3)
    throw std::invalid_argument("grid dimension must be 2 or 3, got " + std::to_string(dim));
  if (n < 16 || (n & (n - 1)) != 0)
    throw std::invalid_argument("grid size must be a power of two >= 16, got " + std::to_string(n));
}

std::size_t Grid::points() const {
  std::size_t p = 1;
  for (int d = 0; d < dim; ++d) p *= static_cast<std::size_t>(n);
  return p;
}

double Grid::dx() const { return 2.0 * M_PI / n; }

int Grid::wavenumber(int i) const { return i < n / 2 ? i : i - n; }

int Grid::index_of(int k) const { return (k + n) % n; }

std::array<int, 3> Grid::wavevector(std::size_t flat) const {
  std::array<int, 3> k{0, 0, 0};
  if (dim == 2) {
    k[1] = wavenumber(static_cast<int>(flat % n));
    k[0] = wavenumber(static_cast<int>(flat / n));
  } else {
    k[2] = wavenumber(static_cast<int>(flat % n));
    flat /= n;
    k[1] = wavenumber(static_cast<int>(flat % n));
    k[0] = wavenumber(static_cast<int>(flat / n));
  }
  return k;
}

std::size_t Grid::flat_index(const std::array<int, 3>& k) const {
  std::size_t f = static_cast<std::size_t>(index_of(k[0]));
  f = f * n + index_of(k[1]);
  if (dim == 3) f = f * n + index_of(k[2]);
  return f;
}

bool Grid::dealias_keeps(long long kk) const {
  return 9 * kk < static_cast<long long>(n) * n;
}

long long Grid::k2(const std::array<int, 3>& k) const {
  long long s = 0;
  for (int d = 0; d < dim; ++d) s += static_cast<long long>(k[d]) * k[d];
  return s;
}

}  // namespace bmhd
