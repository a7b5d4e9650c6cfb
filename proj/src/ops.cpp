#include "bmhd/ops.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bmhd/fft.hpp"

namespace bmhd {

double lp_norm_samples(const std::vector<double>& vals, double p) {
  if (p < 1.0) throw std::invalid_argument("lp_norm requires p >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : vals) m = std::max(m, std::abs(v));
    return m;
  }
  long double acc = 0.0L;
  if (p == 2.0) {
    for (double v : vals) acc += static_cast<long double>(v) * v;
  } else {
    for (double v : vals) acc += std::pow(std::abs(static_cast<long double>(v)), (long double)p);
  }
  acc /= static_cast<long double>(vals.size());
  return static_cast<double>(std::pow(acc, 1.0L / static_cast<long double>(p)));
}

double lp_norm(const ScalarField& f, double p) {
  if (p == 2.0) {
    // Parseval; exact for symmetric fields and cheaper than collocation
    long double acc = 0.0L;
    for (const cplx& c : f.c) acc += static_cast<long double>(std::norm(c));
    return static_cast<double>(std::sqrt(acc));
  }
  return lp_norm_samples(to_physical(f), p);
}

double lp_norm(const VectorField& u, double p) {
  const std::size_t total = u.grid().points();
  std::vector<double> mag(total, 0.0);
  for (int d = 0; d < u.dim(); ++d) {
    std::vector<double> vals = to_physical(u[d]);
    for (std::size_t i = 0; i < total; ++i) mag[i] += vals[i] * vals[i];
  }
  for (auto& v : mag) v = std::sqrt(v);
  return lp_norm_samples(mag, p);
}

double l2_inner(const ScalarField& a, const ScalarField& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("grid mismatch in inner product");
  long double acc = 0.0L;
  for (std::size_t i = 0; i < a.c.size(); ++i)
    acc += static_cast<long double>(a.c[i].real()) * b.c[i].real() +
           static_cast<long double>(a.c[i].imag()) * b.c[i].imag();
  return static_cast<double>(acc);
}

double l2_inner(const VectorField& a, const VectorField& b) {
  long double acc = 0.0L;
  for (int d = 0; d < a.dim(); ++d) acc += static_cast<long double>(l2_inner(a[d], b[d]));
  return static_cast<double>(acc);
}

double h1_seminorm2(const ScalarField& f) {
  const Grid& g = f.grid;
  long double acc = 0.0L;
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    const long long kk = g.k2(g.wavevector(i));
    if (kk) acc += static_cast<long double>(kk) * std::norm(f.c[i]);
  }
  return static_cast<double>(acc);
}

double h1_seminorm2(const VectorField& u) {
  long double acc = 0.0L;
  for (int d = 0; d < u.dim(); ++d) acc += static_cast<long double>(h1_seminorm2(u[d]));
  return static_cast<double>(acc);
}

ScalarField derivative(const ScalarField& f, int axis) {
  const Grid& g = f.grid;
  if (axis < 0 || axis >= g.dim) throw std::invalid_argument("derivative axis out of range");
  ScalarField r(g);
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    const int k = g.wavevector(i)[axis];
    r.c[i] = cplx(0.0, static_cast<double>(k)) * f.c[i];
  }
  return r;
}

ScalarField laplacian(const ScalarField& f) {
  const Grid& g = f.grid;
  ScalarField r(g);
  for (std::size_t i = 0; i < f.c.size(); ++i)
    r.c[i] = -static_cast<double>(g.k2(g.wavevector(i))) * f.c[i];
  return r;
}

VectorField gradient(const ScalarField& f) {
  VectorField r(f.grid);
  for (int d = 0; d < f.grid.dim; ++d) r[d] = derivative(f, d);
  return r;
}

ScalarField divergence(const VectorField& u) {
  ScalarField r(u.grid());
  for (int d = 0; d < u.dim(); ++d) axpy(r, 1.0, derivative(u[d], d));
  return r;
}

ScalarField multiply_dealiased(const ScalarField& a, const ScalarField& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("grid mismatch in product");
  const Grid& g = a.grid;
  std::vector<double> va = to_physical(a);
  std::vector<double> vb = to_physical(b);
  for (std::size_t i = 0; i < va.size(); ++i) va[i] *= vb[i];
  ScalarField r = field_from_physical(g, va);
  dealias(r);
  return r;
}

VectorField leray_project(const VectorField& u) {
  const Grid& g = u.grid();
  VectorField r(g);
  const std::size_t total = g.points();
  for (std::size_t i = 0; i < total; ++i) {
    const auto k = g.wavevector(i);
    const long long kk = g.k2(k);
    if (kk == 0) {
      for (int d = 0; d < g.dim; ++d) r[d].c[i] = u[d].c[i];
      continue;
    }
    cplx kdotv(0.0);
    for (int d = 0; d < g.dim; ++d) kdotv += static_cast<double>(k[d]) * u[d].c[i];
    kdotv /= static_cast<double>(kk);
    for (int d = 0; d < g.dim; ++d)
      r[d].c[i] = u[d].c[i] - static_cast<double>(k[d]) * kdotv;
  }
  return r;
}

ScalarField dilate(const ScalarField& f, int m) {
  const Grid& g = f.grid;
  if (m < 0) throw std::invalid_argument("dilation exponent must be >= 0");
  const long long factor = 1LL << m;
  // modes below roundoff relative to the peak are not treated as populated
  double peak = 0.0;
  for (const cplx& c : f.c) peak = std::max(peak, std::abs(c));
  const double floor_mag = 1e-13 * peak;
  ScalarField r(g);
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    if (std::abs(f.c[i]) <= floor_mag) continue;
    const auto k = g.wavevector(i);
    std::array<int, 3> t{0, 0, 0};
    for (int d = 0; d < g.dim; ++d) {
      const long long kd = factor * k[d];
      if (kd < -(g.n / 2 - 1) || kd > g.n / 2 - 1)
        throw std::invalid_argument("dilation by 2^" + std::to_string(m) +
                                    " moves a populated mode off the grid");
      t[d] = static_cast<int>(kd);
    }
    r.c[g.flat_index(t)] = f.c[i];
  }
  return r;
}

ScalarField heat_propagate(const ScalarField& f, double t) {
  if (t < 0.0) throw std::invalid_argument("heat propagation requires t >= 0");
  const Grid& g = f.grid;
  ScalarField r(g);
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    const long long kk = g.k2(g.wavevector(i));
    r.c[i] = f.c[i] * std::exp(-static_cast<double>(kk) * t);
  }
  return r;
}

VectorField heat_propagate(const VectorField& u, double t) {
  VectorField r(u.grid());
  for (int d = 0; d < u.dim(); ++d) r[d] = heat_propagate(u[d], t);
  return r;
}

double advective_inner(const VectorField& a, const VectorField& b,
                       const VectorField& c) {
  const Grid& g = a.grid();
  long double acc = 0.0L;
  for (int i = 0; i < g.dim; ++i) {
    ScalarField adv(g);
    for (int j = 0; j < g.dim; ++j)
      axpy(adv, 1.0, multiply_dealiased(a[j], derivative(b[i], j)));
    acc += static_cast<long double>(l2_inner(adv, c[i]));
  }
  return static_cast<double>(acc);
}

}  // namespace bmhd
