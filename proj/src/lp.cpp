#include "bmhd/lp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bmhd/ops.hpp"

namespace bmhd {
namespace {

double psi(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

double smooth_step(double t) {  // 0 for t <= 0, 1 for t >= 1
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = psi(t);
  return a / (a + psi(1.0 - t));
}

}  // namespace

double chi_profile(double r) {
  r = std::abs(r);
  return 1.0 - smooth_step((r - 0.75) / (4.0 / 3.0 - 0.75));
}

double phi_profile(double r) { return chi_profile(r / 2.0) - chi_profile(r); }

DyadicPartition::DyadicPartition(const Grid& g, int jmin, int jmax)
    : grid_(g), j_min_(jmin), j_max_(jmax) {
  if (jmin > jmax) throw std::invalid_argument("band range is empty");
  // top band support must fit inside the 2/3-rule ball: (8/3) 2^jmax <= n/3
  if (jmax >= 0 && 8.0 * std::pow(2.0, jmax) > static_cast<double>(g.n))
    throw std::invalid_argument("band " + std::to_string(jmax) +
                                " exceeds the dealiased radius of n = " +
                                std::to_string(g.n));
  const std::size_t total = g.points();
  std::vector<double> absk(total);
  for (std::size_t i = 0; i < total; ++i)
    absk[i] = std::sqrt(static_cast<double>(g.k2(g.wavevector(i))));

  phi_.resize(bands());
  for (int j = j_min_; j <= j_max_; ++j) {
    auto& tab = phi_[j - j_min_];
    tab.resize(total);
    const double scale = std::pow(2.0, -j);
    for (std::size_t i = 0; i < total; ++i) tab[i] = phi_profile(absk[i] * scale);
  }
  chi_.resize(bands() + 3);
  for (int j = j_min_ - 1; j <= j_max_ + 2; ++j) {
    auto& tab = chi_[j - (j_min_ - 1)];
    tab.resize(total);
    const double scale = std::pow(2.0, -j);
    for (std::size_t i = 0; i < total; ++i) tab[i] = chi_profile(absk[i] * scale);
  }
}

const std::vector<double>& DyadicPartition::phi_values(int j) const {
  if (j < j_min_ || j > j_max_) throw std::invalid_argument("band index out of range");
  return phi_[j - j_min_];
}

const std::vector<double>& DyadicPartition::chi_values(int j) const {
  if (j < j_min_ - 1 || j > j_max_ + 2)
    throw std::invalid_argument("low-pass index out of range");
  return chi_[j - (j_min_ - 1)];
}

double DyadicPartition::resolved_radius() const {
  return 0.75 * std::pow(2.0, j_max_ + 1);
}

int default_j_max(const Grid& g) {
  int j = 0;
  while (g.n >> (j + 1) >= 16) ++j;  // n = 2^(j+4)
  return j + 1;                      // log2(n) - 3
}

DyadicPartition make_partition(const Grid& g) {
  return DyadicPartition(g, -2, default_j_max(g));
}

DyadicPartition make_partition(const Grid& g, int j_min, int j_max) {
  return DyadicPartition(g, j_min, j_max);
}

namespace {

ScalarField apply_table(const ScalarField& f, const std::vector<double>& tab) {
  ScalarField r(f.grid);
  for (std::size_t i = 0; i < f.c.size(); ++i) r.c[i] = tab[i] * f.c[i];
  return r;
}

}  // namespace

ScalarField delta_j(const ScalarField& f, const DyadicPartition& part, int j) {
  return apply_table(f, part.phi_values(j));
}

ScalarField s_j(const ScalarField& f, const DyadicPartition& part, int j) {
  return apply_table(f, part.chi_values(j));
}

VectorField delta_j(const VectorField& u, const DyadicPartition& part, int j) {
  VectorField r(u.grid());
  for (int d = 0; d < u.dim(); ++d) r[d] = delta_j(u[d], part, j);
  return r;
}

VectorField s_j(const VectorField& u, const DyadicPartition& part, int j) {
  VectorField r(u.grid());
  for (int d = 0; d < u.dim(); ++d) r[d] = s_j(u[d], part, j);
  return r;
}

std::vector<double> band_lp_norms(const ScalarField& f, double p,
                                  const DyadicPartition& part) {
  std::vector<double> out(part.bands());
  for (int j = part.j_min(); j <= part.j_max(); ++j)
    out[j - part.j_min()] = lp_norm(delta_j(f, part, j), p);
  return out;
}

std::vector<double> band_lp_norms(const VectorField& u, double p,
                                  const DyadicPartition& part) {
  std::vector<double> out(part.bands());
  for (int j = part.j_min(); j <= part.j_max(); ++j)
    out[j - part.j_min()] = lp_norm(delta_j(u, part, j), p);
  return out;
}

ScalarField band_resolve(const ScalarField& f, const DyadicPartition& part) {
  const Grid& g = f.grid;
  const double r2 = part.resolved_radius() * part.resolved_radius();
  ScalarField out = f;
  out.c[0] = 0.0;
  for (std::size_t i = 0; i < out.c.size(); ++i)
    if (static_cast<double>(g.k2(g.wavevector(i))) > r2) out.c[i] = 0.0;
  return out;
}

VectorField band_resolve(const VectorField& u, const DyadicPartition& part) {
  VectorField r(u.grid());
  for (int d = 0; d < u.dim(); ++d) r[d] = band_resolve(u[d], part);
  return r;
}

}  // namespace bmhd
