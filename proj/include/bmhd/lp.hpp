#pragma once
#include <vector>

#include "bmhd/field.hpp"

namespace bmhd {

// Radial cutoff profiles for the dyadic decomposition.
//
// chi is a smooth step: identically 1 on |xi| <= 3/4, identically 0 on
// |xi| >= 4/3, monotone between, built from s(t) = psi(t)/(psi(t)+psi(1-t))
// with psi(t) = exp(-1/t).  phi(xi) = chi(xi/2) - chi(xi) is supported on
// 3/4 <= |xi| <= 8/3 and telescopes: sum_j phi(2^-j xi) = 1 away from 0.
double chi_profile(double r);
double phi_profile(double r);

// Band filters on a fixed grid.  Band j multiplies by phi(2^-j |k|), the
// low-pass S_j by chi(2^-j |k|).  Bands j_min..j_max must fit the dealiased
// ball: (8/3) 2^j_max <= n/3.
//
// Exact-calculus region: for 1 <= |k| <= (3/4) 2^(j_max+1) the band filters
// resolve the identity, sum_j phi_j(k) = 1 (j_min <= -2 makes the low end
// unconditional on the integer lattice).
class DyadicPartition {
 public:
  DyadicPartition(const Grid& g, int j_min, int j_max);

  const Grid& grid() const { return grid_; }
  int j_min() const { return j_min_; }
  int j_max() const { return j_max_; }
  int bands() const { return j_max_ - j_min_ + 1; }

  // multiplier tables over storage indices
  const std::vector<double>& phi_values(int j) const;
  const std::vector<double>& chi_values(int j) const;  // j in [j_min-1, j_max+2]

  // largest |k| with sum_j phi_j(k) = 1
  double resolved_radius() const;

 private:
  Grid grid_;
  int j_min_, j_max_;
  std::vector<std::vector<double>> phi_;
  std::vector<std::vector<double>> chi_;  // indexed from j_min-1
};

// Default band range for a grid: j_min = -2, j_max = log2(n) - 3 (the largest
// band whose support fits in the 2/3-rule ball).
DyadicPartition make_partition(const Grid& g);
DyadicPartition make_partition(const Grid& g, int j_min, int j_max);
int default_j_max(const Grid& g);

// Band projection Delta_j and low-pass S_j.  Delta_j always kills the zero
// mode (phi(0) = 0); S_j passes it (chi(0) = 1).
ScalarField delta_j(const ScalarField& f, const DyadicPartition& part, int j);
ScalarField s_j(const ScalarField& f, const DyadicPartition& part, int j);
VectorField delta_j(const VectorField& u, const DyadicPartition& part, int j);
VectorField s_j(const VectorField& u, const DyadicPartition& part, int j);

// ||Delta_j f||_p for every band, j_min..j_max.
std::vector<double> band_lp_norms(const ScalarField& f, double p,
                                  const DyadicPartition& part);
std::vector<double> band_lp_norms(const VectorField& u, double p,
                                  const DyadicPartition& part);

// Restricts f to the region where the partition resolves the identity
// (mean removed, modes above resolved_radius() zeroed).  Fields produced
// this way reconstruct exactly from their bands.
ScalarField band_resolve(const ScalarField& f, const DyadicPartition& part);
VectorField band_resolve(const VectorField& u, const DyadicPartition& part);

}  // namespace bmhd
