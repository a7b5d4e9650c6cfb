#pragma once
#include <vector>

#include "bmhd/field.hpp"
#include "bmhd/lp.hpp"
#include "bmhd/mhd.hpp"
#include "bmhd/norms.hpp"

namespace bmhd {

// Zero-padded spectral embedding into a finer grid: coefficients are copied
// by wavevector, values untouched, so every L^p and band norm is preserved.
// The fine grid must have the same dimension and n at least the source's.
ScalarField spectral_prolong(const ScalarField& f, const Grid& fine);
VectorField spectral_prolong(const VectorField& u, const Grid& fine);

// Prolongs every stored state; the step-resolution energy monitors carry over
// unchanged (mode-for-mode copying preserves the spectral sums) while band
// rows are rebuilt on the fine partition.
Trajectory prolong_trajectory(const Trajectory& traj, const Grid& fine,
                              const DyadicPartition& fine_part);

// Two-run stability audit.  With (v,g) = strong - weak on a shared grid and
// sample mesh, each sample is checked against the exponential envelope
//   ||(v,g)(t)||_2^2 + int_0^t ||grad(v,g)||_2^2
//     <= exp( c_cal int_0^t ||(u,b)||^r_{B^{dim/p+2/r-1}_{p,r}} )
//        * ||(v,g)(0)||_2^2,
// where (u,b) is the strong run.  Indices need 1 <= p < inf, 2 < r < inf and
// dim/(2p) + 2/r > 1.
struct WeakStrongReport {
  std::vector<double> times;
  std::vector<double> lhs;
  std::vector<double> rhs;
  double initial_gap = 0.0;  // ||(v,g)(0)||_2^2
  double max_ratio = 0.0;    // worst lhs/rhs over samples with rhs > 0
  double c_cal = 0.0;
  bool pass = false;         // lhs <= rhs at every sample
};
WeakStrongReport weak_strong_gap(const Trajectory& strong, const Trajectory& weak,
                                 double p, double r, double c_cal,
                                 const DyadicPartition& part);

}  // namespace bmhd
