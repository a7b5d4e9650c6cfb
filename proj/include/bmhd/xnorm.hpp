#pragma once
#include <cstdint>

#include "bmhd/estimates.hpp"
#include "bmhd/mhd.hpp"

namespace bmhd {

// Four-component interval norm of a pair trajectory on its sample mesh:
//   x1 = sup_{t>0} t^{1/4} ||(u,b)(t)||_{L4}
//   x2 = || ||(u,b)(t)||_{L4} ||_{L4}
//   x3 = ( int ||grad(u,b)||_2^2 dt )^{1/2}
//   x4 = || ||(u,b)(t)||_{L^{2r/(r-1)}} ||_{L^{2r,2}},   r > 1.
// Pair space norms are component sums; x3 uses the energy pairing.
struct XNormReport {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;
  double x4 = 0.0;
  double total() const { return x1 + x2 + x3 + x4; }
};
XNormReport x_norm(const Trajectory& traj, double r);

// Free-evolution bound: the interval norm of the heat flow of random L^2 data
// stays within a calibrated multiple of the data's L^2 size.  Trajectories
// are sampled on {0} followed by a geometric mesh reaching down to T * 1e-4.
EstimateReport x_norm_free_bound_check(const Grid& g, double r, double T,
                                       int n_times, int n_a, int n_b,
                                       std::uint64_t seed);

}  // namespace bmhd
