#pragma once
#include <vector>

#include "bmhd/mhd.hpp"
#include "bmhd/norms.hpp"

namespace bmhd {

// Fixed-point iteration on the time-discretized mild form
//   y(t) = S(t) y0 + int_0^t S(t-s) N(y(s)) ds
// over a uniform mesh with trapezoid Duhamel quadrature.  The working norm is
// the pair (u-part + b-part) interval norm L~^q of B^{s+2/q}_{p,r}, where
// (s, p, r) is the data space the caller hands in.

enum class PicardStatus { kConverged, kDiverged, kMaxIterations };

struct PicardReport {
  PicardStatus status = PicardStatus::kMaxIterations;
  int iterations = 0;
  std::vector<double> diffs;          // successive-iterate working norms
  std::vector<double> factors;        // diffs[k] / diffs[k-1]
  std::vector<double> iterate_norms;  // working norm of each iterate
  double free_norm = 0.0;             // working norm of the heat trajectory
  double data_norm = 0.0;             // pair Besov norm of (u0, b0)
};

struct PicardResult {
  Trajectory traj;  // empty unless status == kConverged
  PicardReport report;
};

PicardResult picard_solve(const VectorField& u0, const VectorField& b0, double t_end,
                          int n_times, double q, const BesovSpec& data_space,
                          double tol, int max_iter);

// Independent consistency oracle: plug a trajectory into the right side of the
// integral equations with a direct O(n^2) trapezoid sum and report the
// discrepancy in the same pair working norm.  Shares no code path with the
// solver's incremental quadrature.
double mild_residual(const Trajectory& traj, double q, const BesovSpec& data_space,
                     const DyadicPartition& part);

}  // namespace bmhd
