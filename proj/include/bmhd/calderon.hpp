#pragma once
#include <vector>

#include "bmhd/field.hpp"
#include "bmhd/lp.hpp"
#include "bmhd/mhd.hpp"
#include "bmhd/norms.hpp"

namespace bmhd {

// Low/high spectral split of divergence-free data: the finite-energy block
// (v0,g0) holds the bands below the cut, the small-norm block (w0,h0) holds
// bands j >= j_cut, and the blocks re-sum to the data exactly.
struct SplitData {
  VectorField v0, g0;  // low-band block
  VectorField w0, h0;  // high-band block, small in the target norm
  int j_cut = 0;
  double tail_norm = 0.0;  // pair norm of (w0,h0) in the target space
};

// Smallest cut J with ||(w0,h0)||_{spec_bar} <= threshold, where (w0,h0) =
// (1 - S_J)(u0,b0).  Mean-free data below the low-pass radius of the first
// band makes the split exact band arithmetic.  Throws when even the top-band
// tail misses the threshold.
SplitData calderon_split(const VectorField& u0, const VectorField& b0,
                         const BesovSpec& spec_bar, double threshold,
                         const DyadicPartition& part);

// Companion system for the low block (v,g) driven by a precomputed high-block
// trajectory (w,h), read off by piecewise-cubic interpolation at the stage
// times.  Writing ab for the tensor with entries a_j b_i,
//   dv = P div(gg + gh + hg - vv - vw - wv),
//   dg =   div(gv + hv + gw - vg - vh - wg),
// so superposing the result on (w,h) reproduces a full-system run of the
// summed data.  Storage and monitor contract match march_ifrk4.
Trajectory solve_mhd_like(const VectorField& v0, const VectorField& g0,
                          const Trajectory& wh, double t_end, double dt,
                          int sample_stride, const DyadicPartition& part,
                          const BesovSpec& ledger_spec);

// Energy-boundedness audit of a low-block run against the exponential
// envelope driven by the high block:
//   sup_t [ E(t) + int_0^t ||grad(v,g)||_2^2 ]
//     <= 2 E(0) exp( c_cal int ||(w,h)||^r_{B^{2/p+2/r-1}_{p,r}} ),
// two space dimensions, 2/p + 2/r > 1.  The weight integrates over the
// coefficient trajectory's stored samples.
struct GronwallReport {
  double data_energy = 0.0;      // ||(v0,g0)||_2^2
  double sup_lhs = 0.0;          // worst energy + dissipation total
  double gronwall_weight = 0.0;  // int ||(w,h)||^r dt in the drift space
  double bound = 0.0;            // 2 data_energy exp(c_cal * weight)
  double c_cal = 0.0;
  bool pass = false;
};
GronwallReport gronwall_energy_check(const Trajectory& vg, const Trajectory& wh,
                                     double p, double r, double c_cal,
                                     const DyadicPartition& part);

// Split-pipeline growth study: per data scale, split, march the high block,
// co-march the low block, recombine, and log the sup-in-time B^{2/p-1}_{p,r}
// pair norm against the data norm.  Secant slopes on log-log axes must be
// nondecreasing; a diverging run aborts naming the offending scale.  Two
// space dimensions, 2 < p < inf, 1 <= r < inf.
struct GrowthReport {
  std::vector<double> scales;
  std::vector<double> data_norms;
  std::vector<double> sup_norms;
  std::vector<double> slopes;  // empty when any logged norm vanishes
  bool pass = false;
};
GrowthReport growth_monitor(const std::vector<double>& scales,
                            const VectorField& u0, const VectorField& b0,
                            double p, double r, const BesovSpec& spec_bar,
                            double threshold, double t_end, double dt,
                            int sample_stride, const DyadicPartition& part);

}  // namespace bmhd
