#pragma once
#include <cstdint>
#include <vector>

#include "bmhd/estimates.hpp"
#include "bmhd/mhd.hpp"

namespace bmhd {

// ---------------------------------------------------------------------------
// Per-band heat decay.  Each dyadic block of a mean-free field decays under
// the heat flow like exp(-c 4^j t) with c set by the annulus; rates here are
// reported normalized by 4^j so every band is judged on one common window.
// For p = 2 Parseval pins the normalized rate inside ((3/4)^2, (8/3)^2)
// exactly; for other p the floor is an empirical calibration.
// ---------------------------------------------------------------------------

struct BandDecayReport {
  double p = 0.0;
  std::vector<int> bands;        // bands carrying content, ascending
  std::vector<double> min_rate;  // min over the theta grid, normalized by 4^j
  std::vector<double> max_rate;
  double global_min = 0.0;
  double global_max = 0.0;
};

// rate(j, theta) = -log(||Delta_j S(t) f0||_p / ||Delta_j f0||_p) / theta at
// the band-scaled time t = theta / 4^j, so each band sees the same relative
// decay depth.  Bands with no content are omitted.
BandDecayReport band_decay_rates(const ScalarField& f0,
                                 const std::vector<double>& thetas, double p,
                                 const DyadicPartition& part);

// Two-bank calibration of the decay-rate floor: phase A freezes
// floor = min_A / margin over one random bank, phase B must stay above the
// floor on an independent bank with the two minima within 20%.
struct BandCalibrationReport {
  double p = 0.0;
  int n_trials_a = 0;
  int n_trials_b = 0;
  double min_rate_a = 0.0;
  double min_rate_b = 0.0;
  double floor = 0.0;  // min_rate_a / margin
  double drift = 0.0;  // |min_a - min_b| / min_a
  bool pass = false;
};

BandCalibrationReport band_decay_calibration(const Grid& g, double p, int n_a,
                                             int n_b, std::uint64_t seed,
                                             double margin = 1.25);

// ---------------------------------------------------------------------------
// Weighted decay of small mild solutions:
//   sup_{t > 0} t^{1/2 - dim/(2p) + alpha/2} ||grad^alpha (u,b)(t)||_p
// controlled by the critical data norm ||(u0,b0)||_{B^{dim/p-1}_{p,r}}.
// ---------------------------------------------------------------------------

// The weighted sup over the stored samples with t > 0, divided by the data
// norm of the first sample.  alpha is 0 or 1; needs p > dim.  Zero data gives
// zero.
double weighted_decay_ratio(const Trajectory& traj, double p, int alpha,
                            double r_data, const DyadicPartition& part);

// Two-phase bound over a bank of small-data mild solutions with log-uniform
// data scales in [1e-4, 1e-2] and the bank's spectral-slope ladder.
EstimateReport weighted_decay_check(const Grid& g, double p, int alpha, int n_a,
                                    int n_b, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Heat flow into Lorentz time-integrability:
//   || t -> ||S(t)u0||_q ||_{L^{p,2}(0,T)} <= C ||u0||_2
// under the scaling relation 2/p + dim/q = dim/2, 2 < p < inf.
// ---------------------------------------------------------------------------

// Ratio of the Lorentz time-norm on a geometric mesh (first node T * 1e-4,
// 48 nodes) to ||u0||_2.  u0 must be mean-free.
double heat_lorentz_ratio(const ScalarField& u0, double p, double q, double T);

EstimateReport heat_lorentz_check(const Grid& g, double p, double q, double T,
                                  int n_a, int n_b, std::uint64_t seed);

}  // namespace bmhd
