#pragma once
#include <functional>
#include <vector>

#include "bmhd/field.hpp"
#include "bmhd/lp.hpp"
#include "bmhd/norms.hpp"

namespace bmhd {

// Velocity/magnetic pair in spectral form.  Both components are kept
// divergence-free, mean-free, Hermitian-symmetric and dealiased; the stepper
// restores these after every update.
struct MHDState {
  VectorField u, b;
  double t = 0.0;

  explicit MHDState(const Grid& g) : u(g), b(g) {}
  MHDState(VectorField u_, VectorField b_, double t_);
  const Grid& grid() const { return u.grid(); }
};

// ||(u,b)||_2^2 and ||(grad u, grad b)||_2^2, spectral sums
double pair_energy(const MHDState& s);
double pair_dissipation(const MHDState& s);

// restore the gauge and divergence invariants on externally built data
void project_state(MHDState& s);
// worst spectral divergence of u or b relative to the pair L2 norm
double divergence_defect(const MHDState& s);
void require_state(const MHDState& s);

// tendencies of the projected system:
//   du_i = P sum_j d_j(b_j b_i - u_j u_i)
//   db_i =   sum_j d_j(b_j u_i - u_j b_i)
// with every pointwise product dealiased; both outputs divergence-free.
struct Tendency {
  VectorField du, db;
};
Tendency nonlinear_rhs(const MHDState& s);

// advective stability limit 0.5 dx / (max|u| + max|b|)
double cfl_limit(const MHDState& s);

// One integrating-factor RK4 step of y' = Lap y + N(y): classical RK4 applied
// to exp(-t Lap) y, so the stiff linear part is integrated exactly.  Works on
// a flat list of spectra so coupled systems march in lockstep.
using FlatState = std::vector<ScalarField>;
using FlatRhs = std::function<FlatState(const FlatState&, double)>;
FlatState ifrk4_step(const FlatState& y, double t, double dt, const FlatRhs& rhs);

// Single step with CFL guard, re-projection, and non-finite detection.
MHDState step_ifrk4(const MHDState& s, double dt);

// per-sample dyadic records 2^{js} (||Delta_j u||_p + ||Delta_j b||_p)
struct BandLedger {
  BesovSpec spec;
  std::vector<std::vector<double>> rows;
};

// one ledger row: the weighted pair band norms of a single state
std::vector<double> besov_band_row(const MHDState& s, const DyadicPartition& part,
                                   const BesovSpec& spec);

struct Trajectory {
  std::vector<MHDState> states;       // decimated samples, strictly increasing t
  BandLedger ledger;                  // one row per stored state
  std::vector<double> monitor_times;  // every step boundary
  std::vector<double> energy;        // ||(u,b)||_2^2 on monitor_times
  std::vector<double> dissipation;   // ||(grad u, grad b)||_2^2 on monitor_times
  std::vector<double> times() const;
};

// March to t_end in steps of dt (t_end must be an integer multiple), storing
// every sample_stride-th state plus the endpoints; energy monitors are kept at
// full step resolution so the balance quadrature is not degraded by storage.
Trajectory march_ifrk4(const MHDState& s0, double t_end, double dt,
                       int sample_stride, const DyadicPartition& part,
                       const BesovSpec& ledger_spec);

// E(t) + 2 int_0^t ||(grad u, grad b)||_2^2 ds - E(0), trapezoid in time,
// relative to E(0).  Signed drift tracks the inequality direction: positive
// means energy appeared from nowhere.
struct EnergyReport {
  double initial = 0.0;
  double max_abs_drift = 0.0;
  double max_signed_drift = 0.0;
};
EnergyReport energy_balance(const Trajectory& traj);

}  // namespace bmhd
