#pragma once
#include <cstdint>
#include <string>

namespace bmhd {

// Randomized verification of the Lorentz-space product/convolution bounds on
// simple functions.  Each trial draws admissible indices and random step
// functions, computes both sides exactly (the rearrangement of a step function
// is a step function), and records LHS/RHS with the stated constant folded in,
// so every ratio must be <= 1.
struct LorentzCheckReport {
  std::string name;
  int n_trials = 0;
  double max_ratio = 0.0;   // worst LHS / (constant * product of factors)
  double max_lhs_rhs = 0.0; // worst LHS/RHS with the constant left out
  int violations = 0;       // trials with ratio > 1
};

// ||fg||_{(r,s)} <= r' ||f||_{(p1,q1)} ||g||_{(p2,q2)},
// 1/r = 1/p1 + 1/p2 < 1, 1/s <= 1/q1 + 1/q2.  Abstract atomic measure space.
LorentzCheckReport lorentz_holder_check(int n_trials, std::uint64_t seed);

// ||f conv g||_{(r,s)} <= 3r ||f||_{(p1,q1)} ||g||_{(p2,q2)},
// 1/r = 1/p1 + 1/p2 - 1 > 0, 1/s <= 1/q1 + 1/q2.  Convolution on the discrete
// torus with normalized measure, computed by FFT.
LorentzCheckReport lorentz_young_check(int n_trials, std::uint64_t seed);

// sup-norm endpoint: ||f conv g||_inf <= ||f||_{(p,q1)} ||g||_{(p',q2)} with
// 1/p + 1/p' = 1 and conjugate q1, q2 (1/q1 + 1/q2 = 1); constant exactly 1.
LorentzCheckReport lorentz_conv_endpoint_check(int n_trials, std::uint64_t seed);

}  // namespace bmhd
