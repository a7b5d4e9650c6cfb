#pragma once
#include <vector>

#include "bmhd/field.hpp"
#include "bmhd/lp.hpp"

namespace bmhd {

// Index triple for a homogeneous Besov seminorm: ( sum_j (2^{js} ||Delta_j
// f||_p)^r )^{1/r}.  p or r may be infinity.
struct BesovSpec {
  double s = 0.0;
  double p = 2.0;
  double r = 2.0;
};

// Mixed time-space seminorm of Chemin-Lerner type over an interval sampled at
// strictly increasing times: the time-L^rho norm is taken per band first
// (trapezoid quadrature; rho = inf takes the max), then the weighted l^r sum
// over bands.
struct MixedNormSpec {
  double rho = 2.0;
  BesovSpec besov;
  std::vector<double> times;
};

// Lorentz indices; p > 1 required, q may be infinity.
struct LorentzSpec {
  double p = 2.0;
  double q = 2.0;
};

// l^r combination of nonnegative terms; r = inf takes the max.
double lr_sum(const std::vector<double>& terms, double r);

// Time-L^rho of sampled values by trapezoid quadrature; rho = inf is the max.
double time_lp(const std::vector<double>& values, const std::vector<double>& times,
               double rho);

double besov_norm(const ScalarField& f, const BesovSpec& spec,
                  const DyadicPartition& part);
double besov_norm(const VectorField& u, const BesovSpec& spec,
                  const DyadicPartition& part);

// Inhomogeneous variant: bands j >= 0 plus the low-pass block ||S_0 f||_p.
double inhomogeneous_besov_norm(const ScalarField& f, const BesovSpec& spec,
                                const DyadicPartition& part);

double chemin_lerner_norm(const std::vector<ScalarField>& traj,
                          const MixedNormSpec& spec, const DyadicPartition& part);
double chemin_lerner_norm(const std::vector<VectorField>& traj,
                          const MixedNormSpec& spec, const DyadicPartition& part);

// Iterated norm L^rho_t(Besov): time quadrature of per-sample Besov norms.
double time_lp_besov(const std::vector<VectorField>& traj,
                     const std::vector<double>& times, double rho,
                     const BesovSpec& spec, const DyadicPartition& part);

// Lorentz norm of a simple function given by (value, weight) samples:
// ( int_0^inf (t^{1/p} f*(t))^q dt/t )^{1/q} with f* the decreasing
// rearrangement, computed exactly as a step function.
double lorentz_norm(const std::vector<double>& values,
                    const std::vector<double>& weights, const LorentzSpec& spec);

// Field samples with the uniform normalized weight 1/n^dim.
double lorentz_norm(const ScalarField& f, const LorentzSpec& spec);

// Lorentz norm in time of sampled |values| >= 0 over an interval; weights are
// the trapezoid interval lengths.
double lorentz_time_norm(const std::vector<double>& values,
                         const std::vector<double>& times, const LorentzSpec& spec);

void require_increasing_times(const std::vector<double>& times);

}  // namespace bmhd
