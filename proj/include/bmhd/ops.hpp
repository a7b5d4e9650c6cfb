#pragma once
#include <vector>

#include "bmhd/field.hpp"

namespace bmhd {

// Lebesgue norms on the normalized torus, (mean |f|^p)^(1/p); p = inf gives the
// max over samples.  Vector overloads use the pointwise Euclidean magnitude.
double lp_norm(const ScalarField& f, double p);
double lp_norm(const VectorField& u, double p);
double lp_norm_samples(const std::vector<double>& vals, double p);

// L2 inner product, normalized measure, computed spectrally (Parseval).
double l2_inner(const ScalarField& a, const ScalarField& b);
double l2_inner(const VectorField& a, const VectorField& b);

// sum_k |k|^2 |c(k)|^2 = ||grad f||_2^2.
double h1_seminorm2(const ScalarField& f);
double h1_seminorm2(const VectorField& u);

ScalarField derivative(const ScalarField& f, int axis);
ScalarField laplacian(const ScalarField& f);
VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& u);

// Pointwise product via collocation with 2/3-rule truncation of the output.
// Inputs are expected dealiased; then every retained output mode equals the
// exact coefficient convolution.
ScalarField multiply_dealiased(const ScalarField& a, const ScalarField& b);

// Projection onto divergence-free fields: v - k (k.v)/|k|^2, zero mode kept.
VectorField leray_project(const VectorField& u);

// f(2^m x): moves mode k to 2^m k.  Rejects if any populated mode would leave
// the grid's wavenumber range.
ScalarField dilate(const ScalarField& f, int m);

// Heat semigroup: multiplies c(k) by exp(-|k|^2 t).  t >= 0.
ScalarField heat_propagate(const ScalarField& f, double t);
VectorField heat_propagate(const VectorField& u, double t);

// Advective trilinear form at one instant: integral of ((a.grad) b) . c with
// every product dealiased.  For divergence-free a this is antisymmetric in
// (b, c), which the energy monitors exploit.
double advective_inner(const VectorField& a, const VectorField& b,
                       const VectorField& c);

}  // namespace bmhd
