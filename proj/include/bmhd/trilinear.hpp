#pragma once
#include <cstdint>
#include <vector>

#include "bmhd/estimates.hpp"
#include "bmhd/field.hpp"
#include "bmhd/lp.hpp"

namespace bmhd {

// Vector field path sampled on a strictly increasing time mesh; the advective
// integrals below walk these slices with trapezoid weights.
struct FieldPath {
  std::vector<VectorField> fields;
  std::vector<double> times;
};

// T(a,b,c)(t) = int_0^t int ((a.grad) b) . c dx ds with spectral space
// quadrature per slice.  All three paths share one mesh; t must be a node.
// For divergence-free a the form is antisymmetric in (b, c), so T(a,v,v) = 0
// and the paired exchange T(h,g,v) + T(h,v,g) = 0 hold slice by slice.
double trilinear_form(const FieldPath& a, const FieldPath& b, const FieldPath& c,
                      double t);

// Interval bounds for the advective form with the third slot measured in
// L^sigma([0,1]; B^{dim/r + 2/sigma - 1}_{r,sigma}).  Index hypotheses:
// 2 <= r < inf, 2 < sigma < inf, dim/r + 2/sigma > 1.  Three inequalities on
// shared bank shapes, each run through the two-phase protocol:
//   product:   |T(a,b,c)| <= C (I1 + I2 + I3), interpolation products of the
//              energy norms ||.||_{LinfL2}, ||grad .||_{L2L2} of a and b
//              against the c norm;
//   split:     |T(a,b,c)| <= eps ||grad(a,b)||^2_{L2L2}
//                + C(eps) int (||a||_2^2 + ||b||_2^2) ||c||_B^sigma ds;
//   symmetric: the b = a case of the split form.
struct TrilinearChecks {
  EstimateReport product;
  EstimateReport split;
  EstimateReport symmetric;
  bool pass = false;
};
TrilinearChecks trilinear_bound_check(const Grid& g, double r, double sigma,
                                      double eps, int n_a, int n_b,
                                      std::uint64_t seed);

}  // namespace bmhd
