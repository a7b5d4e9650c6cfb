#pragma once
#include <cstdint>
#include <functional>
#include <string>

#include "bmhd/norms.hpp"
#include "bmhd/rng.hpp"

namespace bmhd {

// Two-phase protocol for inequalities whose constants are existential: measure
// the worst LHS/RHS ratio over a calibration bank, freeze C = margin * max_A,
// then demand an independent bank stays under C and that the two maxima agree
// to 20%.  Bank elements cycle a fixed grid of spectral slopes in [-3, 1] so
// the max statistic sees every regularity class in both phases.
struct EstimateReport {
  std::string name;
  std::string indices;
  int n_trials_a = 0;
  int n_trials_b = 0;
  double max_ratio_a = 0.0;
  double max_ratio_b = 0.0;
  double calibration = 0.0;  // margin * max_ratio_a
  double drift = 0.0;        // |max_a - max_b| / max_a
  bool pass = false;
};

// one bank element: (slope, rng) -> LHS/RHS
using RatioFn = std::function<double(double, Rng&)>;

EstimateReport two_phase_check(const std::string& name, const std::string& indices,
                               const RatioFn& ratio, int n_a, int n_b,
                               std::uint64_t seed, double margin = 1.25);

// Bilinear bound harnesses on random band trajectories over I = [0,1].  Each
// validates its index hypotheses, builds paired trajectory banks, and runs the
// two-phase protocol for one inequality.

// || T_u v ||_{CL^{q/2} B^s_{p,r}} <~ ||u||_{L^q L^inf} ||v||_{CL^q B^s_{p,r}}
EstimateReport paraproduct_linfty_check(const Grid& g, const BesovSpec& target,
                                        double q, int n_a, int n_b,
                                        std::uint64_t seed);

// || T_u v ||_{CL^{q/2} B^{s1+s2}_{p,r}} <~ ||u||_{CL^q B^{s1}_{inf,r1}}
//     ||v||_{CL^q B^{s2}_{p,r2}},  s1 < 0, 1/r = 1/r1 + 1/r2
EstimateReport paraproduct_negative_index_check(const Grid& g,
                                                const BesovSpec& low,
                                                const BesovSpec& high, double q,
                                                int n_a, int n_b,
                                                std::uint64_t seed);

// || R(u,v) ||_{CL^{q/2} B^{s1+s2}_{p,r}} <~ product of factor norms, with
// 1/p = 1/p1 + 1/p2 and 1/r = 1/r1 + 1/r2; s1 + s2 = 0 switches to the
// B^0_{p,inf} endpoint target (then 1/r1 + 1/r2 = 1 is required).
EstimateReport remainder_product_check(const Grid& g, const BesovSpec& a,
                                       const BesovSpec& b, double q, int n_a,
                                       int n_b, std::uint64_t seed);

// || u v ||_{CL^{q/2} B^s_{p,r}} <~ ||u||_{L^q L^inf} ||v||_{CL^q B} +
//     ||u||_{CL^q B} ||v||_{L^q L^inf}
EstimateReport product_linfty_check(const Grid& g, const BesovSpec& target,
                                    double q, int n_a, int n_b,
                                    std::uint64_t seed);

// || u v ||_{CL^{q/2} B^{s1+s2-dim(1/p1+1/p2-1/p)}_{p,r}} <~ product of factor
// norms; needs s_k < dim/p_k, p >= max(p1,p2), and the strict sum condition.
EstimateReport product_embedding_check(const Grid& g, const BesovSpec& a,
                                       const BesovSpec& b, double p, double q,
                                       int n_a, int n_b, std::uint64_t seed);

}  // namespace bmhd
