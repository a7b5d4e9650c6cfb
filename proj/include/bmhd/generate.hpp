#pragma once
#include <vector>

#include "bmhd/field.hpp"
#include "bmhd/lp.hpp"
#include "bmhd/rng.hpp"

namespace bmhd {

// Random field and trajectory builders used by test banks and experiments.
// All draw from an explicit Rng so banks are reproducible and forkable.

// Mean-free field with random phases and a prescribed radial spectral slope:
// coefficient magnitude ~ |k|^slope inside the partition's resolved annulus.
ScalarField random_slope_field(const Grid& g, const DyadicPartition& part,
                               double slope, Rng& rng);

// As above, normalized to unit L^2.
ScalarField random_unit_field(const Grid& g, const DyadicPartition& part,
                              double slope, Rng& rng);

// Mean-free field with a Gaussian spectral envelope exp(-(|k|/k_c)^2) and a
// peak near k_peak; very smooth, suited to tight energy-balance budgets.
ScalarField random_smooth_field(const Grid& g, double k_peak, double k_cutoff,
                                Rng& rng);

// Divergence-free, mean-free vector field from independent smooth components.
VectorField random_divfree_field(const Grid& g, double k_peak, double k_cutoff,
                                 Rng& rng);
VectorField random_divfree_slope_field(const Grid& g, const DyadicPartition& part,
                                       double slope, Rng& rng);

// Sampled trajectory with smooth random per-band time modulation of a slope
// field; gives nondegenerate mixed space-time norms without solving anything.
std::vector<ScalarField> random_band_trajectory(const Grid& g,
                                                const DyadicPartition& part,
                                                double slope,
                                                const std::vector<double>& times,
                                                Rng& rng);

// Named smooth initial data on [0, 2*pi)^2.
VectorField taylor_green_velocity(const Grid& g);        // (sin x cos y, -cos x sin y)
VectorField orszag_tang_velocity(const Grid& g);         // (-sin y, sin x)
VectorField orszag_tang_magnetic(const Grid& g);         // (-sin y, sin 2x)

// Uniform mesh helper: n_times samples covering [0, t_end].
std::vector<double> uniform_times(double t_end, int n_times);
// Geometric mesh on [t_first, t_end], n_times samples.
std::vector<double> geometric_times(double t_first, double t_end, int n_times);

}  // namespace bmhd
