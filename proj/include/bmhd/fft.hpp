#pragma once
#include <vector>

#include "bmhd/field.hpp"

namespace bmhd {

// Complex-to-complex transforms between spectral coefficients and physical
// samples.  Forward carries the 1/n^dim normalization so that coefficients are
// Fourier-series coefficients: f(x) = sum_k c(k) exp(i k.x).
//
// Plans are cached per (dim, n, direction) behind a mutex and executed through
// the new-array interface, so concurrent transforms from worker threads are
// safe as long as each call owns its buffers.
void spectral_to_physical(const Grid& g, const std::vector<cplx>& coeffs,
                          std::vector<cplx>& values);
void physical_to_spectral(const Grid& g, const std::vector<cplx>& values,
                          std::vector<cplx>& coeffs);

// Real physical samples of a Hermitian-symmetric field, storage order.
std::vector<double> to_physical(const ScalarField& f);

// Field from real samples; output is symmetric and Nyquist-free by
// construction of the transform, then explicitly cleaned.
ScalarField field_from_physical(const Grid& g, const std::vector<double>& values);

}  // namespace bmhd
