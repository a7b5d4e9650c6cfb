#pragma once
#include "bmhd/field.hpp"
#include "bmhd/lp.hpp"

namespace bmhd {

// Splitting of a pointwise product into low-high, high-low and diagonal
// frequency interactions.  On mean-free band-resolved inputs the three pieces
// sum back to the dealiased product to roundoff, because the band filters
// resolve the identity there and every piece is formed with the same
// dealiased collocation product.

// T_low high = sum_j S_{j-1}(low) . Delta_j(high), each term dealiased.
ScalarField paraproduct(const ScalarField& low, const ScalarField& high,
                        const DyadicPartition& part);

// R(f,g) = sum over |i-j| <= 1 of Delta_i f . Delta_j g (band range clamped).
ScalarField paraproduct_remainder(const ScalarField& f, const ScalarField& g,
                                  const DyadicPartition& part);

struct BonySplit {
  ScalarField t_gf;       // low(g) x high(f)
  ScalarField t_fg;       // low(f) x high(g)
  ScalarField remainder;  // diagonal interactions
};

BonySplit bony_decompose(const ScalarField& f, const ScalarField& g,
                         const DyadicPartition& part);

}  // namespace bmhd
