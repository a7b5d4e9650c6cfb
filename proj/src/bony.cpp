#include "bmhd/bony.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bmhd/ops.hpp"

namespace bmhd {

namespace {

void require_compatible(const ScalarField& a, const ScalarField& b,
                        const DyadicPartition& part) {
  if (!(a.grid == part.grid()) || !(b.grid == part.grid()))
    throw std::invalid_argument("product factors must live on the partition grid");
}

// the splitting telescopes only when the zero mode is absent from both factors
void require_mean_free(const ScalarField& f, const char* role) {
  const double scale = std::max(1.0, lp_norm(f, 2.0));
  if (std::abs(f.mean()) > 1e-10 * scale)
    throw std::invalid_argument(std::string(role) + " must be mean-free");
}

}  // namespace

ScalarField paraproduct(const ScalarField& low, const ScalarField& high,
                        const DyadicPartition& part) {
  require_compatible(low, high, part);
  require_mean_free(low, "low-frequency product factor");
  require_mean_free(high, "high-frequency product factor");
  ScalarField acc(part.grid());
  for (int j = part.j_min(); j <= part.j_max(); ++j) {
    const ScalarField band = delta_j(high, part, j);
    axpy(acc, 1.0, multiply_dealiased(s_j(low, part, j - 1), band));
  }
  return acc;
}

ScalarField paraproduct_remainder(const ScalarField& f, const ScalarField& g,
                                  const DyadicPartition& part) {
  require_compatible(f, g, part);
  require_mean_free(f, "product factor");
  require_mean_free(g, "product factor");
  ScalarField acc(part.grid());
  for (int j = part.j_min(); j <= part.j_max(); ++j) {
    // three-diagonal partner sum, clamped to the band range
    ScalarField partner(part.grid());
    for (int k = j - 1; k <= j + 1; ++k) {
      if (k < part.j_min() || k > part.j_max()) continue;
      axpy(partner, 1.0, delta_j(g, part, k));
    }
    axpy(acc, 1.0, multiply_dealiased(delta_j(f, part, j), partner));
  }
  return acc;
}

BonySplit bony_decompose(const ScalarField& f, const ScalarField& g,
                         const DyadicPartition& part) {
  return BonySplit{paraproduct(g, f, part), paraproduct(f, g, part),
                   paraproduct_remainder(f, g, part)};
}

}  // namespace bmhd
