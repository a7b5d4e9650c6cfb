#include "bmhd/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "bmhd/bony.hpp"
#include "bmhd/generate.hpp"
#include "bmhd/ops.hpp"

namespace bmhd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kNumTimes = 9;
constexpr double kSlopeLo = -3.0;
constexpr double kSlopeHi = 1.0;
constexpr int kSlopeLevels = 9;

// both banks walk the same slope ladder so their max statistics are comparable
double stratified_slope(int trial) {
  const int level = trial % kSlopeLevels;
  return kSlopeLo + (kSlopeHi - kSlopeLo) * level / (kSlopeLevels - 1);
}

std::string fmt(double x) {
  if (std::isinf(x)) return "inf";
  std::ostringstream os;
  os << x;
  return os.str();
}

double safe_ratio(double lhs, double rhs) {
  if (rhs <= 0.0) return lhs > 0.0 ? kInf : 0.0;
  return lhs / rhs;
}

// 1/x = 1/a + 1/b with infinities passing through
double harmonic(double a, double b) {
  const double inv = 1.0 / a + 1.0 / b;
  return inv == 0.0 ? kInf : 1.0 / inv;
}

// the homogeneous space is complete iff s < dim/p, or s = dim/p with r = 1
void require_banach(const BesovSpec& sp, int dim, const char* role) {
  const double limit = static_cast<double>(dim) / sp.p;
  if (sp.s < limit) return;
  if (sp.s == limit && sp.r == 1.0) return;
  throw std::invalid_argument(std::string(role) +
                              ": completeness needs s < dim/p, or s = dim/p with r = 1");
}

void require_time_exponent(double q) {
  if (!(q >= 2.0))
    throw std::invalid_argument(
        "time exponent must satisfy q >= 2 so the interval norm L^{q/2} is defined");
}

struct TrajBank {
  std::vector<double> times;
  std::vector<ScalarField> u, v;
};

TrajBank make_pair(const Grid& g, const DyadicPartition& part, double slope_u,
                   Rng& rng) {
  TrajBank tb;
  tb.times = uniform_times(1.0, kNumTimes);
  tb.u = random_band_trajectory(g, part, slope_u, tb.times, rng);
  tb.v = random_band_trajectory(g, part, rng.uniform(kSlopeLo, kSlopeHi),
                                tb.times, rng);
  return tb;
}

template <typename Op>
std::vector<ScalarField> map_pairs(const TrajBank& tb, Op&& op) {
  std::vector<ScalarField> w;
  w.reserve(tb.u.size());
  for (std::size_t i = 0; i < tb.u.size(); ++i) w.push_back(op(tb.u[i], tb.v[i]));
  return w;
}

// || t -> sup_x |f(t)| ||_{L^q(I)}
double sup_time_lq(const std::vector<ScalarField>& traj,
                   const std::vector<double>& times, double q) {
  std::vector<double> sup(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) sup[i] = lp_norm(traj[i], kInf);
  return time_lp(sup, times, q);
}

}  // namespace

EstimateReport two_phase_check(const std::string& name, const std::string& indices,
                               const RatioFn& ratio, int n_a, int n_b,
                               std::uint64_t seed, double margin) {
  if (n_a <= 0 || n_b <= 0)
    throw std::invalid_argument("calibration banks must be nonempty");
  EstimateReport rep;
  rep.name = name;
  rep.indices = indices;
  rep.n_trials_a = n_a;
  rep.n_trials_b = n_b;
  Rng base(seed);
  const auto bank_max = [&](int n, std::uint64_t stream) {
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
      Rng rng = base.fork(stream + static_cast<std::uint64_t>(t));
      worst = std::max(worst, ratio(stratified_slope(t), rng));
    }
    return worst;
  };
  rep.max_ratio_a = bank_max(n_a, 1);
  rep.max_ratio_b = bank_max(n_b, 100003);  // disjoint fork streams
  rep.calibration = margin * rep.max_ratio_a;
  if (rep.max_ratio_a > 0.0)
    rep.drift = std::abs(rep.max_ratio_a - rep.max_ratio_b) / rep.max_ratio_a;
  else
    rep.drift = rep.max_ratio_b > 0.0 ? kInf : 0.0;
  rep.pass = std::isfinite(rep.max_ratio_a) && std::isfinite(rep.max_ratio_b) &&
             rep.max_ratio_a > 0.0 && rep.max_ratio_b <= rep.calibration &&
             rep.drift <= 0.2;
  return rep;
}

EstimateReport paraproduct_linfty_check(const Grid& g, const BesovSpec& target,
                                        double q, int n_a, int n_b,
                                        std::uint64_t seed) {
  require_time_exponent(q);
  require_banach(target, g.dim, "paraproduct target space");
  const DyadicPartition part = make_partition(g);
  const RatioFn ratio = [g, part, target, q](double slope, Rng& rng) {
    const TrajBank tb = make_pair(g, part, slope, rng);
    const auto w = map_pairs(tb, [&part](const ScalarField& a, const ScalarField& b) {
      return paraproduct(a, b, part);
    });
    const double lhs = chemin_lerner_norm(w, {q / 2.0, target, tb.times}, part);
    const double rhs = sup_time_lq(tb.u, tb.times, q) *
                       chemin_lerner_norm(tb.v, {q, target, tb.times}, part);
    return safe_ratio(lhs, rhs);
  };
  const std::string idx = "s=" + fmt(target.s) + " p=" + fmt(target.p) +
                          " r=" + fmt(target.r) + " q=" + fmt(q);
  return two_phase_check("paraproduct_linfty", idx, ratio, n_a, n_b, seed);
}

EstimateReport paraproduct_negative_index_check(const Grid& g,
                                                const BesovSpec& low,
                                                const BesovSpec& high, double q,
                                                int n_a, int n_b,
                                                std::uint64_t seed) {
  require_time_exponent(q);
  if (!std::isinf(low.p))
    throw std::invalid_argument(
        "low-frequency factor is controlled through sup norms; its integrability "
        "index must be infinite");
  if (!(low.s < 0.0))
    throw std::invalid_argument(
        "low-frequency telescoping needs a negative regularity index");
  require_banach(high, g.dim, "high-frequency factor space");
  const BesovSpec target{low.s + high.s, high.p, harmonic(low.r, high.r)};
  require_banach(target, g.dim, "paraproduct target space");
  const DyadicPartition part = make_partition(g);
  const RatioFn ratio = [g, part, low, high, target, q](double slope, Rng& rng) {
    const TrajBank tb = make_pair(g, part, slope, rng);
    const auto w = map_pairs(tb, [&part](const ScalarField& a, const ScalarField& b) {
      return paraproduct(a, b, part);
    });
    const double lhs = chemin_lerner_norm(w, {q / 2.0, target, tb.times}, part);
    const double rhs = chemin_lerner_norm(tb.u, {q, low, tb.times}, part) *
                       chemin_lerner_norm(tb.v, {q, high, tb.times}, part);
    return safe_ratio(lhs, rhs);
  };
  const std::string idx = "s1=" + fmt(low.s) + " r1=" + fmt(low.r) +
                          " s2=" + fmt(high.s) + " p=" + fmt(high.p) +
                          " r2=" + fmt(high.r) + " q=" + fmt(q);
  return two_phase_check("paraproduct_negative_index", idx, ratio, n_a, n_b, seed);
}

EstimateReport remainder_product_check(const Grid& g, const BesovSpec& a,
                                       const BesovSpec& b, double q, int n_a,
                                       int n_b, std::uint64_t seed) {
  require_time_exponent(q);
  if (1.0 / a.p + 1.0 / b.p > 1.0)
    throw std::invalid_argument(
        "factor integrability must compose: 1/p1 + 1/p2 <= 1");
  if (1.0 / a.r + 1.0 / b.r > 1.0)
    throw std::invalid_argument(
        "factor band-sum exponents must compose: 1/r1 + 1/r2 <= 1");
  require_banach(a, g.dim, "first factor space");
  require_banach(b, g.dim, "second factor space");
  const double p = harmonic(a.p, b.p);
  const double r = harmonic(a.r, b.r);
  const double ssum = a.s + b.s;
  const double top = static_cast<double>(g.dim) / p;
  BesovSpec target{ssum, p, r};
  std::string name = "remainder_product";
  if (ssum == 0.0) {
    if (1.0 / a.r + 1.0 / b.r != 1.0)
      throw std::invalid_argument(
          "the zero-regularity endpoint needs conjugate band-sum exponents: "
          "1/r1 + 1/r2 = 1");
    target.r = kInf;
    name = "remainder_endpoint";
  } else if (ssum == top) {
    if (r != 1.0)
      throw std::invalid_argument(
          "the top-regularity endpoint s1 + s2 = dim/p needs r = 1");
  } else if (!(ssum > 0.0 && ssum < top)) {
    throw std::invalid_argument(
        "diagonal interactions demand 0 < s1 + s2 < dim/p");
  }
  const DyadicPartition part = make_partition(g);
  const BesovSpec tgt = target;
  const RatioFn ratio = [g, part, a, b, tgt, q](double slope, Rng& rng) {
    const TrajBank tb = make_pair(g, part, slope, rng);
    const auto w = map_pairs(tb, [&part](const ScalarField& x, const ScalarField& y) {
      return paraproduct_remainder(x, y, part);
    });
    const double lhs = chemin_lerner_norm(w, {q / 2.0, tgt, tb.times}, part);
    const double rhs = chemin_lerner_norm(tb.u, {q, a, tb.times}, part) *
                       chemin_lerner_norm(tb.v, {q, b, tb.times}, part);
    return safe_ratio(lhs, rhs);
  };
  const std::string idx = "s1=" + fmt(a.s) + " p1=" + fmt(a.p) + " r1=" + fmt(a.r) +
                          " s2=" + fmt(b.s) + " p2=" + fmt(b.p) + " r2=" + fmt(b.r) +
                          " q=" + fmt(q);
  return two_phase_check(name, idx, ratio, n_a, n_b, seed);
}

EstimateReport product_linfty_check(const Grid& g, const BesovSpec& target,
                                    double q, int n_a, int n_b,
                                    std::uint64_t seed) {
  require_time_exponent(q);
  const double top = static_cast<double>(g.dim) / target.p;
  if (!(target.s > 0.0 && target.s < top))
    throw std::invalid_argument("product bound requires 0 < s < dim/p");
  const DyadicPartition part = make_partition(g);
  const RatioFn ratio = [g, part, target, q](double slope, Rng& rng) {
    const TrajBank tb = make_pair(g, part, slope, rng);
    const auto w = map_pairs(tb, [](const ScalarField& x, const ScalarField& y) {
      return multiply_dealiased(x, y);
    });
    const double lhs = chemin_lerner_norm(w, {q / 2.0, target, tb.times}, part);
    const MixedNormSpec cl{q, target, tb.times};
    const double rhs = sup_time_lq(tb.u, tb.times, q) * chemin_lerner_norm(tb.v, cl, part) +
                       chemin_lerner_norm(tb.u, cl, part) * sup_time_lq(tb.v, tb.times, q);
    return safe_ratio(lhs, rhs);
  };
  const std::string idx = "s=" + fmt(target.s) + " p=" + fmt(target.p) +
                          " r=" + fmt(target.r) + " q=" + fmt(q);
  return two_phase_check("product_linfty", idx, ratio, n_a, n_b, seed);
}

EstimateReport product_embedding_check(const Grid& g, const BesovSpec& a,
                                       const BesovSpec& b, double p, double q,
                                       int n_a, int n_b, std::uint64_t seed) {
  require_time_exponent(q);
  const double dim = static_cast<double>(g.dim);
  if (!(a.s < dim / a.p) || !(b.s < dim / b.p))
    throw std::invalid_argument("each factor needs s_k < dim/p_k");
  if (p < std::max(a.p, b.p))
    throw std::invalid_argument(
        "the target integrability cannot drop below either factor's: p >= max(p1, p2)");
  const double deficit = dim * (1.0 / a.p + 1.0 / b.p - 1.0 / p);
  if (!(a.s + b.s > deficit))
    throw std::invalid_argument(
        "the regularity sum must defeat the integrability deficit: "
        "s1 + s2 > dim(1/p1 + 1/p2 - 1/p)");
  const BesovSpec target{a.s + b.s - deficit, p, harmonic(a.r, b.r)};
  require_banach(target, g.dim, "product target space");
  const DyadicPartition part = make_partition(g);
  const RatioFn ratio = [g, part, a, b, target, q](double slope, Rng& rng) {
    const TrajBank tb = make_pair(g, part, slope, rng);
    const auto w = map_pairs(tb, [](const ScalarField& x, const ScalarField& y) {
      return multiply_dealiased(x, y);
    });
    const double lhs = chemin_lerner_norm(w, {q / 2.0, target, tb.times}, part);
    const double rhs = chemin_lerner_norm(tb.u, {q, a, tb.times}, part) *
                       chemin_lerner_norm(tb.v, {q, b, tb.times}, part);
    return safe_ratio(lhs, rhs);
  };
  const std::string idx = "s1=" + fmt(a.s) + " p1=" + fmt(a.p) + " r1=" + fmt(a.r) +
                          " s2=" + fmt(b.s) + " p2=" + fmt(b.p) + " r2=" + fmt(b.r) +
                          " p=" + fmt(p) + " q=" + fmt(q);
  return two_phase_check("product_embedding", idx, ratio, n_a, n_b, seed);
}

}  // namespace bmhd
