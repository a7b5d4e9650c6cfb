#include "bmhd/decay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "bmhd/generate.hpp"
#include "bmhd/ops.hpp"
#include "bmhd/picard.hpp"

namespace bmhd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// same slope ladder as the bilinear harnesses so bank minima are comparable
constexpr double kSlopeLo = -3.0;
constexpr double kSlopeHi = 1.0;
constexpr int kSlopeLevels = 9;

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

void require_mean_free(const ScalarField& f, const char* role) {
  const double scale = std::max(1.0, lp_norm(f, 2.0));
  if (std::abs(f.mean()) > 1e-10 * scale)
    throw std::invalid_argument(std::string(role) + " must be mean-free");
}

void require_heat_lorentz_indices(int dim, double p, double q) {
  if (!(p > 2.0) || std::isinf(p))
    throw std::invalid_argument(
        "the Lorentz time exponent must satisfy 2 < p < infinity");
  if (!(q >= 1.0) || std::isinf(q))
    throw std::invalid_argument("the spatial exponent must be finite and >= 1");
  const double defect = 2.0 / p + dim / q - dim / 2.0;
  if (std::abs(defect) > 1e-12)
    throw std::invalid_argument(
        "the indices must satisfy the heat scaling relation 2/p + dim/q = dim/2");
}

}  // namespace

BandDecayReport band_decay_rates(const ScalarField& f0,
                                 const std::vector<double>& thetas, double p,
                                 const DyadicPartition& part) {
  if (!(f0.grid == part.grid()))
    throw std::invalid_argument("the field must live on the partition grid");
  if (!(p >= 1.0))
    throw std::invalid_argument("the band norm index must satisfy p >= 1");
  if (thetas.empty())
    throw std::invalid_argument("at least one sampling depth is required");
  for (double th : thetas)
    if (!(th > 0.0) || !std::isfinite(th))
      throw std::invalid_argument("decay sampling depths must be positive and finite");
  require_mean_free(f0, "the decaying field");

  BandDecayReport rep;
  rep.p = p;
  rep.global_min = kInf;
  rep.global_max = 0.0;
  const double scale = lp_norm(f0, p);
  if (scale == 0.0) {
    rep.global_min = 0.0;
    return rep;
  }
  for (int j = part.j_min(); j <= part.j_max(); ++j) {
    const ScalarField d0 = delta_j(f0, part, j);
    const double n0 = lp_norm(d0, p);
    if (n0 <= 1e-13 * scale) continue;  // band carries no content
    const double four_j = std::ldexp(1.0, 2 * j);
    double lo = kInf, hi = 0.0;
    for (double th : thetas) {
      // theta / 4^j puts every band at the same relative decay depth
      const double nt = lp_norm(heat_propagate(d0, th / four_j), p);
      const double rate = nt > 0.0 ? -std::log(nt / n0) / th : kInf;
      lo = std::min(lo, rate);
      hi = std::max(hi, rate);
    }
    rep.bands.push_back(j);
    rep.min_rate.push_back(lo);
    rep.max_rate.push_back(hi);
    rep.global_min = std::min(rep.global_min, lo);
    rep.global_max = std::max(rep.global_max, hi);
  }
  if (rep.bands.empty()) rep.global_min = 0.0;
  return rep;
}

BandCalibrationReport band_decay_calibration(const Grid& g, double p, int n_a,
                                             int n_b, std::uint64_t seed,
                                             double margin) {
  if (!(p >= 1.0))
    throw std::invalid_argument("the band norm index must satisfy p >= 1");
  if (n_a <= 0 || n_b <= 0)
    throw std::invalid_argument("calibration banks must be nonempty");
  if (!(margin > 1.0))
    throw std::invalid_argument("the calibration margin must exceed 1");

  const DyadicPartition part = make_partition(g);
  const std::vector<double> thetas = {0.25, 1.0, 4.0};
  Rng base(seed);
  const auto bank_min = [&](int n, std::uint64_t stream) {
    double worst = kInf;
    for (int t = 0; t < n; ++t) {
      Rng rng = base.fork(stream + static_cast<std::uint64_t>(t));
      const ScalarField f = random_slope_field(g, part, stratified_slope(t), rng);
      worst = std::min(worst, band_decay_rates(f, thetas, p, part).global_min);
    }
    return worst;
  };

  BandCalibrationReport rep;
  rep.p = p;
  rep.n_trials_a = n_a;
  rep.n_trials_b = n_b;
  rep.min_rate_a = bank_min(n_a, 1);
  rep.min_rate_b = bank_min(n_b, 100003);  // disjoint fork streams
  rep.floor = rep.min_rate_a / margin;
  rep.drift = rep.min_rate_a > 0.0
                  ? std::abs(rep.min_rate_a - rep.min_rate_b) / rep.min_rate_a
                  : kInf;
  rep.pass = std::isfinite(rep.min_rate_a) && std::isfinite(rep.min_rate_b) &&
             rep.min_rate_a > 0.0 && rep.min_rate_b >= rep.floor &&
             rep.drift <= 0.2;
  return rep;
}

double weighted_decay_ratio(const Trajectory& traj, double p, int alpha,
                            double r_data, const DyadicPartition& part) {
  if (traj.states.empty())
    throw std::invalid_argument("the trajectory holds no samples");
  const int dim = traj.states.front().grid().dim;
  if (!(p > static_cast<double>(dim)))
    throw std::invalid_argument("the weighted decay exponent must satisfy p > dim");
  if (alpha != 0 && alpha != 1)
    throw std::invalid_argument("the derivative count must be 0 or 1");
  if (!(r_data >= 1.0))
    throw std::invalid_argument("the data summation index must satisfy r >= 1");

  const BesovSpec data_spec{static_cast<double>(dim) / p - 1.0, p, r_data};
  const MHDState& first = traj.states.front();
  double data = 0.0;
  for (int i = 0; i < dim; ++i) {
    data += besov_norm(first.u[i], data_spec, part);
    data += besov_norm(first.b[i], data_spec, part);
  }

  const double exponent = 0.5 - dim / (2.0 * p) + 0.5 * alpha;
  double sup = 0.0;
  for (const MHDState& s : traj.states) {
    if (!(s.t > 0.0)) continue;
    double val = 0.0;
    for (int i = 0; i < dim; ++i) {
      if (alpha == 0) {
        val += lp_norm(s.u[i], p) + lp_norm(s.b[i], p);
      } else {
        val += lp_norm(gradient(s.u[i]), p) + lp_norm(gradient(s.b[i]), p);
      }
    }
    sup = std::max(sup, std::pow(s.t, exponent) * val);
  }
  if (data <= 0.0) return sup > 0.0 ? kInf : 0.0;
  return sup / data;
}

EstimateReport weighted_decay_check(const Grid& g, double p, int alpha, int n_a,
                                    int n_b, std::uint64_t seed) {
  if (!(p > static_cast<double>(g.dim)))
    throw std::invalid_argument("the weighted decay exponent must satisfy p > dim");
  if (alpha != 0 && alpha != 1)
    throw std::invalid_argument("the derivative count must be 0 or 1");

  const DyadicPartition part = make_partition(g);
  // mild-solution bank: contraction-regime scales, critical L^2-type data space
  const double t_end = 1.0;
  const int n_times = 17;
  const double q_solve = 4.0;
  const BesovSpec solve_spec{0.0, 2.0, 2.0};
  const double tol = 1e-9;
  const int max_iter = 40;
  const double scale_lo = 1e-4, scale_hi = 1e-2;

  const RatioFn ratio = [=](double slope, Rng& rng) {
    VectorField u0 = random_divfree_slope_field(g, part, slope, rng);
    VectorField b0 = random_divfree_slope_field(g, part, slope, rng);
    const double amp = scale_lo * std::pow(scale_hi / scale_lo, rng.uniform());
    double d = 0.0;
    for (int i = 0; i < g.dim; ++i)
      d += besov_norm(u0[i], solve_spec, part) + besov_norm(b0[i], solve_spec, part);
    if (d == 0.0) return 0.0;
    scale(u0, amp / d);
    scale(b0, amp / d);
    const PicardResult res =
        picard_solve(u0, b0, t_end, n_times, q_solve, solve_spec, tol, max_iter);
    if (res.report.status != PicardStatus::kConverged)
      return std::numeric_limits<double>::quiet_NaN();  // surfaces as a failed check
    return weighted_decay_ratio(res.traj, p, alpha, 2.0, part);
  };

  std::ostringstream idx;
  idx << "p=" << fmt(p) << " alpha=" << alpha << " data B^{" << fmt(g.dim / p - 1.0)
      << "}_{" << fmt(p) << ",2}";
  return two_phase_check("weighted_decay", idx.str(), ratio, n_a, n_b, seed);
}

double heat_lorentz_ratio(const ScalarField& u0, double p, double q, double T) {
  require_heat_lorentz_indices(u0.grid.dim, p, q);
  if (!(T > 0.0)) throw std::invalid_argument("the horizon must be positive");
  require_mean_free(u0, "the heat-flow data");

  const double l2 = lp_norm(u0, 2.0);
  if (l2 == 0.0) return 0.0;
  const std::vector<double> times = geometric_times(T * 1e-4, T, 48);
  std::vector<double> values(times.size());
  for (std::size_t i = 0; i < times.size(); ++i)
    values[i] = lp_norm(heat_propagate(u0, times[i]), q);
  return lorentz_time_norm(values, times, LorentzSpec{p, 2.0}) / l2;
}

EstimateReport heat_lorentz_check(const Grid& g, double p, double q, double T,
                                  int n_a, int n_b, std::uint64_t seed) {
  require_heat_lorentz_indices(g.dim, p, q);
  if (!(T > 0.0)) throw std::invalid_argument("the horizon must be positive");
  const DyadicPartition part = make_partition(g);
  const RatioFn ratio = [=](double slope, Rng& rng) {
    const ScalarField f = random_unit_field(g, part, slope, rng);
    return heat_lorentz_ratio(f, p, q, T);
  };
  std::ostringstream idx;
  idx << "L^{" << fmt(p) << ",2}_t L^" << fmt(q) << "_x T=" << fmt(T);
  return two_phase_check("heat_lorentz", idx.str(), ratio, n_a, n_b, seed);
}

}  // namespace bmhd
