#include "bmhd/xnorm.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "bmhd/generate.hpp"
#include "bmhd/norms.hpp"
#include "bmhd/ops.hpp"

namespace bmhd {

namespace {

double pair_lp(const MHDState& s, double p) {
  return lp_norm(s.u, p) + lp_norm(s.b, p);
}

}  // namespace

XNormReport x_norm(const Trajectory& traj, double r) {
  if (!(r > 1.0) || !std::isfinite(r))
    throw std::invalid_argument(
        "interval norm needs 1 < r < inf for the Lorentz component");
  if (traj.states.empty())
    throw std::invalid_argument("interval norm needs a nonempty trajectory");
  const std::vector<double> times = traj.times();
  require_increasing_times(times);

  const double q4 = 2.0 * r / (r - 1.0);
  std::vector<double> l4(traj.states.size()), lq(traj.states.size()),
      grad(traj.states.size());
  XNormReport rep;
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const MHDState& s = traj.states[i];
    l4[i] = pair_lp(s, 4.0);
    lq[i] = pair_lp(s, q4);
    grad[i] = std::sqrt(pair_dissipation(s));
    if (times[i] > 0.0)
      rep.x1 = std::max(rep.x1, std::pow(times[i], 0.25) * l4[i]);
  }
  rep.x2 = time_lp(l4, times, 4.0);
  rep.x3 = time_lp(grad, times, 2.0);
  rep.x4 = lorentz_time_norm(lq, times, LorentzSpec{2.0 * r, 2.0});
  return rep;
}

EstimateReport x_norm_free_bound_check(const Grid& g, double r, double T,
                                       int n_times, int n_a, int n_b,
                                       std::uint64_t seed) {
  if (!(r > 1.0) || !std::isfinite(r))
    throw std::invalid_argument(
        "interval norm needs 1 < r < inf for the Lorentz component");
  if (!(T > 0.0)) throw std::invalid_argument("interval length must be positive");
  if (n_times < 2)
    throw std::invalid_argument("free-evolution mesh needs at least two nodes");

  const DyadicPartition part = make_partition(g);
  std::vector<double> mesh{0.0};
  for (const double t : geometric_times(T * 1e-4, T, n_times)) mesh.push_back(t);

  const RatioFn ratio = [&, mesh](double slope, Rng& rng) {
    const VectorField u0 = random_divfree_slope_field(g, part, slope, rng);
    const VectorField b0 = random_divfree_slope_field(g, part, slope, rng);
    Trajectory traj;
    for (const double t : mesh)
      traj.states.emplace_back(heat_propagate(u0, t), heat_propagate(b0, t), t);
    const double data = lp_norm(u0, 2.0) + lp_norm(b0, 2.0);
    if (data == 0.0) return 0.0;
    return x_norm(traj, r).total() / data;
  };

  std::ostringstream os;
  os << "r=" << r << " T=" << T;
  return two_phase_check("free-evolution interval bound", os.str(), ratio, n_a,
                         n_b, seed);
}

}  // namespace bmhd
