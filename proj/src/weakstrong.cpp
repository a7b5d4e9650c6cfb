#include "bmhd/weakstrong.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "bmhd/ops.hpp"

namespace bmhd {

ScalarField spectral_prolong(const ScalarField& f, const Grid& fine) {
  const Grid& coarse = f.grid;
  if (fine.dim != coarse.dim)
    throw std::invalid_argument("prolongation cannot change the dimension");
  if (fine.n < coarse.n)
    throw std::invalid_argument("prolongation target must be at least as fine");
  ScalarField out(fine);
  for (std::size_t flat = 0; flat < f.c.size(); ++flat)
    out.c[fine.flat_index(coarse.wavevector(flat))] = f.c[flat];
  return out;
}

VectorField spectral_prolong(const VectorField& u, const Grid& fine) {
  VectorField out(fine);
  for (int i = 0; i < u.dim(); ++i) out[i] = spectral_prolong(u[i], fine);
  return out;
}

Trajectory prolong_trajectory(const Trajectory& traj, const Grid& fine,
                              const DyadicPartition& fine_part) {
  if (!(fine == fine_part.grid()))
    throw std::invalid_argument("partition must live on the target grid");
  Trajectory out;
  out.ledger.spec = traj.ledger.spec;
  out.monitor_times = traj.monitor_times;
  out.energy = traj.energy;
  out.dissipation = traj.dissipation;
  for (const MHDState& s : traj.states) {
    MHDState fs(spectral_prolong(s.u, fine), spectral_prolong(s.b, fine), s.t);
    out.ledger.rows.push_back(besov_band_row(fs, fine_part, traj.ledger.spec));
    out.states.push_back(std::move(fs));
  }
  return out;
}

WeakStrongReport weak_strong_gap(const Trajectory& strong, const Trajectory& weak,
                                 double p, double r, double c_cal,
                                 const DyadicPartition& part) {
  if (strong.states.empty() || weak.states.empty())
    throw std::invalid_argument("stability audit needs nonempty trajectories");
  const Grid& g = strong.states[0].grid();
  if (!(weak.states[0].grid() == g) || !(part.grid() == g))
    throw std::invalid_argument("stability audit needs one shared grid");
  if (strong.states.size() != weak.states.size())
    throw std::invalid_argument("stability audit needs one shared sample mesh");
  const double dim = g.dim;
  if (!(p >= 1.0) || !std::isfinite(p) || !(r > 2.0) || !std::isfinite(r))
    throw std::invalid_argument(
        "stability audit indices need 1 <= p < inf and 2 < r < inf");
  if (!(dim / (2.0 * p) + 2.0 / r > 1.0))
    throw std::invalid_argument(
        "stability audit indices need dim/(2p) + 2/r > 1");
  if (!(c_cal >= 0.0))
    throw std::invalid_argument("calibration constant must be nonnegative");

  const BesovSpec drift_spec{dim / p + 2.0 / r - 1.0, p, r};
  WeakStrongReport rep;
  rep.c_cal = c_cal;
  long double dissipated = 0.0L;  // int ||grad(v,g)||^2 on the sample mesh
  long double weight = 0.0L;      // int ||(u,b)||^r in the drift space
  double prev_d = 0.0, prev_w = 0.0;
  bool ok = true;
  for (std::size_t i = 0; i < strong.states.size(); ++i) {
    const MHDState& s = strong.states[i];
    const MHDState& w = weak.states[i];
    if (std::abs(s.t - w.t) > 1e-12 * std::max(1.0, std::abs(s.t)))
      throw std::invalid_argument("stability audit needs one shared sample mesh");
    const VectorField gu = s.u - w.u;
    const VectorField gb = s.b - w.b;
    const double gap2 =
        l2_inner(gu, gu) + l2_inner(gb, gb);
    const double diss = h1_seminorm2(gu) + h1_seminorm2(gb);
    const double bes = besov_norm(s.u, drift_spec, part) +
                       besov_norm(s.b, drift_spec, part);
    const double wgt = std::pow(bes, r);
    if (i == 0) {
      rep.initial_gap = gap2;
    } else {
      const long double h = strong.states[i].t - strong.states[i - 1].t;
      dissipated += 0.5L * h * (diss + prev_d);
      weight += 0.5L * h * (wgt + prev_w);
    }
    prev_d = diss;
    prev_w = wgt;
    const double lhs = static_cast<double>(gap2 + dissipated);
    const double rhs =
        std::exp(c_cal * static_cast<double>(weight)) * rep.initial_gap;
    rep.times.push_back(s.t);
    rep.lhs.push_back(lhs);
    rep.rhs.push_back(rhs);
    if (rhs > 0.0) rep.max_ratio = std::max(rep.max_ratio, lhs / rhs);
    ok = ok && std::isfinite(lhs) && std::isfinite(rhs) && lhs <= rhs;
  }
  rep.pass = ok;
  return rep;
}

}  // namespace bmhd
