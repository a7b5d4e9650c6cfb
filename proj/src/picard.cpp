#include "bmhd/picard.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "bmhd/generate.hpp"
#include "bmhd/ops.hpp"

namespace bmhd {

namespace {

struct PairTraj {
  std::vector<VectorField> u, b;
};

MixedNormSpec working_spec(double q, const BesovSpec& data,
                           const std::vector<double>& times) {
  return {q, BesovSpec{data.s + 2.0 / q, data.p, data.r}, times};
}

double pair_cl_norm(const PairTraj& y, const MixedNormSpec& spec,
                    const DyadicPartition& part) {
  return chemin_lerner_norm(y.u, spec, part) + chemin_lerner_norm(y.b, spec, part);
}

PairTraj pair_diff(const PairTraj& a, const PairTraj& b) {
  PairTraj d = a;
  for (std::size_t i = 0; i < d.u.size(); ++i) {
    axpy(d.u[i], -1.0, b.u[i]);
    axpy(d.b[i], -1.0, b.b[i]);
  }
  return d;
}

std::vector<Tendency> tendencies(const PairTraj& y, const std::vector<double>& times) {
  std::vector<Tendency> g;
  g.reserve(y.u.size());
  for (std::size_t i = 0; i < y.u.size(); ++i)
    g.push_back(nonlinear_rhs(MHDState(y.u[i], y.b[i], times[i])));
  return g;
}

}  // namespace

PicardResult picard_solve(const VectorField& u0, const VectorField& b0, double t_end,
                          int n_times, double q, const BesovSpec& data_space,
                          double tol, int max_iter) {
  if (!(t_end > 0.0)) throw std::invalid_argument("final time must be positive");
  if (n_times < 2) throw std::invalid_argument("mild quadrature needs >= 2 nodes");
  if (!(q > 2.0) || std::isinf(q))
    throw std::invalid_argument(
        "the contraction exponent must satisfy 2 < q < infinity");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (max_iter < 1) throw std::invalid_argument("need at least one iteration");
  MHDState s0(u0, b0, 0.0);
  require_state(s0);

  const Grid& g = u0.grid();
  const DyadicPartition part = make_partition(g);
  const std::vector<double> times = uniform_times(t_end, n_times);
  const double dt = times[1] - times[0];
  const std::size_t n = times.size();
  const MixedNormSpec wspec = working_spec(q, data_space, times);

  // free evolution, exact per node
  PairTraj freeflow;
  freeflow.u.reserve(n);
  freeflow.b.reserve(n);
  for (double t : times) {
    freeflow.u.push_back(heat_propagate(u0, t));
    freeflow.b.push_back(heat_propagate(b0, t));
  }

  PicardResult res;
  res.report.free_norm = pair_cl_norm(freeflow, wspec, part);
  res.report.data_norm =
      besov_norm(u0, data_space, part) + besov_norm(b0, data_space, part);
  res.report.iterate_norms.push_back(res.report.free_norm);

  PairTraj y = freeflow;
  double prev_diff = -1.0;
  for (int iter = 1; iter <= max_iter; ++iter) {
    const std::vector<Tendency> tend = tendencies(y, times);
    // trapezoid Duhamel via the one-step recursion
    //   A_i = S(dt) A_{i-1} + dt/2 (S(dt) G_{i-1} + G_i),  A_0 = 0
    PairTraj next;
    next.u.reserve(n);
    next.b.reserve(n);
    VectorField au(g), ab(g);
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) {
        au = heat_propagate(au, dt);
        axpy(au, dt / 2, heat_propagate(tend[i - 1].du, dt));
        axpy(au, dt / 2, tend[i].du);
        ab = heat_propagate(ab, dt);
        axpy(ab, dt / 2, heat_propagate(tend[i - 1].db, dt));
        axpy(ab, dt / 2, tend[i].db);
      }
      VectorField vu = freeflow.u[i], vb = freeflow.b[i];
      axpy(vu, 1.0, au);
      axpy(vb, 1.0, ab);
      next.u.push_back(std::move(vu));
      next.b.push_back(std::move(vb));
    }

    const double d = pair_cl_norm(pair_diff(next, y), wspec, part);
    res.report.diffs.push_back(d);
    res.report.iterate_norms.push_back(pair_cl_norm(next, wspec, part));
    res.report.iterations = iter;
    if (!std::isfinite(d)) {
      res.report.status = PicardStatus::kDiverged;
      return res;
    }
    if (prev_diff > 0.0) res.report.factors.push_back(d / prev_diff);
    y = next;
    if (d < tol) {
      res.report.status = PicardStatus::kConverged;
      break;
    }
    const auto& f = res.report.factors;
    if (f.size() >= 3 && f[f.size() - 1] >= 1.0 && f[f.size() - 2] >= 1.0 &&
        f[f.size() - 3] >= 1.0) {
      res.report.status = PicardStatus::kDiverged;
      return res;
    }
    prev_diff = d;
  }
  if (res.report.status != PicardStatus::kConverged) return res;

  Trajectory& traj = res.traj;
  traj.ledger.spec = wspec.besov;
  for (std::size_t i = 0; i < n; ++i) {
    MHDState s(y.u[i], y.b[i], times[i]);
    traj.monitor_times.push_back(times[i]);
    traj.energy.push_back(pair_energy(s));
    traj.dissipation.push_back(pair_dissipation(s));
    std::vector<double> row(static_cast<std::size_t>(part.bands()), 0.0);
    for (int c = 0; c < g.dim; ++c) {
      const auto ru = band_lp_norms(s.u[c], wspec.besov.p, part);
      const auto rb = band_lp_norms(s.b[c], wspec.besov.p, part);
      for (std::size_t j = 0; j < row.size(); ++j) row[j] += ru[j] + rb[j];
    }
    for (int j = part.j_min(); j <= part.j_max(); ++j)
      row[static_cast<std::size_t>(j - part.j_min())] *=
          std::pow(2.0, j * wspec.besov.s);
    traj.ledger.rows.push_back(row);
    traj.states.push_back(std::move(s));
  }
  return res;
}

double mild_residual(const Trajectory& traj, double q, const BesovSpec& data_space,
                     const DyadicPartition& part) {
  const std::size_t n = traj.states.size();
  if (n < 2) throw std::invalid_argument("residual needs at least two samples");
  const std::vector<double> times = traj.times();
  require_increasing_times(times);
  std::vector<Tendency> tend;
  tend.reserve(n);
  for (const MHDState& s : traj.states) tend.push_back(nonlinear_rhs(s));

  const VectorField& u0 = traj.states[0].u;
  const VectorField& b0 = traj.states[0].b;

  // r_i = y_i - S(t_i) y_0 - direct trapezoid of S(t_i - s) N(y(s))
  PairTraj resid;
  resid.u.reserve(n);
  resid.b.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    VectorField ru = traj.states[i].u, rb = traj.states[i].b;
    axpy(ru, -1.0, heat_propagate(u0, times[i] - times[0]));
    axpy(rb, -1.0, heat_propagate(b0, times[i] - times[0]));
    for (std::size_t m = 1; m <= i; ++m) {
      const double h = times[m] - times[m - 1];
      axpy(ru, -h / 2, heat_propagate(tend[m - 1].du, times[i] - times[m - 1]));
      axpy(ru, -h / 2, heat_propagate(tend[m].du, times[i] - times[m]));
      axpy(rb, -h / 2, heat_propagate(tend[m - 1].db, times[i] - times[m - 1]));
      axpy(rb, -h / 2, heat_propagate(tend[m].db, times[i] - times[m]));
    }
    resid.u.push_back(std::move(ru));
    resid.b.push_back(std::move(rb));
  }
  return pair_cl_norm(resid, working_spec(q, data_space, times), part);
}

}  // namespace bmhd
