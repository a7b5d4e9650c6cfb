#include "bmhd/calderon.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bmhd/fft.hpp"
#include "bmhd/ops.hpp"

namespace bmhd {

namespace {

double pair_besov(const VectorField& a, const VectorField& b,
                  const BesovSpec& spec, const DyadicPartition& part) {
  return besov_norm(a, spec, part) + besov_norm(b, spec, part);
}

}  // namespace

SplitData calderon_split(const VectorField& u0, const VectorField& b0,
                         const BesovSpec& spec_bar, double threshold,
                         const DyadicPartition& part) {
  if (!(u0.grid() == part.grid()) || !(b0.grid() == part.grid()))
    throw std::invalid_argument("split data must live on the partition's grid");
  if (!(threshold > 0.0))
    throw std::invalid_argument("split threshold must be positive");
  require_state(MHDState(u0, b0, 0.0));

  // S_J strips everything at the first band, so the scan starts from the
  // all-tail split and raises the cut until the high block is small enough.
  for (int j = part.j_min(); j <= part.j_max(); ++j) {
    SplitData out;
    out.v0 = s_j(u0, part, j);
    out.g0 = s_j(b0, part, j);
    out.w0 = u0 - out.v0;
    out.h0 = b0 - out.g0;
    out.j_cut = j;
    out.tail_norm = pair_besov(out.w0, out.h0, spec_bar, part);
    if (out.tail_norm <= threshold) return out;
    if (j == part.j_max())
      throw std::invalid_argument(
          "split threshold unreachable on this grid: the top-band tail still has "
          "norm " +
          std::to_string(out.tail_norm) + " > " + std::to_string(threshold));
  }
  throw std::logic_error("band scan fell through");
}

namespace {

// piecewise-cubic read-off of a stored pair trajectory: Lagrange weights on
// the four nodes around t, exact (weight one) when t hits a node bitwise
struct CoeffInterp {
  const Trajectory* traj;
  std::vector<double> times;

  explicit CoeffInterp(const Trajectory& t) : traj(&t), times(t.times()) {}

  void at(double t, VectorField& w, VectorField& h) const {
    const std::size_t n = times.size();
    std::size_t hi = static_cast<std::size_t>(
        std::lower_bound(times.begin(), times.end(), t) - times.begin());
    if (hi >= n) hi = n - 1;
    const std::size_t width = std::min<std::size_t>(4, n);
    std::size_t start = hi > 2 ? hi - 2 : 0;
    start = std::min(start, n - width);

    const Grid& g = traj->states[0].grid();
    w = VectorField(g);
    h = VectorField(g);
    for (std::size_t m = 0; m < width; ++m) {
      double weight = 1.0;
      for (std::size_t k = 0; k < width; ++k)
        if (k != m)
          weight *= (t - times[start + k]) /
                    (times[start + m] - times[start + k]);
      const MHDState& s = traj->states[start + m];
      for (int i = 0; i < g.dim; ++i) {
        axpy(w[i], weight, s.u[i]);
        axpy(h[i], weight, s.b[i]);
      }
    }
  }
};

// The twelve couplings, memoized over the 4*dim scalar slots
// (v_0..v_{d-1}, g_..., w_..., h_...), collocation products dealiased.
Tendency companion_rhs(const MHDState& vg, const VectorField& w,
                       const VectorField& h) {
  const Grid& g = vg.grid();
  const int d = g.dim;
  const int m = 4 * d;

  std::vector<std::vector<double>> phys(static_cast<std::size_t>(m));
  for (int i = 0; i < d; ++i) {
    phys[static_cast<std::size_t>(i)] = to_physical(vg.u[i]);
    phys[static_cast<std::size_t>(d + i)] = to_physical(vg.b[i]);
    phys[static_cast<std::size_t>(2 * d + i)] = to_physical(w[i]);
    phys[static_cast<std::size_t>(3 * d + i)] = to_physical(h[i]);
  }

  std::vector<ScalarField> cache;
  cache.reserve(static_cast<std::size_t>(m * (m + 1) / 2));
  std::vector<int> slot(static_cast<std::size_t>(m * m), -1);
  const std::size_t npts = g.points();
  const auto prod = [&](int a, int c) -> const ScalarField& {
    if (a > c) std::swap(a, c);
    int& id = slot[static_cast<std::size_t>(a * m + c)];
    if (id < 0) {
      std::vector<double> pw(npts);
      const auto& pa = phys[static_cast<std::size_t>(a)];
      const auto& pc = phys[static_cast<std::size_t>(c)];
      for (std::size_t i = 0; i < npts; ++i) pw[i] = pa[i] * pc[i];
      ScalarField f = field_from_physical(g, pw);
      dealias(f);
      id = static_cast<int>(cache.size());
      cache.push_back(std::move(f));
    }
    return cache[static_cast<std::size_t>(id)];
  };

  // slot offsets: v = 0, g = d, w = 2d, h = 3d
  Tendency out{VectorField(g), VectorField(g)};
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      ScalarField mv = prod(d + j, d + i);       // g_j g_i
      axpy(mv, 1.0, prod(d + j, 3 * d + i));     // + g_j h_i
      axpy(mv, 1.0, prod(3 * d + j, d + i));     // + h_j g_i
      axpy(mv, -1.0, prod(j, i));                // - v_j v_i
      axpy(mv, -1.0, prod(j, 2 * d + i));        // - v_j w_i
      axpy(mv, -1.0, prod(2 * d + j, i));        // - w_j v_i
      axpy(out.du[i], 1.0, derivative(mv, j));
      ScalarField mg = prod(d + j, i);           // g_j v_i
      axpy(mg, 1.0, prod(3 * d + j, i));         // + h_j v_i
      axpy(mg, 1.0, prod(d + j, 2 * d + i));     // + g_j w_i
      axpy(mg, -1.0, prod(j, d + i));            // - v_j g_i
      axpy(mg, -1.0, prod(j, 3 * d + i));        // - v_j h_i
      axpy(mg, -1.0, prod(2 * d + j, d + i));    // - w_j g_i
      axpy(out.db[i], 1.0, derivative(mg, j));
    }
  }
  out.du = leray_project(out.du);
  out.db = leray_project(out.db);
  return out;
}

}  // namespace

Trajectory solve_mhd_like(const VectorField& v0, const VectorField& g0,
                          const Trajectory& wh, double t_end, double dt,
                          int sample_stride, const DyadicPartition& part,
                          const BesovSpec& ledger_spec) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  if (!(t_end > 0.0)) throw std::invalid_argument("final time must be positive");
  if (sample_stride <= 0)
    throw std::invalid_argument("sample stride must be positive");
  const long long n_steps = std::llround(t_end / dt);
  if (n_steps < 1 || std::abs(static_cast<double>(n_steps) * dt - t_end) >
                         1e-9 * std::max(1.0, t_end))
    throw std::invalid_argument(
        "final time must be an integer number of time steps");
  require_state(MHDState(v0, g0, 0.0));
  const Grid& g = v0.grid();
  if (!(g == part.grid()))
    throw std::invalid_argument("data and partition grids must match");
  if (wh.states.size() < 2)
    throw std::invalid_argument(
        "coefficient trajectory needs at least two stored samples");
  if (!(wh.states[0].grid() == g))
    throw std::invalid_argument("coefficient trajectory lives on another grid");
  const CoeffInterp coeff(wh);
  require_increasing_times(coeff.times);
  if (coeff.times.front() > 1e-12 ||
      coeff.times.back() < t_end - 1e-9 * std::max(1.0, t_end))
    throw std::invalid_argument(
        "coefficient trajectory must cover the march interval");

  const FlatRhs rhs = [&g, &coeff](const FlatState& y, double t) {
    MHDState vg(g);
    for (int i = 0; i < g.dim; ++i) {
      vg.u[i] = y[static_cast<std::size_t>(i)];
      vg.b[i] = y[static_cast<std::size_t>(g.dim + i)];
    }
    vg.t = t;
    VectorField w(g), h(g);
    coeff.at(t, w, h);
    const Tendency td = companion_rhs(vg, w, h);
    FlatState r;
    r.reserve(y.size());
    for (int i = 0; i < g.dim; ++i) r.push_back(td.du[i]);
    for (int i = 0; i < g.dim; ++i) r.push_back(td.db[i]);
    return r;
  };

  Trajectory traj;
  traj.ledger.spec = ledger_spec;
  MHDState cur(v0, g0, 0.0);
  const auto store = [&](const MHDState& s) {
    traj.states.push_back(s);
    traj.ledger.rows.push_back(besov_band_row(s, part, ledger_spec));
  };
  store(cur);
  traj.monitor_times.push_back(0.0);
  traj.energy.push_back(pair_energy(cur));
  traj.dissipation.push_back(pair_dissipation(cur));

  VectorField wt(g), ht(g);
  for (long long step = 1; step <= n_steps; ++step) {
    // the advective speed includes the coefficient block
    coeff.at(cur.t, wt, ht);
    const double limit = cfl_limit(MHDState(cur.u + wt, cur.b + ht, cur.t));
    if (dt > limit)
      throw std::invalid_argument(
          "time step exceeds the advective stability limit (dt = " +
          std::to_string(dt) + ", limit = " + std::to_string(limit) + ")");

    FlatState y;
    y.reserve(static_cast<std::size_t>(2 * g.dim));
    for (int i = 0; i < g.dim; ++i) y.push_back(cur.u[i]);
    for (int i = 0; i < g.dim; ++i) y.push_back(cur.b[i]);
    const FlatState next = ifrk4_step(y, cur.t, dt, rhs);
    for (int i = 0; i < g.dim; ++i) {
      cur.u[i] = next[static_cast<std::size_t>(i)];
      cur.b[i] = next[static_cast<std::size_t>(g.dim + i)];
    }
    project_state(cur);
    cur.t = static_cast<double>(step) * dt;  // exact mesh, no drift accumulation
    if (!std::isfinite(pair_energy(cur)))
      throw std::runtime_error(
          "time stepping produced a non-finite field at t = " +
          std::to_string(cur.t) + " with dt = " + std::to_string(dt));
    traj.monitor_times.push_back(cur.t);
    traj.energy.push_back(pair_energy(cur));
    traj.dissipation.push_back(pair_dissipation(cur));
    if (step % sample_stride == 0 || step == n_steps) store(cur);
  }
  return traj;
}

GronwallReport gronwall_energy_check(const Trajectory& vg, const Trajectory& wh,
                                     double p, double r, double c_cal,
                                     const DyadicPartition& part) {
  if (vg.states.empty() || wh.states.empty())
    throw std::invalid_argument("energy audit needs nonempty trajectories");
  if (vg.states[0].grid().dim != 2)
    throw std::invalid_argument("energy audit is a two-dimensional statement");
  if (!(p >= 1.0) || !std::isfinite(p) || !(r >= 1.0) || !std::isfinite(r) ||
      !(2.0 / p + 2.0 / r > 1.0))
    throw std::invalid_argument(
        "energy audit indices need finite p, r >= 1 with 2/p + 2/r > 1");
  if (!(c_cal >= 0.0))
    throw std::invalid_argument("calibration constant must be nonnegative");
  const std::size_t n = vg.monitor_times.size();
  if (n == 0 || vg.energy.size() != n || vg.dissipation.size() != n)
    throw std::invalid_argument("trajectory carries no energy monitor series");

  GronwallReport rep;
  rep.c_cal = c_cal;
  rep.data_energy = vg.energy[0];
  long double dissipated = 0.0L;
  rep.sup_lhs = vg.energy[0];
  for (std::size_t i = 1; i < n; ++i) {
    const long double h = vg.monitor_times[i] - vg.monitor_times[i - 1];
    dissipated += 0.5L * h * (vg.dissipation[i] + vg.dissipation[i - 1]);
    rep.sup_lhs = std::max(rep.sup_lhs,
                           static_cast<double>(vg.energy[i] + dissipated));
  }

  const BesovSpec drift_spec{2.0 / p + 2.0 / r - 1.0, p, r};
  std::vector<double> weight_vals;
  weight_vals.reserve(wh.states.size());
  for (const MHDState& s : wh.states)
    weight_vals.push_back(
        std::pow(pair_besov(s.u, s.b, drift_spec, part), r));
  rep.gronwall_weight = time_lp(weight_vals, wh.times(), 1.0);
  rep.bound = 2.0 * rep.data_energy * std::exp(c_cal * rep.gronwall_weight);
  rep.pass = std::isfinite(rep.sup_lhs) && std::isfinite(rep.bound) &&
             rep.sup_lhs <= rep.bound;
  return rep;
}

GrowthReport growth_monitor(const std::vector<double>& scales,
                            const VectorField& u0, const VectorField& b0,
                            double p, double r, const BesovSpec& spec_bar,
                            double threshold, double t_end, double dt,
                            int sample_stride, const DyadicPartition& part) {
  if (scales.empty())
    throw std::invalid_argument("growth study needs at least one data scale");
  for (std::size_t i = 0; i < scales.size(); ++i)
    if (!(scales[i] > 0.0) || (i > 0 && !(scales[i] > scales[i - 1])))
      throw std::invalid_argument(
          "data scales must be positive and strictly increasing");
  if (u0.grid().dim != 2)
    throw std::invalid_argument("growth study is a two-dimensional statement");
  if (!(p > 2.0) || !std::isfinite(p) || !(r >= 1.0) || !std::isfinite(r))
    throw std::invalid_argument(
        "growth study indices need 2 < p < inf and 1 <= r < inf");

  const BesovSpec data_spec{2.0 / p - 1.0, p, r};
  GrowthReport rep;
  rep.scales = scales;
  for (const double lambda : scales) {
    const VectorField su = lambda * u0;
    const VectorField sb = lambda * b0;
    rep.data_norms.push_back(pair_besov(su, sb, data_spec, part));
    try {
      const SplitData split = calderon_split(su, sb, spec_bar, threshold, part);
      const Trajectory wh = march_ifrk4(MHDState(split.w0, split.h0, 0.0), t_end,
                                        dt, 1, part, spec_bar);
      const Trajectory vg = solve_mhd_like(split.v0, split.g0, wh, t_end, dt,
                                           sample_stride, part, data_spec);
      double sup = 0.0;
      for (const MHDState& s : vg.states) {
        const std::size_t idx = static_cast<std::size_t>(std::llround(s.t / dt));
        if (idx >= wh.states.size() ||
            std::abs(wh.states[idx].t - s.t) > 1e-9 * std::max(1.0, s.t))
          throw std::logic_error("stored sample meshes fell out of step");
        const MHDState& c = wh.states[idx];
        sup = std::max(sup, pair_besov(s.u + c.u, s.b + c.b, data_spec, part));
      }
      rep.sup_norms.push_back(sup);
    } catch (const std::runtime_error& err) {
      throw std::runtime_error("growth study diverged at data scale " +
                               std::to_string(lambda) + ": " + err.what());
    }
  }

  bool positive = true;
  for (std::size_t i = 0; i < scales.size(); ++i)
    positive = positive && rep.data_norms[i] > 0.0 && rep.sup_norms[i] > 0.0;
  bool monotone = true;
  if (positive) {
    for (std::size_t i = 0; i + 1 < scales.size(); ++i)
      rep.slopes.push_back(
          (std::log(rep.sup_norms[i + 1]) - std::log(rep.sup_norms[i])) /
          (std::log(rep.data_norms[i + 1]) - std::log(rep.data_norms[i])));
    for (std::size_t i = 0; i + 1 < rep.slopes.size(); ++i)
      monotone = monotone && rep.slopes[i + 1] >= rep.slopes[i] - 1e-9;
  }
  bool finite = true;
  for (const double v : rep.sup_norms) finite = finite && std::isfinite(v);
  rep.pass = finite && monotone;
  return rep;
}

}  // namespace bmhd
