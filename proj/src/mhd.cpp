#include "bmhd/mhd.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "bmhd/fft.hpp"
#include "bmhd/ops.hpp"

namespace bmhd {

MHDState::MHDState(VectorField u_, VectorField b_, double t_)
    : u(std::move(u_)), b(std::move(b_)), t(t_) {
  if (!(u.grid() == b.grid()))
    throw std::invalid_argument("velocity and magnetic field must share a grid");
}

double pair_energy(const MHDState& s) {
  long double acc = 0.0L;
  for (int i = 0; i < s.grid().dim; ++i) {
    const double nu = lp_norm(s.u[i], 2.0), nb = lp_norm(s.b[i], 2.0);
    acc += static_cast<long double>(nu) * nu + static_cast<long double>(nb) * nb;
  }
  return static_cast<double>(acc);
}

double pair_dissipation(const MHDState& s) {
  long double acc = 0.0L;
  for (int i = 0; i < s.grid().dim; ++i)
    acc += static_cast<long double>(h1_seminorm2(s.u[i])) + h1_seminorm2(s.b[i]);
  return static_cast<double>(acc);
}

namespace {

void clean_vector(VectorField& v) {
  for (int i = 0; i < v.dim(); ++i) {
    dealias(v[i]);
    symmetrize(v[i]);
  }
  v = leray_project(v);
  for (int i = 0; i < v.dim(); ++i) set_mean_zero(v[i]);
}

}  // namespace

void project_state(MHDState& s) {
  clean_vector(s.u);
  clean_vector(s.b);
}

double divergence_defect(const MHDState& s) {
  const double scale = std::sqrt(pair_energy(s));
  if (scale == 0.0) return 0.0;
  const double du = lp_norm(divergence(s.u), 2.0);
  const double db = lp_norm(divergence(s.b), 2.0);
  return std::max(du, db) / scale;
}

void require_state(const MHDState& s) {
  if (!(s.u.grid() == s.b.grid()))
    throw std::invalid_argument("velocity and magnetic field must share a grid");
  if (divergence_defect(s) > 1e-11)
    throw std::invalid_argument(
        "state violates the divergence-free invariant beyond tolerance");
  const double scale = 1.0 + std::sqrt(pair_energy(s));
  for (int i = 0; i < s.grid().dim; ++i)
    if (std::abs(s.u[i].mean()) > 1e-11 * scale ||
        std::abs(s.b[i].mean()) > 1e-11 * scale)
      throw std::invalid_argument("state violates the zero-mean gauge");
}

Tendency nonlinear_rhs(const MHDState& s) {
  require_state(s);
  const Grid& g = s.grid();
  const int d = g.dim;
  const int m = 2 * d;  // scalar components: u_0..u_{d-1}, b_0..b_{d-1}

  std::vector<std::vector<double>> phys(static_cast<std::size_t>(m));
  for (int i = 0; i < d; ++i) {
    phys[static_cast<std::size_t>(i)] = to_physical(s.u[i]);
    phys[static_cast<std::size_t>(d + i)] = to_physical(s.b[i]);
  }

  // memoized pairwise collocation products; commutativity halves the count
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

  Tendency out{VectorField(g), VectorField(g)};
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      ScalarField mu = prod(d + j, d + i);  // b_j b_i
      axpy(mu, -1.0, prod(j, i));           // - u_j u_i
      axpy(out.du[i], 1.0, derivative(mu, j));
      ScalarField mb = prod(d + j, i);      // b_j u_i
      axpy(mb, -1.0, prod(j, d + i));       // - u_j b_i
      axpy(out.db[i], 1.0, derivative(mb, j));
    }
  }
  out.du = leray_project(out.du);
  out.db = leray_project(out.db);
  return out;
}

double cfl_limit(const MHDState& s) {
  const double speed = lp_norm(s.u, std::numeric_limits<double>::infinity()) +
                       lp_norm(s.b, std::numeric_limits<double>::infinity());
  if (speed == 0.0) return std::numeric_limits<double>::infinity();
  return 0.5 * s.grid().dx() / speed;
}

namespace {

FlatState heat_flat(const FlatState& y, double t) {
  FlatState r;
  r.reserve(y.size());
  for (const ScalarField& f : y) r.push_back(heat_propagate(f, t));
  return r;
}

// y + a * k, componentwise
FlatState add_flat(const FlatState& y, double a, const FlatState& k) {
  FlatState r = y;
  for (std::size_t i = 0; i < r.size(); ++i) axpy(r[i], a, k[i]);
  return r;
}

}  // namespace

FlatState ifrk4_step(const FlatState& y, double t, double dt, const FlatRhs& rhs) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  const double h = dt;
  const FlatState k1 = rhs(y, t);
  const FlatState k2 = rhs(heat_flat(add_flat(y, h / 2, k1), h / 2), t + h / 2);
  const FlatState ehy = heat_flat(y, h / 2);
  const FlatState k3 = rhs(add_flat(ehy, h / 2, k2), t + h / 2);
  const FlatState efy = heat_flat(ehy, h / 2);  // = e^{h Lap} y
  const FlatState k4 = rhs(add_flat(efy, h, heat_flat(k3, h / 2)), t + h);

  FlatState out = add_flat(efy, h / 6, heat_flat(k1, h));
  const FlatState mid = heat_flat(add_flat(k2, 1.0, k3), h / 2);
  out = add_flat(out, h / 3, mid);
  out = add_flat(out, h / 6, k4);
  return out;
}

namespace {

FlatState flat_of(const MHDState& s) {
  FlatState y;
  const int d = s.grid().dim;
  y.reserve(static_cast<std::size_t>(2 * d));
  for (int i = 0; i < d; ++i) y.push_back(s.u[i]);
  for (int i = 0; i < d; ++i) y.push_back(s.b[i]);
  return y;
}

MHDState state_of(const Grid& g, const FlatState& y, double t) {
  MHDState s(g);
  for (int i = 0; i < g.dim; ++i) {
    s.u[i] = y[static_cast<std::size_t>(i)];
    s.b[i] = y[static_cast<std::size_t>(g.dim + i)];
  }
  s.t = t;
  return s;
}

}  // namespace

MHDState step_ifrk4(const MHDState& s, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  const double limit = cfl_limit(s);
  if (dt > limit)
    throw std::invalid_argument(
        "time step exceeds the advective stability limit (dt = " +
        std::to_string(dt) + ", limit = " + std::to_string(limit) + ")");
  const Grid& g = s.grid();
  const FlatRhs rhs = [&g](const FlatState& y, double t) {
    const Tendency td = nonlinear_rhs(state_of(g, y, t));
    FlatState r;
    r.reserve(y.size());
    for (int i = 0; i < g.dim; ++i) r.push_back(td.du[i]);
    for (int i = 0; i < g.dim; ++i) r.push_back(td.db[i]);
    return r;
  };
  MHDState next = state_of(g, ifrk4_step(flat_of(s), s.t, dt, rhs), s.t + dt);
  project_state(next);
  if (!std::isfinite(pair_energy(next)))
    throw std::runtime_error("time stepping produced a non-finite field at t = " +
                             std::to_string(s.t + dt) + " with dt = " +
                             std::to_string(dt));
  return next;
}

std::vector<double> Trajectory::times() const {
  std::vector<double> t;
  t.reserve(states.size());
  for (const MHDState& s : states) t.push_back(s.t);
  return t;
}

std::vector<double> besov_band_row(const MHDState& s, const DyadicPartition& part,
                                   const BesovSpec& spec) {
  std::vector<double> row(static_cast<std::size_t>(part.bands()), 0.0);
  for (int i = 0; i < s.grid().dim; ++i) {
    const auto bu = band_lp_norms(s.u[i], spec.p, part);
    const auto bb = band_lp_norms(s.b[i], spec.p, part);
    for (std::size_t j = 0; j < row.size(); ++j) row[j] += bu[j] + bb[j];
  }
  for (int j = part.j_min(); j <= part.j_max(); ++j)
    row[static_cast<std::size_t>(j - part.j_min())] *= std::pow(2.0, j * spec.s);
  return row;
}

Trajectory march_ifrk4(const MHDState& s0, double t_end, double dt,
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
  require_state(s0);

  Trajectory traj;
  traj.ledger.spec = ledger_spec;
  MHDState cur = s0;
  cur.t = 0.0;
  const auto store = [&](const MHDState& s) {
    traj.states.push_back(s);
    traj.ledger.rows.push_back(besov_band_row(s, part, ledger_spec));
  };
  store(cur);
  traj.monitor_times.push_back(0.0);
  traj.energy.push_back(pair_energy(cur));
  traj.dissipation.push_back(pair_dissipation(cur));

  for (long long step = 1; step <= n_steps; ++step) {
    cur = step_ifrk4(cur, dt);
    cur.t = static_cast<double>(step) * dt;  // exact mesh, no drift accumulation
    traj.monitor_times.push_back(cur.t);
    traj.energy.push_back(pair_energy(cur));
    traj.dissipation.push_back(pair_dissipation(cur));
    if (step % sample_stride == 0 || step == n_steps) store(cur);
  }
  return traj;
}

EnergyReport energy_balance(const Trajectory& traj) {
  const std::size_t n = traj.monitor_times.size();
  if (n == 0 || traj.energy.size() != n || traj.dissipation.size() != n)
    throw std::invalid_argument("trajectory carries no energy monitor series");
  EnergyReport rep;
  rep.initial = traj.energy[0];
  const double denom = rep.initial > 0.0 ? rep.initial : 1.0;
  long double twice_dissipated = 0.0L;
  rep.max_signed_drift = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < n; ++i) {
    const long double h = traj.monitor_times[i] - traj.monitor_times[i - 1];
    twice_dissipated += h * (traj.dissipation[i] + traj.dissipation[i - 1]);
    const double drift = static_cast<double>(
        (traj.energy[i] + twice_dissipated - rep.initial) / denom);
    rep.max_abs_drift = std::max(rep.max_abs_drift, std::abs(drift));
    rep.max_signed_drift = std::max(rep.max_signed_drift, drift);
  }
  if (n == 1) rep.max_signed_drift = 0.0;
  return rep;
}

}  // namespace bmhd
