#include "bmhd/generate.hpp"

#include <cmath>
#include <stdexcept>

#include "bmhd/fft.hpp"
#include "bmhd/ops.hpp"

namespace bmhd {

ScalarField random_slope_field(const Grid& g, const DyadicPartition& part,
                               double slope, Rng& rng) {
  ScalarField f(g);
  const double r2 = part.resolved_radius() * part.resolved_radius();
  for (std::size_t i = 0; i < g.points(); ++i) {
    const double kk = static_cast<double>(g.k2(g.wavevector(i)));
    if (kk < 0.5 || kk > r2) continue;
    const double mag = std::pow(kk, 0.5 * slope);
    f.c[i] = mag * cplx(rng.normal(), rng.normal());
  }
  symmetrize(f);
  return f;
}

ScalarField random_unit_field(const Grid& g, const DyadicPartition& part,
                              double slope, Rng& rng) {
  ScalarField f = random_slope_field(g, part, slope, rng);
  const double n2 = lp_norm(f, 2.0);
  if (n2 == 0.0) throw std::runtime_error("degenerate random field");
  scale(f, 1.0 / n2);
  return f;
}

ScalarField random_smooth_field(const Grid& g, double k_peak, double k_cutoff,
                                Rng& rng) {
  ScalarField f(g);
  for (std::size_t i = 0; i < g.points(); ++i) {
    const double kk = static_cast<double>(g.k2(g.wavevector(i)));
    if (kk < 0.5) continue;
    const double k = std::sqrt(kk);
    if (!g.dealias_keeps(static_cast<long long>(kk))) continue;
    const double env = std::pow(k / k_peak, 2.0) *
                       std::exp(-(k * k) / (k_cutoff * k_cutoff));
    f.c[i] = env * cplx(rng.normal(), rng.normal());
  }
  symmetrize(f);
  return f;
}

VectorField random_divfree_field(const Grid& g, double k_peak, double k_cutoff,
                                 Rng& rng) {
  VectorField u(g);
  for (int d = 0; d < g.dim; ++d) u[d] = random_smooth_field(g, k_peak, k_cutoff, rng);
  u = leray_project(u);
  for (int d = 0; d < g.dim; ++d) set_mean_zero(u[d]);
  return u;
}

VectorField random_divfree_slope_field(const Grid& g, const DyadicPartition& part,
                                       double slope, Rng& rng) {
  VectorField u(g);
  for (int d = 0; d < g.dim; ++d) u[d] = random_slope_field(g, part, slope, rng);
  u = leray_project(u);
  for (int d = 0; d < g.dim; ++d) set_mean_zero(u[d]);
  return u;
}

std::vector<ScalarField> random_band_trajectory(const Grid& g,
                                                const DyadicPartition& part,
                                                double slope,
                                                const std::vector<double>& times,
                                                Rng& rng) {
  ScalarField base = random_slope_field(g, part, slope, rng);
  // smooth positive modulation per band: a + b cos(w t + theta)
  struct Mod {
    double a, b, w, th;
  };
  std::vector<Mod> mods(part.bands());
  for (auto& m : mods) {
    m.a = rng.uniform(0.6, 1.4);
    m.b = rng.uniform(0.0, 0.5);
    m.w = rng.uniform(0.5, 6.0);
    m.th = rng.uniform(0.0, 2.0 * M_PI);
  }
  std::vector<ScalarField> traj;
  traj.reserve(times.size());
  for (double t : times) {
    ScalarField ft(g);
    for (int j = part.j_min(); j <= part.j_max(); ++j) {
      const Mod& m = mods[j - part.j_min()];
      const double amp = m.a + m.b * std::cos(m.w * t + m.th);
      axpy(ft, amp, delta_j(base, part, j));
    }
    traj.push_back(std::move(ft));
  }
  return traj;
}

namespace {

// 2D vector field sampled from closed-form components
template <typename Fx, typename Fy>
VectorField sampled2(const Grid& g, Fx&& fx, Fy&& fy) {
  if (g.dim != 2) throw std::invalid_argument("named data is two-dimensional");
  std::vector<double> vx(g.points()), vy(g.points());
  for (std::size_t i = 0; i < g.points(); ++i) {
    const double x = g.dx() * static_cast<double>(i / g.n);
    const double y = g.dx() * static_cast<double>(i % g.n);
    vx[i] = fx(x, y);
    vy[i] = fy(x, y);
  }
  VectorField u(g);
  u[0] = field_from_physical(g, vx);
  u[1] = field_from_physical(g, vy);
  return u;
}

}  // namespace

VectorField taylor_green_velocity(const Grid& g) {
  return sampled2(
      g, [](double x, double y) { return std::sin(x) * std::cos(y); },
      [](double x, double y) { return -std::cos(x) * std::sin(y); });
}

VectorField orszag_tang_velocity(const Grid& g) {
  return sampled2(
      g, [](double, double y) { return -std::sin(y); },
      [](double x, double) { return std::sin(x); });
}

VectorField orszag_tang_magnetic(const Grid& g) {
  return sampled2(
      g, [](double, double y) { return -std::sin(y); },
      [](double x, double) { return std::sin(2.0 * x); });
}

std::vector<double> uniform_times(double t_end, int n_times) {
  if (n_times < 2 || t_end <= 0.0)
    throw std::invalid_argument("need n_times >= 2 and t_end > 0");
  std::vector<double> t(n_times);
  for (int i = 0; i < n_times; ++i)
    t[i] = t_end * static_cast<double>(i) / (n_times - 1);
  return t;
}

std::vector<double> geometric_times(double t_first, double t_end, int n_times) {
  if (n_times < 2 || t_first <= 0.0 || t_end <= t_first)
    throw std::invalid_argument("need n_times >= 2 and 0 < t_first < t_end");
  std::vector<double> t(n_times);
  const double ratio = std::pow(t_end / t_first, 1.0 / (n_times - 1));
  double cur = t_first;
  for (int i = 0; i < n_times; ++i) {
    t[i] = cur;
    cur *= ratio;
  }
  t.back() = t_end;
  return t;
}

}  // namespace bmhd
