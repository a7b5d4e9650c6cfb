#include "bmhd/trilinear.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "bmhd/generate.hpp"
#include "bmhd/norms.hpp"
#include "bmhd/ops.hpp"

namespace bmhd {

namespace {

constexpr int kNumTimes = 9;

void require_path(const FieldPath& p, const char* role) {
  if (p.fields.empty())
    throw std::invalid_argument(std::string(role) + ": path carries no samples");
  if (p.fields.size() != p.times.size())
    throw std::invalid_argument(std::string(role) +
                                ": path needs one field per time node");
  require_increasing_times(p.times);
}

void require_shared_mesh(const FieldPath& a, const FieldPath& b,
                         const FieldPath& c) {
  require_path(a, "first slot");
  require_path(b, "second slot");
  require_path(c, "third slot");
  if (b.times != a.times || c.times != a.times)
    throw std::invalid_argument("trilinear paths must share one time mesh");
  const Grid& g = a.fields[0].grid();
  if (!(b.fields[0].grid() == g) || !(c.fields[0].grid() == g))
    throw std::invalid_argument("trilinear paths must share one grid");
}

// divergence-free path with independent per-band time modulation per component
FieldPath random_vector_path(const Grid& g, const DyadicPartition& part,
                             double slope, const std::vector<double>& times,
                             Rng& rng) {
  FieldPath path;
  path.times = times;
  std::vector<std::vector<ScalarField>> comp;
  for (int i = 0; i < g.dim; ++i)
    comp.push_back(random_band_trajectory(g, part, slope, times, rng));
  for (std::size_t t = 0; t < times.size(); ++t) {
    VectorField v(g);
    for (int i = 0; i < g.dim; ++i) v[i] = comp[static_cast<std::size_t>(i)][t];
    v = leray_project(v);
    for (int i = 0; i < g.dim; ++i) set_mean_zero(v[i]);
    path.fields.push_back(std::move(v));
  }
  return path;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

double trilinear_form(const FieldPath& a, const FieldPath& b, const FieldPath& c,
                      double t) {
  require_shared_mesh(a, b, c);
  std::size_t stop = a.times.size();
  for (std::size_t i = 0; i < a.times.size(); ++i)
    if (std::abs(a.times[i] - t) <= 1e-9 * std::max(1.0, std::abs(t))) {
      stop = i;
      break;
    }
  if (stop == a.times.size())
    throw std::invalid_argument("evaluation time must be a node of the path mesh");

  long double acc = 0.0L;
  double prev = 0.0;
  for (std::size_t i = 0; i <= stop; ++i) {
    const double slice = advective_inner(a.fields[i], b.fields[i], c.fields[i]);
    if (i > 0)
      acc += 0.5L * (a.times[i] - a.times[i - 1]) * (slice + prev);
    prev = slice;
  }
  return static_cast<double>(acc);
}

TrilinearChecks trilinear_bound_check(const Grid& g, double r, double sigma,
                                      double eps, int n_a, int n_b,
                                      std::uint64_t seed) {
  if (!(r >= 2.0) || !std::isfinite(r))
    throw std::invalid_argument("advective bound needs 2 <= r < inf");
  if (!(sigma > 2.0) || !std::isfinite(sigma))
    throw std::invalid_argument("advective bound needs 2 < sigma < inf");
  if (!(static_cast<double>(g.dim) / r + 2.0 / sigma > 1.0))
    throw std::invalid_argument("advective bound needs dim/r + 2/sigma > 1");
  if (!(eps > 0.0))
    throw std::invalid_argument("dissipation absorption weight must be positive");

  const DyadicPartition part = make_partition(g);
  const BesovSpec cspec{static_cast<double>(g.dim) / r + 2.0 / sigma - 1.0, r,
                        sigma};
  const std::vector<double> mesh = uniform_times(1.0, kNumTimes);

  // The bounds hold on every subinterval [0, t_m], so each trial tests the
  // whole prefix family and reports its worst ratio; the per-node spatial
  // norms are computed once and recombined by scalar running trapezoids.
  struct PrefixData {
    std::vector<double> t_abs;          // |T(t_m)|
    std::vector<double> a_sup, b_sup;   // sup_{s <= t_m} ||.||_2
    std::vector<double> a_grad, b_grad; // prefix grad L2(L2)
    std::vector<double> c_norm;         // prefix time-L^sigma Besov
    std::vector<double> drift;          // prefix int (||a||^2+||b||^2)||c||^sigma
  };
  const auto prefix_data = [&](const FieldPath& a, const FieldPath& b,
                               const FieldPath& c) {
    const std::size_t n = mesh.size();
    std::vector<double> slice(n), ah2(n), bh2(n), a2(n), b2(n), cbs(n);
    for (std::size_t i = 0; i < n; ++i) {
      slice[i] = advective_inner(a.fields[i], b.fields[i], c.fields[i]);
      ah2[i] = h1_seminorm2(a.fields[i]);
      bh2[i] = h1_seminorm2(b.fields[i]);
      a2[i] = lp_norm(a.fields[i], 2.0);
      b2[i] = lp_norm(b.fields[i], 2.0);
      cbs[i] = std::pow(besov_norm(c.fields[i], cspec, part), sigma);
    }
    PrefixData out;
    long double t_acc = 0.0L, ag_acc = 0.0L, bg_acc = 0.0L, c_acc = 0.0L,
                d_acc = 0.0L;
    double a_sup = a2[0], b_sup = b2[0];
    for (std::size_t m = 1; m < n; ++m) {
      const long double h = mesh[m] - mesh[m - 1];
      t_acc += 0.5L * h * (slice[m] + slice[m - 1]);
      ag_acc += 0.5L * h * (ah2[m] + ah2[m - 1]);
      bg_acc += 0.5L * h * (bh2[m] + bh2[m - 1]);
      c_acc += 0.5L * h * (cbs[m] + cbs[m - 1]);
      d_acc += 0.5L * h * ((a2[m] * a2[m] + b2[m] * b2[m]) * cbs[m] +
                           (a2[m - 1] * a2[m - 1] + b2[m - 1] * b2[m - 1]) *
                               cbs[m - 1]);
      a_sup = std::max(a_sup, a2[m]);
      b_sup = std::max(b_sup, b2[m]);
      out.t_abs.push_back(std::abs(static_cast<double>(t_acc)));
      out.a_sup.push_back(a_sup);
      out.b_sup.push_back(b_sup);
      out.a_grad.push_back(std::sqrt(static_cast<double>(ag_acc)));
      out.b_grad.push_back(std::sqrt(static_cast<double>(bg_acc)));
      out.c_norm.push_back(
          std::pow(static_cast<double>(c_acc), 1.0 / sigma));
      out.drift.push_back(static_cast<double>(d_acc));
    }
    return out;
  };

  // Nodewise advective product truncated to the partition's resolved ball:
  // the tested-slot shape with no integrand cancellation, which probes the
  // bounds near their extremal configurations instead of deep inside them.
  const int j_top = part.j_max() + 1;
  const auto aligned_path = [&](const FieldPath& a, const FieldPath& b) {
    FieldPath c;
    c.times = a.times;
    for (std::size_t i = 0; i < a.fields.size(); ++i) {
      VectorField adv(g);
      for (int k = 0; k < g.dim; ++k)
        for (int j = 0; j < g.dim; ++j)
          axpy(adv[k], 1.0,
               multiply_dealiased(a.fields[i][j], derivative(b.fields[i][k], j)));
      c.fields.push_back(s_j(adv, part, j_top));
    }
    return c;
  };

  const auto product_worst = [&](const PrefixData& d) {
    double worst = 0.0;
    for (std::size_t m = 0; m < d.t_abs.size(); ++m) {
      const double ai = d.a_sup[m], ag = d.a_grad[m];
      const double bi = d.b_sup[m], bg = d.b_grad[m];
      const double i1 = std::pow(ai, 1.0 / sigma) *
                        std::pow(ag, 1.0 - 1.0 / sigma) *
                        std::pow(bi, 1.0 / sigma) *
                        std::pow(bg, 1.0 - 1.0 / sigma);
      const double i2 =
          ag * std::pow(bi, 2.0 / sigma) * std::pow(bg, 1.0 - 2.0 / sigma);
      const double i3 =
          std::pow(ai, 2.0 / sigma) * std::pow(ag, 1.0 - 2.0 / sigma) * bg;
      const double rhs = (i1 + i2 + i3) * d.c_norm[m];
      if (rhs > 0.0) worst = std::max(worst, d.t_abs[m] / rhs);
    }
    return worst;
  };

  // The dissipation share enters the yardstick with its weight eps, and the
  // tested slot is rescaled to the amplitude where the bound is tightest
  // (the ratio is 1-homogeneous upstairs but sigma-homogeneous in the drift
  // term): lambda* = (eps G / ((sigma-1) D))^{1/sigma}.  Every rescale is a
  // legitimate test vector, so the optimum is still a valid ratio.
  const auto split_worst = [&](const PrefixData& d) {
    double worst = 0.0;
    for (std::size_t m = 0; m < d.t_abs.size(); ++m) {
      const double e = eps * (d.a_grad[m] * d.a_grad[m] +
                              d.b_grad[m] * d.b_grad[m]);
      const double t1 = d.t_abs[m], d1 = d.drift[m];
      if (!(t1 > 0.0) || !(d1 > 0.0) || !(e > 0.0)) continue;
      const double lam = std::pow(e / ((sigma - 1.0) * d1), 1.0 / sigma);
      worst = std::max(worst, lam * t1 * (sigma - 1.0) / (e * sigma));
    }
    return worst;
  };

  const RatioFn product = [&](double slope, Rng& rng) {
    const FieldPath a = random_vector_path(g, part, slope, mesh, rng);
    const FieldPath b = random_vector_path(g, part, slope, mesh, rng);
    const FieldPath c = random_vector_path(g, part, slope, mesh, rng);
    return std::max(product_worst(prefix_data(a, b, c)),
                    product_worst(prefix_data(a, b, aligned_path(a, b))));
  };

  const RatioFn split = [&](double slope, Rng& rng) {
    const FieldPath a = random_vector_path(g, part, slope, mesh, rng);
    const FieldPath b = random_vector_path(g, part, slope, mesh, rng);
    const FieldPath c = random_vector_path(g, part, slope, mesh, rng);
    return std::max(split_worst(prefix_data(a, b, c)),
                    split_worst(prefix_data(a, b, aligned_path(a, b))));
  };

  const RatioFn symmetric = [&](double slope, Rng& rng) {
    const FieldPath a = random_vector_path(g, part, slope, mesh, rng);
    const FieldPath c = random_vector_path(g, part, slope, mesh, rng);
    return std::max(split_worst(prefix_data(a, a, c)),
                    split_worst(prefix_data(a, a, aligned_path(a, a))));
  };

  const std::string indices =
      "r=" + fmt(r) + " sigma=" + fmt(sigma) + " eps=" + fmt(eps);
  TrilinearChecks out;
  out.product = two_phase_check("advective-product", indices, product, n_a, n_b,
                                seed);
  out.split =
      two_phase_check("advective-split", indices, split, n_a, n_b, seed + 1);
  out.symmetric = two_phase_check("advective-split-symmetric", indices, symmetric,
                                  n_a, n_b, seed + 2);
  out.pass = out.product.pass && out.split.pass && out.symmetric.pass;
  return out;
}

}  // namespace bmhd
