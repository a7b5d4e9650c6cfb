#include "bmhd/lorentz_checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "bmhd/fft.hpp"
#include "bmhd/grid.hpp"
#include "bmhd/norms.hpp"
#include "bmhd/rng.hpp"

namespace bmhd {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// random nonnegative step function with a handful of levels
std::vector<double> random_simple(Rng& rng, std::size_t atoms) {
  const int levels = rng.uniform_int(2, 6);
  std::vector<double> level_vals(levels);
  for (auto& v : level_vals) v = std::exp(1.5 * rng.normal());
  std::vector<double> f(atoms);
  for (auto& v : f) {
    const int pick = rng.uniform_int(0, levels);  // one extra slot = zero level
    v = pick == levels ? 0.0 : level_vals[pick];
  }
  return f;
}

// second Lorentz index: finite in [1, 8] or infinity
double draw_q(Rng& rng) {
  if (rng.uniform() < 0.15) return kInf;
  return rng.uniform(1.0, 8.0);
}

double inv(double x) { return std::isinf(x) ? 0.0 : 1.0 / x; }

// convolution on the normalized discrete torus via raw transforms
std::vector<double> torus_convolution(const Grid& g, const std::vector<double>& f,
                                      const std::vector<double>& h) {
  std::vector<cplx> cf(f.size()), ch(h.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    cf[i] = f[i];
    ch[i] = h[i];
  }
  std::vector<cplx> Ff, Fh;
  physical_to_spectral(g, cf, Ff);
  physical_to_spectral(g, ch, Fh);
  for (std::size_t i = 0; i < Ff.size(); ++i) Ff[i] *= Fh[i];
  std::vector<cplx> conv;
  spectral_to_physical(g, Ff, conv);
  std::vector<double> out(conv.size());
  for (std::size_t i = 0; i < conv.size(); ++i) out[i] = conv[i].real();
  return out;
}

}  // namespace

LorentzCheckReport lorentz_holder_check(int n_trials, std::uint64_t seed) {
  LorentzCheckReport rep;
  rep.name = "lorentz-holder";
  rep.n_trials = n_trials;
  Rng root(seed);
  const std::size_t atoms = 96;
  for (int trial = 0; trial < n_trials; ++trial) {
    Rng rng = root.fork(trial);
    // indices: 1/r = 1/p1 + 1/p2 < 1
    double p1, p2;
    do {
      p1 = rng.uniform(1.05, 8.0);
      p2 = rng.uniform(1.05, 8.0);
    } while (1.0 / p1 + 1.0 / p2 >= 0.98);
    const double r = 1.0 / (1.0 / p1 + 1.0 / p2);
    const double rprime = r / (r - 1.0);
    const double q1 = draw_q(rng), q2 = draw_q(rng);
    const double s_floor = inv(q1) + inv(q2);
    double s;
    if (s_floor == 0.0) {
      s = kInf;  // both q infinite: only s = inf admissible
    } else {
      s = std::max(1.0, 1.0 / s_floor);
      if (rng.uniform() < 0.5) s = std::max(s, rng.uniform(s, 8.0));
    }

    // random weights on a unit-measure atomic space
    std::vector<double> w(atoms);
    double tot = 0.0;
    for (auto& x : w) {
      x = rng.uniform(0.1, 1.0);
      tot += x;
    }
    for (auto& x : w) x /= tot;

    std::vector<double> f = random_simple(rng, atoms);
    std::vector<double> g = random_simple(rng, atoms);
    std::vector<double> fg(atoms);
    for (std::size_t i = 0; i < atoms; ++i) fg[i] = f[i] * g[i];

    const double lhs = lorentz_norm(fg, w, {r, s});
    const double rhs = lorentz_norm(f, w, {p1, q1}) * lorentz_norm(g, w, {p2, q2});
    if (rhs == 0.0) continue;
    const double plain = lhs / rhs;
    const double ratio = plain / rprime;
    rep.max_lhs_rhs = std::max(rep.max_lhs_rhs, plain);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    if (ratio > 1.0) ++rep.violations;
  }
  return rep;
}

LorentzCheckReport lorentz_young_check(int n_trials, std::uint64_t seed) {
  LorentzCheckReport rep;
  rep.name = "lorentz-young";
  rep.n_trials = n_trials;
  Rng root(seed ^ 0x59ull);
  Grid g(2, 32);
  const std::size_t atoms = g.points();
  const std::vector<double> w(atoms, 1.0 / static_cast<double>(atoms));
  for (int trial = 0; trial < n_trials; ++trial) {
    Rng rng = root.fork(trial);
    // indices: 1/r = 1/p1 + 1/p2 - 1 in (0, 1)
    double p1, p2;
    do {
      p1 = rng.uniform(1.05, 4.0);
      p2 = rng.uniform(1.05, 4.0);
    } while (1.0 / p1 + 1.0 / p2 <= 1.02 || 1.0 / p1 + 1.0 / p2 >= 1.95);
    const double r = 1.0 / (1.0 / p1 + 1.0 / p2 - 1.0);
    const double q1 = draw_q(rng), q2 = draw_q(rng);
    const double s_floor = inv(q1) + inv(q2);
    const double s = s_floor == 0.0 ? kInf : std::max(1.0, 1.0 / s_floor);

    std::vector<double> f = random_simple(rng, atoms);
    std::vector<double> h = random_simple(rng, atoms);
    std::vector<double> conv = torus_convolution(g, f, h);
    for (auto& v : conv) v = std::abs(v);

    const double lhs = lorentz_norm(conv, w, {r, s});
    const double rhs = lorentz_norm(f, w, {p1, q1}) * lorentz_norm(h, w, {p2, q2});
    if (rhs == 0.0) continue;
    const double plain = lhs / rhs;
    const double ratio = plain / (3.0 * r);
    rep.max_lhs_rhs = std::max(rep.max_lhs_rhs, plain);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    if (ratio > 1.0) ++rep.violations;
  }
  return rep;
}

LorentzCheckReport lorentz_conv_endpoint_check(int n_trials, std::uint64_t seed) {
  LorentzCheckReport rep;
  rep.name = "lorentz-conv-endpoint";
  rep.n_trials = n_trials;
  Rng root(seed ^ 0xc3ull);
  Grid g(2, 32);
  const std::size_t atoms = g.points();
  const std::vector<double> w(atoms, 1.0 / static_cast<double>(atoms));
  for (int trial = 0; trial < n_trials; ++trial) {
    Rng rng = root.fork(trial);
    const double p = rng.uniform(1.1, 6.0);
    const double pprime = p / (p - 1.0);
    // conjugate second indices keep the constant exactly 1
    const double q1 = rng.uniform(1.1, 6.0);
    const double q2 = q1 / (q1 - 1.0);

    std::vector<double> f = random_simple(rng, atoms);
    std::vector<double> h = random_simple(rng, atoms);
    std::vector<double> conv = torus_convolution(g, f, h);
    double lhs = 0.0;
    for (double v : conv) lhs = std::max(lhs, std::abs(v));
    const double rhs = lorentz_norm(f, w, {p, q1}) * lorentz_norm(h, w, {pprime, q2});
    if (rhs == 0.0) continue;
    const double ratio = lhs / rhs;
    rep.max_lhs_rhs = std::max(rep.max_lhs_rhs, ratio);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    if (ratio > 1.0) ++rep.violations;
  }
  return rep;
}

}  // namespace bmhd
