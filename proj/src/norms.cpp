#include "bmhd/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "bmhd/fft.hpp"
#include "bmhd/ops.hpp"

namespace bmhd {

void require_increasing_times(const std::vector<double>& times) {
  if (times.size() < 2)
    throw std::invalid_argument("time mesh needs at least 2 samples");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw std::invalid_argument("time mesh must be strictly increasing");
}

double lr_sum(const std::vector<double>& terms, double r) {
  if (r < 1.0) throw std::invalid_argument("l^r exponent must be >= 1");
  if (std::isinf(r)) {
    double m = 0.0;
    for (double t : terms) m = std::max(m, t);
    return m;
  }
  long double acc = 0.0L;
  for (double t : terms) acc += std::pow(static_cast<long double>(t), (long double)r);
  return static_cast<double>(std::pow(acc, 1.0L / static_cast<long double>(r)));
}

double time_lp(const std::vector<double>& values, const std::vector<double>& times,
               double rho) {
  if (values.size() != times.size())
    throw std::invalid_argument("value/time sample count mismatch");
  require_increasing_times(times);
  if (rho < 1.0) throw std::invalid_argument("time exponent must be >= 1");
  if (std::isinf(rho)) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
  long double acc = 0.0L;
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    const long double a = std::pow(std::abs((long double)values[i]), (long double)rho);
    const long double b = std::pow(std::abs((long double)values[i + 1]), (long double)rho);
    acc += 0.5L * (a + b) * (times[i + 1] - times[i]);
  }
  return static_cast<double>(std::pow(acc, 1.0L / static_cast<long double>(rho)));
}

namespace {

template <typename FieldT>
double besov_impl(const FieldT& f, const BesovSpec& spec, const DyadicPartition& part) {
  std::vector<double> terms(part.bands());
  for (int j = part.j_min(); j <= part.j_max(); ++j) {
    const double nj = lp_norm(delta_j(f, part, j), spec.p);
    terms[j - part.j_min()] = std::pow(2.0, spec.s * j) * nj;
  }
  return lr_sum(terms, spec.r);
}

}  // namespace

double besov_norm(const ScalarField& f, const BesovSpec& spec,
                  const DyadicPartition& part) {
  return besov_impl(f, spec, part);
}

double besov_norm(const VectorField& u, const BesovSpec& spec,
                  const DyadicPartition& part) {
  return besov_impl(u, spec, part);
}

double inhomogeneous_besov_norm(const ScalarField& f, const BesovSpec& spec,
                                const DyadicPartition& part) {
  if (part.j_max() < 0)
    throw std::invalid_argument("inhomogeneous norm needs bands j >= 0");
  std::vector<double> terms;
  for (int j = 0; j <= part.j_max(); ++j) {
    const double nj = lp_norm(delta_j(f, part, j), spec.p);
    terms.push_back(std::pow(2.0, spec.s * j) * nj);
  }
  return lr_sum(terms, spec.r) + lp_norm(s_j(f, part, 0), spec.p);
}

namespace {

template <typename FieldT>
double chemin_lerner_impl(const std::vector<FieldT>& traj, const MixedNormSpec& spec,
                          const DyadicPartition& part) {
  if (traj.size() != spec.times.size())
    throw std::invalid_argument("trajectory/time sample count mismatch");
  require_increasing_times(spec.times);
  std::vector<double> terms(part.bands());
  std::vector<double> series(traj.size());
  for (int j = part.j_min(); j <= part.j_max(); ++j) {
    for (std::size_t i = 0; i < traj.size(); ++i)
      series[i] = lp_norm(delta_j(traj[i], part, j), spec.besov.p);
    const double tj = time_lp(series, spec.times, spec.rho);
    terms[j - part.j_min()] = std::pow(2.0, spec.besov.s * j) * tj;
  }
  return lr_sum(terms, spec.besov.r);
}

}  // namespace

double chemin_lerner_norm(const std::vector<ScalarField>& traj,
                          const MixedNormSpec& spec, const DyadicPartition& part) {
  return chemin_lerner_impl(traj, spec, part);
}

double chemin_lerner_norm(const std::vector<VectorField>& traj,
                          const MixedNormSpec& spec, const DyadicPartition& part) {
  return chemin_lerner_impl(traj, spec, part);
}

double time_lp_besov(const std::vector<VectorField>& traj,
                     const std::vector<double>& times, double rho,
                     const BesovSpec& spec, const DyadicPartition& part) {
  if (traj.size() != times.size())
    throw std::invalid_argument("trajectory/time sample count mismatch");
  std::vector<double> series(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i)
    series[i] = besov_norm(traj[i], spec, part);
  return time_lp(series, times, rho);
}

double lorentz_norm(const std::vector<double>& values,
                    const std::vector<double>& weights, const LorentzSpec& spec) {
  if (values.size() != weights.size())
    throw std::invalid_argument("value/weight count mismatch");
  if (!(spec.p > 1.0)) throw std::invalid_argument("Lorentz norm requires p > 1");
  if (!(spec.q >= 1.0)) throw std::invalid_argument("Lorentz norm requires q >= 1");
  // decreasing rearrangement as an exact step function
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(values[a]) > std::abs(values[b]);
  });
  const double p = spec.p, q = spec.q;
  if (std::isinf(q)) {
    // sup of t^{1/p} f*(t); the sup over a plateau sits at its right edge
    double t = 0.0, best = 0.0;
    for (std::size_t idx : order) {
      const double a = std::abs(values[idx]);
      if (a == 0.0) break;
      t += weights[idx];
      best = std::max(best, std::pow(t, 1.0 / p) * a);
    }
    return best;
  }
  long double acc = 0.0L, t_prev = 0.0L;
  for (std::size_t idx : order) {
    const long double a = std::abs(values[idx]);
    if (a == 0.0L) break;
    const long double t = t_prev + weights[idx];
    // int_{t_prev}^{t} (s^{1/p} a)^q ds/s = a^q (p/q) (t^{q/p} - t_prev^{q/p})
    acc += std::pow(a, (long double)q) * (p / q) *
           (std::pow(t, (long double)(q / p)) - std::pow(t_prev, (long double)(q / p)));
    t_prev = t;
  }
  return static_cast<double>(std::pow(acc, 1.0L / static_cast<long double>(q)));
}

double lorentz_norm(const ScalarField& f, const LorentzSpec& spec) {
  std::vector<double> vals = to_physical(f);
  std::vector<double> w(vals.size(), 1.0 / static_cast<double>(vals.size()));
  return lorentz_norm(vals, w, spec);
}

double lorentz_time_norm(const std::vector<double>& values,
                         const std::vector<double>& times, const LorentzSpec& spec) {
  if (values.size() != times.size())
    throw std::invalid_argument("value/time sample count mismatch");
  require_increasing_times(times);
  // each sample owns half of each adjacent interval; the norm covers
  // [t_first, t_last] exactly
  std::vector<double> w(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double left = i == 0 ? times[0] : 0.5 * (times[i - 1] + times[i]);
    const double right =
        i + 1 == values.size() ? times.back() : 0.5 * (times[i] + times[i + 1]);
    w[i] = right - left;
  }
  return lorentz_norm(values, w, spec);
}

}  // namespace bmhd
