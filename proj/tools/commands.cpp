#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "bmhd/bony.hpp"
#include "bmhd/calderon.hpp"
#include "bmhd/checkpoint.hpp"
#include "bmhd/decay.hpp"
#include "bmhd/generate.hpp"
#include "bmhd/lorentz_checks.hpp"
#include "bmhd/mhd.hpp"
#include "bmhd/norms.hpp"
#include "bmhd/ops.hpp"
#include "bmhd/picard.hpp"
#include "bmhd/report.hpp"
#include "bmhd/trilinear.hpp"
#include "bmhd/weakstrong.hpp"
#include "bmhd/xnorm.hpp"

namespace bmhd {

namespace {

// ------------------------------------------------------------- utilities ---

int resolved_threads(const RunConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  if (const char* env = std::getenv("BMHD_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Independent jobs only; each job writes its own slot, so the result is
// schedule-independent and identical to the serial order.
void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  const int workers = std::min(threads, n);
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  for (auto& t : pool) t.join();
}

double pair_besov(const VectorField& u, const VectorField& b,
                  const BesovSpec& spec, const DyadicPartition& part) {
  return besov_norm(u, spec, part) + besov_norm(b, spec, part);
}

// the spectral-slope ladder the estimate banks walk, reused for field banks
double stratified_slope(int t) { return -3.0 + 4.0 * (t % 9) / 8.0; }

struct Emitter {
  const RunConfig& cfg;
  std::string hash;

  explicit Emitter(const RunConfig& c) : cfg(c), hash(config_hash_hex(c)) {
    std::filesystem::create_directories(cfg.out_dir);
  }
  std::string path(const std::string& suffix) const {
    return cfg.out_dir + "/" + hash + "-" + suffix;
  }
  void series(const TimeSeries& ts, const std::string& name) const {
    write_text_file(path(name), time_series_csv(ts));
  }
  void norms(const std::vector<NormRow>& rows) const {
    write_text_file(path("norms.csv"), norm_report_csv(rows));
  }
  void estimate(const EstimateReport& rep) const {
    std::string stem = rep.name;
    std::replace(stem.begin(), stem.end(), ' ', '-');
    write_text_file(path("estimate-" + stem + ".json"), estimate_json(rep));
  }
  int finish(RunSummary& sum) const {
    sum.config_hash = hash;
    write_text_file(path("summary.json"), summary_json(sum));
    for (const auto& [k, v] : sum.residuals)
      std::printf("  %-28s %.6g\n", k.c_str(), v);
    std::printf("[%s] %s -> %s\n", sum.pass ? "PASS" : "FAIL",
                cfg.experiment.c_str(), path("summary.json").c_str());
    return sum.pass ? 0 : 1;
  }
};

int sample_stride(const RunConfig& cfg) {
  const long long steps = std::llround(cfg.t_end / cfg.dt);
  return std::max(1, static_cast<int>(steps / std::max(1, cfg.n_times - 1)));
}

TimeSeries monitor_series(const Trajectory& traj) {
  TimeSeries ts;
  ts.columns = {"energy", "dissipation"};
  ts.t = traj.monitor_times;
  for (std::size_t i = 0; i < traj.monitor_times.size(); ++i)
    ts.rows.push_back({traj.energy[i], traj.dissipation[i]});
  return ts;
}

TimeSeries sample_series(const Trajectory& traj, const BesovSpec& spec,
                         const DyadicPartition& part) {
  TimeSeries ts;
  ts.columns = {"energy", "dissipation", "besov"};
  for (const MHDState& s : traj.states) {
    ts.t.push_back(s.t);
    ts.rows.push_back({pair_energy(s), pair_dissipation(s),
                       pair_besov(s.u, s.b, spec, part)});
  }
  return ts;
}

TimeSeries band_series(const Trajectory& traj, const DyadicPartition& part) {
  TimeSeries ts;
  for (int j = part.j_min(); j <= part.j_max(); ++j)
    ts.columns.push_back("band_" + std::to_string(j));
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    ts.t.push_back(traj.states[i].t);
    ts.rows.push_back(traj.ledger.rows[i]);
  }
  return ts;
}

// ------------------------------------------------------------ lp / bony ----

int run_lp_check(const RunConfig& cfg, const Grid& g, const DyadicPartition& part) {
  const int n_fields = static_cast<int>(param_or(cfg, "n_fields", 50));
  const double tol = param_or(cfg, "tol", 1e-12);
  Emitter em(cfg);

  // multiplier identity on every resolved wavenumber
  const double r2 = part.resolved_radius() * part.resolved_radius();
  double partition_worst = 0.0;
  for (std::size_t i = 0; i < g.points(); ++i) {
    const double kk = static_cast<double>(g.k2(g.wavevector(i)));
    if (kk < 0.5 || kk > r2) continue;
    double sum = 0.0;
    for (int j = part.j_min(); j <= part.j_max(); ++j)
      sum += part.phi_values(j)[i];
    partition_worst = std::max(partition_worst, std::abs(sum - 1.0));
  }

  // separated bands have disjoint multiplier supports
  double overlap_worst = 0.0;
  for (int j = part.j_min(); j <= part.j_max(); ++j)
    for (int k = j + 2; k <= part.j_max(); ++k)
      for (std::size_t i = 0; i < g.points(); ++i)
        overlap_worst = std::max(overlap_worst,
                                 part.phi_values(j)[i] * part.phi_values(k)[i]);

  // reconstruction over a random bank spanning the slope ladder
  const Rng base(cfg.seed);
  std::vector<double> recon(static_cast<std::size_t>(n_fields), 0.0);
  parallel_for(n_fields, resolved_threads(cfg), [&](int i) {
    Rng rng = base.fork(static_cast<std::uint64_t>(i) + 1);
    const ScalarField f = random_slope_field(g, part, stratified_slope(i), rng);
    ScalarField sum(g);
    for (int j = part.j_min(); j <= part.j_max(); ++j)
      axpy(sum, 1.0, delta_j(f, part, j));
    recon[static_cast<std::size_t>(i)] =
        lp_norm(sum - f, 2.0) / lp_norm(f, 2.0);
  });
  const double recon_worst = *std::max_element(recon.begin(), recon.end());

  TimeSeries ts;
  ts.columns = {"reconstruction_rel_l2"};
  for (int i = 0; i < n_fields; ++i) {
    ts.t.push_back(i);
    ts.rows.push_back({recon[static_cast<std::size_t>(i)]});
  }
  em.series(ts, "series.csv");

  RunSummary sum;
  sum.residuals = {{"partition_of_unity", partition_worst},
                   {"band_overlap", overlap_worst},
                   {"reconstruction_worst", recon_worst}};
  sum.pass = partition_worst <= tol && overlap_worst == 0.0 && recon_worst <= tol;
  return em.finish(sum);
}

int run_bony_check(const RunConfig& cfg, const Grid& g,
                   const DyadicPartition& part) {
  const int n_pairs = static_cast<int>(param_or(cfg, "n_pairs", 100));
  const double tol = param_or(cfg, "tol", 1e-11);
  Emitter em(cfg);

  const Rng base(cfg.seed);
  std::vector<double> resid(static_cast<std::size_t>(n_pairs), 0.0);
  parallel_for(n_pairs, resolved_threads(cfg), [&](int i) {
    Rng rng = base.fork(static_cast<std::uint64_t>(i) + 1);
    const ScalarField f = random_slope_field(g, part, stratified_slope(i), rng);
    const ScalarField h =
        random_slope_field(g, part, stratified_slope(i + 4), rng);
    const ScalarField ref = multiply_dealiased(f, h);
    const BonySplit s = bony_decompose(f, h, part);
    resid[static_cast<std::size_t>(i)] =
        lp_norm(s.t_gf + s.t_fg + s.remainder - ref, 2.0) / lp_norm(ref, 2.0);
  });
  const double worst = *std::max_element(resid.begin(), resid.end());

  TimeSeries ts;
  ts.columns = {"bony_rel_l2"};
  for (int i = 0; i < n_pairs; ++i) {
    ts.t.push_back(i);
    ts.rows.push_back({resid[static_cast<std::size_t>(i)]});
  }
  em.series(ts, "series.csv");

  RunSummary sum;
  sum.residuals = {{"bony_worst", worst}};
  sum.pass = worst <= tol;
  return em.finish(sum);
}

// ---------------------------------------------------------------- norms ----

int run_norms(const RunConfig& cfg, const Grid& g, const DyadicPartition& part) {
  const double slope = param_or(cfg, "slope", -1.0);
  Emitter em(cfg);
  Rng rng(cfg.seed);
  const ScalarField f = random_unit_field(g, part, slope, rng);

  std::vector<NormRow> rows;
  rows.push_back({"l2", 0, 2, 0, 0, lp_norm(f, 2.0)});
  rows.push_back({"l4", 0, 4, 0, 0, lp_norm(f, 4.0)});
  rows.push_back({"linf", 0, INFINITY, 0, 0,
                  lp_norm(f, INFINITY)});
  rows.push_back({"h1_seminorm", 1, 2, 0, 0, std::sqrt(h1_seminorm2(f))});
  rows.push_back({"besov", cfg.spec.s, cfg.spec.p, cfg.spec.r, 0,
                  besov_norm(f, cfg.spec, part)});
  rows.push_back({"besov_inhomogeneous", cfg.spec.s, cfg.spec.p, cfg.spec.r, 0,
                  inhomogeneous_besov_norm(f, cfg.spec, part)});
  rows.push_back({"lorentz", 0, 4, 2, 0, lorentz_norm(f, LorentzSpec{4.0, 2.0})});

  // heat path: mixed interval norms and a sampled decay series
  const std::vector<double> times = uniform_times(cfg.t_end, cfg.n_times);
  std::vector<ScalarField> path;
  std::vector<double> l4s, besovs;
  TimeSeries ts;
  ts.columns = {"l2", "l4", "besov"};
  for (const double t : times) {
    path.push_back(heat_propagate(f, t));
    const ScalarField& s = path.back();
    l4s.push_back(lp_norm(s, 4.0));
    besovs.push_back(besov_norm(s, cfg.spec, part));
    ts.t.push_back(t);
    ts.rows.push_back({lp_norm(s, 2.0), l4s.back(), besovs.back()});
  }
  rows.push_back({"chemin_lerner", cfg.spec.s, cfg.spec.p, cfg.spec.r, cfg.q,
                  chemin_lerner_norm(path, MixedNormSpec{cfg.q, cfg.spec, times},
                                     part)});
  rows.push_back({"time_lp_besov", cfg.spec.s, cfg.spec.p, cfg.spec.r, cfg.q,
                  time_lp(besovs, times, cfg.q)});
  rows.push_back({"lorentz_time_l4", 0, 4, 2, 4,
                  lorentz_time_norm(l4s, times, LorentzSpec{4.0, 2.0})});

  em.norms(rows);
  em.series(ts, "series.csv");

  RunSummary sum;
  bool finite = true;
  for (const NormRow& row : rows) {
    sum.final_norms[row.norm_name] = row.value;
    finite = finite && std::isfinite(row.value);
  }
  sum.pass = finite;
  return em.finish(sum);
}

// ---------------------------------------------------------------- solve ----

int run_solve(const RunConfig& cfg, const Grid& g, const DyadicPartition& part) {
  const double k_peak = param_or(cfg, "k_peak", 1.0);
  const double k_cutoff = param_or(cfg, "k_cutoff", 1.5);
  const double energy = param_or(cfg, "energy", 1.0);
  const double drift_tol = param_or(cfg, "drift_tol", 1e-5);
  const double canc_tol = param_or(cfg, "cancellation_tol", 1e-12);
  Emitter em(cfg);

  Rng rng(cfg.seed);
  VectorField u0 = random_divfree_field(g, k_peak, k_cutoff, rng);
  VectorField b0 = random_divfree_field(g, k_peak, k_cutoff, rng);
  MHDState s0(u0, b0, 0.0);
  const double a = std::sqrt(energy / pair_energy(s0));
  scale(s0.u, a);
  scale(s0.b, a);

  const Trajectory traj =
      march_ifrk4(s0, cfg.t_end, cfg.dt, sample_stride(cfg), part, cfg.spec);
  const EnergyReport er = energy_balance(traj);

  // the magnetic exchange terms transfer energy without creating it:
  // int (b.grad b).u + int (b.grad u).b = 0 state by state
  double canc_worst = 0.0;
  for (const MHDState& s : traj.states)
    canc_worst = std::max(canc_worst, std::abs(advective_inner(s.b, s.b, s.u) +
                                               advective_inner(s.b, s.u, s.b)));

  em.series(monitor_series(traj), "series.csv");
  em.series(band_series(traj, part), "bands.csv");
  const MHDState& last = traj.states.back();
  em.norms({{"energy", 0, 2, 0, 0, pair_energy(last)},
            {"dissipation", 1, 2, 0, 0, pair_dissipation(last)},
            {"besov", cfg.spec.s, cfg.spec.p, cfg.spec.r, 0,
             pair_besov(last.u, last.b, cfg.spec, part)}});
  if (param_or(cfg, "checkpoint", 1.0) != 0.0)
    save_checkpoint(em.path("final.chk"), last);

  RunSummary sum;
  sum.final_norms = {{"energy", pair_energy(last)},
                     {"besov", pair_besov(last.u, last.b, cfg.spec, part)}};
  sum.residuals = {{"energy_drift", er.max_abs_drift},
                   {"magnetic_cancellation", canc_worst}};
  sum.pass = er.max_abs_drift <= drift_tol && canc_worst <= canc_tol;
  return em.finish(sum);
}

// ------------------------------------------------- picard-family drivers ---

struct PicardSetup {
  VectorField u0, b0;
  double data_norm = 0.0;
};

PicardSetup scaled_divfree_data(const RunConfig& cfg, const Grid& g,
                                const DyadicPartition& part, double target) {
  Rng rng(cfg.seed);
  PicardSetup s{random_divfree_field(g, param_or(cfg, "k_peak", 1.0),
                                     param_or(cfg, "k_cutoff", 1.5), rng),
                random_divfree_field(g, param_or(cfg, "k_peak", 1.0),
                                     param_or(cfg, "k_cutoff", 1.5), rng),
                0.0};
  const double norm0 = pair_besov(s.u0, s.b0, cfg.spec, part);
  scale(s.u0, target / norm0);
  scale(s.b0, target / norm0);
  s.data_norm = pair_besov(s.u0, s.b0, cfg.spec, part);
  return s;
}

void fill_picard_outputs(const Emitter& em, const RunConfig& cfg,
                         const DyadicPartition& part, const PicardResult& res,
                         double residual, RunSummary& sum) {
  sum.contraction_factors = res.report.factors;
  sum.residuals["mild"] = residual;
  sum.final_norms["data_norm"] = res.report.data_norm;
  sum.final_norms["free_norm"] = res.report.free_norm;
  if (!res.report.iterate_norms.empty())
    sum.final_norms["working_norm"] = res.report.iterate_norms.back();
  if (res.report.status == PicardStatus::kConverged) {
    em.series(sample_series(res.traj, cfg.spec, part), "series.csv");
    em.series(band_series(res.traj, part), "bands.csv");
    save_checkpoint(em.path("final.chk"), res.traj.states.back());
  }
}

int run_picard(const RunConfig& cfg, const Grid& g, const DyadicPartition& part) {
  const double data_norm = param_or(cfg, "data_norm", 1e-3);
  const double tol = param_or(cfg, "tol", 1e-8);
  const int max_iter = static_cast<int>(param_or(cfg, "max_iter", 30));
  Emitter em(cfg);

  const PicardSetup s = scaled_divfree_data(cfg, g, part, data_norm);
  const PicardResult res = picard_solve(s.u0, s.b0, cfg.t_end, cfg.n_times,
                                        cfg.q, cfg.spec, tol, max_iter);
  const bool converged = res.report.status == PicardStatus::kConverged;
  const double residual =
      converged ? mild_residual(res.traj, cfg.q, cfg.spec, part) : INFINITY;

  bool contracting = converged && res.report.factors.size() >= 1;
  for (std::size_t k = 1; k < res.report.factors.size(); ++k)
    contracting = contracting && res.report.factors[k] < 0.5;

  RunSummary sum;
  fill_picard_outputs(em, cfg, part, res, residual, sum);
  sum.pass = converged && contracting && residual < 10.0 * tol;
  return em.finish(sum);
}

int run_smalldata(const RunConfig& cfg, const Grid& g,
                  const DyadicPartition& part) {
  const double data_norm = param_or(cfg, "data_norm", 1e-3);
  const double tol = param_or(cfg, "tol", 1e-8);
  const int max_iter = static_cast<int>(param_or(cfg, "max_iter", 30));
  // ball invariance: the solution's critical norm stays within this factor
  const double persistence = param_or(cfg, "persistence", 2.0);
  const double xr = param_or(cfg, "xr", 3.0);
  Emitter em(cfg);

  const PicardSetup s = scaled_divfree_data(cfg, g, part, data_norm);
  const PicardResult res = picard_solve(s.u0, s.b0, cfg.t_end, cfg.n_times,
                                        cfg.q, cfg.spec, tol, max_iter);
  const bool converged = res.report.status == PicardStatus::kConverged;
  const double residual =
      converged ? mild_residual(res.traj, cfg.q, cfg.spec, part) : INFINITY;

  double sup_norm = 0.0;
  RunSummary sum;
  if (converged) {
    for (const MHDState& st : res.traj.states)
      sup_norm = std::max(sup_norm, pair_besov(st.u, st.b, cfg.spec, part));
    const XNormReport x = x_norm(res.traj, xr);
    sum.final_norms["x1"] = x.x1;
    sum.final_norms["x2"] = x.x2;
    sum.final_norms["x3"] = x.x3;
    sum.final_norms["x4"] = x.x4;
    sum.final_norms["x_total"] = x.total();
  }
  fill_picard_outputs(em, cfg, part, res, residual, sum);
  sum.final_norms["sup_besov"] = sup_norm;
  sum.residuals["persistence_ratio"] =
      s.data_norm > 0.0 ? sup_norm / s.data_norm : 0.0;
  sum.pass = converged && residual < 10.0 * tol &&
             sup_norm <= persistence * s.data_norm;
  return em.finish(sum);
}

int run_local(const RunConfig& cfg, const Grid& g, const DyadicPartition& part) {
  const double data_norm = param_or(cfg, "data_norm", 0.5);
  const double tol = param_or(cfg, "tol", 1e-8);
  const int max_iter = static_cast<int>(param_or(cfg, "max_iter", 60));
  Emitter em(cfg);

  const PicardSetup s = scaled_divfree_data(cfg, g, part, data_norm);
  const PicardResult res = picard_solve(s.u0, s.b0, cfg.t_end, cfg.n_times,
                                        cfg.q, cfg.spec, tol, max_iter);
  const bool converged = res.report.status == PicardStatus::kConverged;
  const double residual =
      converged ? mild_residual(res.traj, cfg.q, cfg.spec, part) : INFINITY;

  RunSummary sum;
  fill_picard_outputs(em, cfg, part, res, residual, sum);
  const bool tail_contracts =
      res.report.factors.empty() || res.report.factors.back() < 1.0;
  sum.pass = converged && tail_contracts && residual < 10.0 * tol;
  return em.finish(sum);
}

// ------------------------------------------------------------- calderon ----

int run_calderon(const RunConfig& cfg, const Grid& g,
                 const DyadicPartition& part) {
  const double data_norm = param_or(cfg, "data_norm", 1.0);
  const double threshold = param_or(cfg, "threshold", 1e-2);
  const BesovSpec bar{param_or(cfg, "bar_s", -0.5), param_or(cfg, "bar_p", 4.0),
                      param_or(cfg, "bar_r", 4.0)};
  const double env_p = param_or(cfg, "p", 2.0);
  const double env_r = param_or(cfg, "r", 3.0);
  const int wh_stride = static_cast<int>(param_or(cfg, "wh_stride", 5));
  const auto ccal = cfg.calibration.find("energy_envelope");
  const double c_cal = ccal == cfg.calibration.end() ? 0.0 : ccal->second;
  Emitter em(cfg);

  Rng rng(cfg.seed);
  const bool smooth = param_or(cfg, "smooth", 0.0) != 0.0;
  const double slope = param_or(cfg, "slope", -1.0);
  VectorField u0 =
      smooth ? random_divfree_field(g, param_or(cfg, "k_peak", 1.0),
                                    param_or(cfg, "k_cutoff", 2.5), rng)
             : random_divfree_slope_field(g, part, slope, rng);
  VectorField b0 =
      smooth ? random_divfree_field(g, param_or(cfg, "k_peak", 1.0),
                                    param_or(cfg, "k_cutoff", 2.5), rng)
             : random_divfree_slope_field(g, part, slope, rng);
  const double a = data_norm / pair_besov(u0, b0, bar, part);
  scale(u0, a);
  scale(b0, a);

  const SplitData split = calderon_split(u0, b0, bar, threshold, part);

  // sample meshes must nest so the recombination can index the high block
  int vg_stride = std::max(wh_stride, sample_stride(cfg));
  vg_stride -= vg_stride % wh_stride;

  const Trajectory wh = march_ifrk4(MHDState(split.w0, split.h0, 0.0), cfg.t_end,
                                    cfg.dt, wh_stride, part, bar);
  const Trajectory vg = solve_mhd_like(split.v0, split.g0, wh, cfg.t_end, cfg.dt,
                                       vg_stride, part, cfg.spec);
  const GronwallReport env =
      gronwall_energy_check(vg, wh, env_p, env_r, c_cal, part);

  // superpose and compare the integral-equation residual with a direct run
  const Trajectory direct = march_ifrk4(MHDState(u0, b0, 0.0), cfg.t_end, cfg.dt,
                                        vg_stride, part, cfg.spec);
  std::map<long long, std::size_t> wh_at;
  for (std::size_t i = 0; i < wh.states.size(); ++i)
    wh_at[std::llround(wh.states[i].t / cfg.dt)] = i;
  Trajectory rec;
  rec.ledger.spec = cfg.spec;
  for (const MHDState& sv : vg.states) {
    const auto it = wh_at.find(std::llround(sv.t / cfg.dt));
    if (it == wh_at.end())
      throw std::runtime_error("high-block samples do not cover the low-block mesh");
    const MHDState& sw = wh.states[it->second];
    rec.states.emplace_back(sv.u + sw.u, sv.b + sw.b, sv.t);
  }
  const double r_direct = mild_residual(direct, cfg.q, cfg.spec, part);
  const double r_rec = mild_residual(rec, cfg.q, cfg.spec, part);

  em.series(monitor_series(vg), "series.csv");
  em.norms({{"tail_norm", bar.s, bar.p, bar.r, 0, split.tail_norm},
            {"data_energy", 0, 2, 0, 0, env.data_energy},
            {"sup_lhs", 0, 2, 0, 0, env.sup_lhs},
            {"gronwall_weight", 0, env_p, env_r, 0, env.gronwall_weight}});
  save_checkpoint(em.path("final.chk"), rec.states.back());

  RunSummary sum;
  sum.final_norms = {{"data_energy", env.data_energy},
                     {"sup_lhs", env.sup_lhs},
                     {"bound", env.bound},
                     {"tail_norm", split.tail_norm},
                     {"j_cut", static_cast<double>(split.j_cut)}};
  sum.residuals = {{"recombined_mild", r_rec},
                   {"direct_mild", r_direct},
                   {"residual_ratio", r_direct > 0.0 ? r_rec / r_direct : 0.0}};
  sum.pass = env.pass && r_rec <= 5.0 * r_direct;
  return em.finish(sum);
}

// ----------------------------------------------------------- weakstrong ----

struct StabilityRun {
  Trajectory strong, weak;
  DyadicPartition part;
};

StabilityRun stability_pipeline(const RunConfig& cfg, const Grid& fine,
                                const DyadicPartition& fine_part,
                                std::uint64_t seed, double pert_size) {
  if (cfg.n < 32)
    throw std::invalid_argument(
        "the two-resolution stability study needs a grid of at least 32");
  const Grid coarse(cfg.dim, cfg.n / 2);
  const DyadicPartition coarse_part = make_partition(coarse);

  Rng rng(seed);
  VectorField u0 = random_divfree_field(coarse, param_or(cfg, "k_peak", 1.0),
                                        param_or(cfg, "k_cutoff", 1.5), rng);
  VectorField b0 = random_divfree_field(coarse, param_or(cfg, "k_peak", 1.0),
                                        param_or(cfg, "k_cutoff", 1.5), rng);
  MHDState probe(u0, b0, 0.0);
  const double a =
      param_or(cfg, "data_l2", 0.3) / std::sqrt(pair_energy(probe));
  scale(u0, a);
  scale(b0, a);

  VectorField du = random_divfree_field(coarse, 2.0, 2.0, rng);
  VectorField db = random_divfree_field(coarse, 2.0, 2.0, rng);
  MHDState pert(du, db, 0.0);
  const double pa = pert_size / std::sqrt(pair_energy(pert));
  scale(du, pa);
  scale(db, pa);

  const int stride = sample_stride(cfg);
  StabilityRun out{
      march_ifrk4(MHDState(spectral_prolong(u0, fine),
                           spectral_prolong(b0, fine), 0.0),
                  cfg.t_end, cfg.dt, stride, fine_part, cfg.spec),
      prolong_trajectory(march_ifrk4(MHDState(u0 + du, b0 + db, 0.0), cfg.t_end,
                                     cfg.dt, stride, coarse_part, cfg.spec),
                         fine, fine_part),
      fine_part};
  return out;
}

int run_weakstrong(const RunConfig& cfg, const Grid& g,
                   const DyadicPartition& part) {
  const double env_p = param_or(cfg, "p", 2.0);
  const double env_r = param_or(cfg, "r", 3.0);
  const double pert = param_or(cfg, "perturbation", 1e-6);
  Emitter em(cfg);

  // envelope constant: from the config's calibration table, else frozen off a
  // held-out pipeline run at a shifted seed
  double c_cal = 0.0;
  const auto it = cfg.calibration.find("stability_envelope");
  if (it != cfg.calibration.end()) {
    c_cal = it->second;
  } else {
    const StabilityRun probe =
        stability_pipeline(cfg, g, part, cfg.seed + 1, pert);
    const WeakStrongReport ref =
        weak_strong_gap(probe.strong, probe.weak, env_p, env_r, 1.0, part);
    double c_min = 0.0;
    for (std::size_t i = 0; i < ref.times.size(); ++i) {
      const double w = std::log(ref.rhs[i] / ref.initial_gap);  // weight at c=1
      if (w > 0.0 && ref.lhs[i] > ref.initial_gap)
        c_min = std::max(c_min, std::log(ref.lhs[i] / ref.initial_gap) / w);
    }
    c_cal = 1.25 * c_min;
  }

  const StabilityRun run = stability_pipeline(cfg, g, part, cfg.seed, pert);
  const WeakStrongReport rep =
      weak_strong_gap(run.strong, run.weak, env_p, env_r, c_cal, part);

  TimeSeries ts;
  ts.columns = {"lhs", "rhs"};
  ts.t = rep.times;
  for (std::size_t i = 0; i < rep.times.size(); ++i)
    ts.rows.push_back({rep.lhs[i], rep.rhs[i]});
  em.series(ts, "series.csv");

  RunSummary sum;
  sum.final_norms = {{"initial_gap", rep.initial_gap},
                     {"max_ratio", rep.max_ratio},
                     {"c_cal", c_cal}};
  sum.residuals = {{"max_envelope_ratio", rep.max_ratio}};
  sum.pass = rep.pass;
  return em.finish(sum);
}

// ------------------------------------------------- estimate-style checks ---

int run_trilinear(const RunConfig& cfg, const Grid& g, const DyadicPartition&) {
  const double r = param_or(cfg, "r", 2.0);
  const double sigma = param_or(cfg, "sigma", 4.0);
  const double eps = param_or(cfg, "eps", 0.05);
  const int n_a = static_cast<int>(param_or(cfg, "bank_a", 150));
  const int n_b = static_cast<int>(param_or(cfg, "bank_b", 150));
  Emitter em(cfg);

  const TrilinearChecks tc =
      trilinear_bound_check(g, r, sigma, eps, n_a, n_b, cfg.seed);

  TimeSeries ts;
  ts.columns = {"max_ratio_a", "max_ratio_b", "calibration", "drift"};
  int idx = 0;
  for (const EstimateReport* rep : {&tc.product, &tc.split, &tc.symmetric}) {
    em.estimate(*rep);
    ts.t.push_back(idx++);
    ts.rows.push_back(
        {rep->max_ratio_a, rep->max_ratio_b, rep->calibration, rep->drift});
  }
  em.series(ts, "series.csv");

  RunSummary sum;
  for (const EstimateReport* rep : {&tc.product, &tc.split, &tc.symmetric})
    sum.drift[rep->name] = rep->drift;
  sum.pass = tc.pass;
  return em.finish(sum);
}

int run_growth(const RunConfig& cfg, const Grid& g, const DyadicPartition& part) {
  const double p = param_or(cfg, "p", 4.0);
  const double r = param_or(cfg, "r", 4.0);
  const BesovSpec bar{2.0 / p - 1.0, p, r};
  const double data_norm = param_or(cfg, "data_norm", 1e-3);
  const double threshold = param_or(cfg, "threshold", 1e-2);
  const int n_scales = static_cast<int>(param_or(cfg, "n_scales", 3));
  const double scale0 = param_or(cfg, "scale0", 1.0);
  const double step = param_or(cfg, "scale_step", 2.0);
  Emitter em(cfg);

  std::vector<double> scales;
  for (int i = 0; i < n_scales; ++i)
    scales.push_back(scale0 * std::pow(step, i));

  VectorField u0 = orszag_tang_velocity(g);
  VectorField b0 = orszag_tang_magnetic(g);
  const double a = data_norm / pair_besov(u0, b0, bar, part);
  scale(u0, a);
  scale(b0, a);

  const GrowthReport rep =
      growth_monitor(scales, u0, b0, p, r, bar, threshold, cfg.t_end, cfg.dt,
                     sample_stride(cfg), part);

  TimeSeries ts;
  ts.columns = {"data_norm", "sup_norm"};
  for (std::size_t i = 0; i < rep.scales.size(); ++i) {
    ts.t.push_back(rep.scales[i]);
    ts.rows.push_back({rep.data_norms[i], rep.sup_norms[i]});
  }
  em.series(ts, "series.csv");

  RunSummary sum;
  sum.contraction_factors = rep.slopes;  // log-log secant slopes, ascending scales
  if (!rep.sup_norms.empty()) {
    sum.final_norms["sup_norm_last"] = rep.sup_norms.back();
    sum.final_norms["data_norm_last"] = rep.data_norms.back();
  }
  sum.pass = rep.pass;
  return em.finish(sum);
}

int run_lorentz_check(const RunConfig& cfg, const Grid& g,
                      const DyadicPartition&) {
  const int n_trials = static_cast<int>(param_or(cfg, "n_trials", 200));
  const double p = param_or(cfg, "p", 4.0);
  const double qx = param_or(cfg, "qx", 4.0);
  const int n_a = static_cast<int>(param_or(cfg, "bank_a", 50));
  const int n_b = static_cast<int>(param_or(cfg, "bank_b", 50));
  Emitter em(cfg);

  std::vector<LorentzCheckReport> suite(3);
  std::vector<std::function<void()>> jobs = {
      [&] { suite[0] = lorentz_holder_check(n_trials, cfg.seed); },
      [&] { suite[1] = lorentz_young_check(n_trials, cfg.seed + 1); },
      [&] { suite[2] = lorentz_conv_endpoint_check(n_trials, cfg.seed + 2); }};
  parallel_for(static_cast<int>(jobs.size()), resolved_threads(cfg),
               [&](int i) { jobs[static_cast<std::size_t>(i)](); });

  const EstimateReport heat =
      heat_lorentz_check(g, p, qx, cfg.t_end, n_a, n_b, cfg.seed + 3);
  em.estimate(heat);

  TimeSeries ts;
  ts.columns = {"max_ratio", "max_lhs_rhs", "violations"};
  for (std::size_t i = 0; i < suite.size(); ++i) {
    ts.t.push_back(static_cast<double>(i));
    ts.rows.push_back({suite[i].max_ratio, suite[i].max_lhs_rhs,
                       static_cast<double>(suite[i].violations)});
  }
  em.series(ts, "series.csv");

  RunSummary sum;
  int violations = 0;
  for (const LorentzCheckReport& rep : suite) {
    sum.residuals[rep.name + "_max_ratio"] = rep.max_ratio;
    violations += rep.violations;
  }
  sum.drift[heat.name] = heat.drift;
  sum.pass = violations == 0 && heat.pass;
  return em.finish(sum);
}

}  // namespace

int run_experiment(const RunConfig& cfg) {
  const Grid g(cfg.dim, cfg.n);
  const DyadicPartition part = cfg.custom_bands
                                   ? make_partition(g, cfg.j_min, cfg.j_max)
                                   : make_partition(g);
  const std::string& e = cfg.experiment;
  if (e == "lp-check") return run_lp_check(cfg, g, part);
  if (e == "bony-check") return run_bony_check(cfg, g, part);
  if (e == "norms") return run_norms(cfg, g, part);
  if (e == "solve") return run_solve(cfg, g, part);
  if (e == "picard") return run_picard(cfg, g, part);
  if (e == "smalldata") return run_smalldata(cfg, g, part);
  if (e == "local") return run_local(cfg, g, part);
  if (e == "calderon") return run_calderon(cfg, g, part);
  if (e == "weakstrong") return run_weakstrong(cfg, g, part);
  if (e == "trilinear") return run_trilinear(cfg, g, part);
  if (e == "growth") return run_growth(cfg, g, part);
  if (e == "lorentz-check") return run_lorentz_check(cfg, g, part);
  throw std::invalid_argument("unknown experiment '" + e + "'");
}

}  // namespace bmhd
