// Harness I/O: config parsing with load-time hypothesis checks, canonical
// serialization and hashing, binary checkpoints, and the deterministic
// CSV/JSON report emitters.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>

#include "bmhd/checkpoint.hpp"
#include "bmhd/config.hpp"
#include "bmhd/generate.hpp"
#include "bmhd/report.hpp"
#include "json.hpp"

using namespace bmhd;

namespace {

std::string tmp_path(const std::string& stem) { return "/tmp/bmhd_io_" + stem; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(bool(in));
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

MHDState sample_state(int n, std::uint64_t seed) {
  const Grid g(2, n);
  Rng rng(seed);
  MHDState s(g);
  s.u = random_divfree_field(g, 1.0, 1.5, rng);
  s.b = random_divfree_field(g, 1.0, 1.5, rng);
  s.t = 0.625;
  return s;
}

}  // namespace

// ---------------------------------------------------------------- config ---

TEST_CASE("config: defaults survive an empty document") {
  const RunConfig cfg = parse_config("");
  CHECK(cfg.dim == 2);
  CHECK(cfg.n == 32);
  CHECK(cfg.dt == 1e-3);
  CHECK(cfg.n_times == 9);
  CHECK(cfg.q == 4.0);
  CHECK(cfg.spec.p == 2.0);
  CHECK(cfg.experiment.empty());
  CHECK(cfg.seed == 1);
  CHECK(cfg.threads == 0);
}

TEST_CASE("config: round trip through the canonical serialization is exact") {
  RunConfig cfg;
  cfg.dim = 2;
  cfg.n = 64;
  cfg.custom_bands = 1;
  cfg.j_min = -1;
  cfg.j_max = 2;
  cfg.dt = 0.48e-3;  // not representable in short decimal, exercises %.17g
  cfg.t_end = 0.7;
  cfg.n_times = 33;
  cfg.q = 3.0;
  cfg.spec = BesovSpec{-1.0 / 3.0, 3.0, 1.0};
  cfg.experiment = "picard";
  cfg.params = {{"k_peak", 1.0}, {"eps0", 1.2e-3}};
  cfg.calibration = {{"c_cal", 7.25}};
  cfg.seed = 9001;
  cfg.out_dir = "out/run-a";
  cfg.threads = 4;

  const std::string text = emit_config(cfg);
  const RunConfig back = parse_config(text);
  CHECK(back == cfg);
  CHECK(emit_config(back) == text);

  // hash is a pure function of the experiment content
  CHECK(config_hash(back) == config_hash(cfg));
  RunConfig other = cfg;
  other.seed = 9002;
  CHECK(config_hash(other) != config_hash(cfg));
  CHECK(config_hash_hex(cfg).size() == 16);

  // run environment (output directory, worker count) is not identity
  RunConfig env = cfg;
  env.out_dir = "elsewhere";
  env.threads = 12;
  CHECK(config_hash(env) == config_hash(cfg));
}

TEST_CASE("config: file loading and comment/whitespace handling") {
  const std::string path = tmp_path("cfg.ini");
  {
    std::ofstream os(path);
    os << "# header comment\n"
       << "[grid]\n"
       << "dim = 2   ; trailing note\n"
       << "n = 64\n"
       << "\n"
       << "[solver]\n"
       << "  dt   =   2e-3\n"
       << "[run]\n"
       << "seed = 17\n";
  }
  const RunConfig cfg = load_config(path);
  CHECK(cfg.n == 64);
  CHECK(cfg.dt == 2e-3);
  CHECK(cfg.seed == 17);
  CHECK_THROWS_WITH_AS(load_config(tmp_path("missing.ini")),
                       doctest::Contains("cannot open config file"),
                       std::runtime_error);
}

TEST_CASE("config: malformed documents are rejected with line context") {
  CHECK_THROWS_WITH_AS(parse_config("[grid]\nwidth = 3\n"),
                       doctest::Contains("unknown configuration key 'grid.width'"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config("[nowhere]\nx = 1\n"),
                       doctest::Contains("unknown configuration section"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config("[grid]\ndim 2\n"),
                       doctest::Contains("expected key = value"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config("[grid]\nn = 32\nn = 64\n"),
                       doctest::Contains("duplicate key 'grid.n'"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config("[grid]\nn = banana\n"),
                       doctest::Contains("not a number"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config("[solver]\nn_times = 2.5\n"),
                       doctest::Contains("must be an integer"),
                       std::invalid_argument);
}

TEST_CASE("config: structural limits are enforced at load") {
  CHECK_THROWS_WITH_AS(parse_config("[grid]\nn = 24\n"),
                       doctest::Contains("power of two"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config("[grid]\ndim = 4\n"),
                       doctest::Contains("dimension must be 2 or 3"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config("[solver]\ndt = -1e-3\n"),
                       doctest::Contains("time step must be positive"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config("[solver]\nn_times = 1\n"),
                       doctest::Contains("at least two nodes"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config("[experiment]\nname = warp\n"),
                       doctest::Contains("unknown experiment"),
                       std::invalid_argument);
}

TEST_CASE("config: index hypotheses are evaluated when a run is described") {
  // sigma = 2 sits outside the advective interval bound's open range
  CHECK_THROWS_WITH_AS(
      parse_config("[experiment]\nname = trilinear\n[params]\nsigma = 2\n"),
      doctest::Contains("2 < sigma < inf"), std::invalid_argument);
  // r below 2 fails the companion closed condition
  CHECK_THROWS_WITH_AS(
      parse_config("[experiment]\nname = trilinear\n[params]\nr = 1.5\n"),
      doctest::Contains("2 <= r < inf"), std::invalid_argument);
  // arithmetic on the joint condition: dim/r + 2/sigma must exceed 1
  CHECK_THROWS_WITH_AS(parse_config("[experiment]\nname = trilinear\n[params]\n"
                                    "r = 4\nsigma = 8\n"),
                       doctest::Contains("dim/r + 2/sigma > 1"),
                       std::invalid_argument);

  // stability envelope: p = 1, r = 3 satisfies 2/(2*1) + 2/3 > 1 and loads
  const RunConfig ok = parse_config(
      "[experiment]\nname = weakstrong\n[params]\np = 1\nr = 3\n");
  CHECK(ok.experiment == "weakstrong");
  CHECK_THROWS_WITH_AS(parse_config("[experiment]\nname = weakstrong\n[params]\n"
                                    "p = 4\nr = 4\n"),
                       doctest::Contains("dim/(2p) + 2/r > 1"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config("[experiment]\nname = weakstrong\n[params]\n"
                                    "p = 2\nr = 2\n"),
                       doctest::Contains("2 < r < inf"), std::invalid_argument);

  // mild working norm: q must exceed 2 strictly, and the regularity floor
  // dim/p - 1 >= 1 - 4/q admits equality (q = 4, p = 2 in dimension 2)
  CHECK_THROWS_WITH_AS(parse_config("[experiment]\nname = picard\n[solver]\nq = 2\n"),
                       doctest::Contains("2 < q < inf"), std::invalid_argument);
  CHECK_NOTHROW(parse_config("[experiment]\nname = picard\n[solver]\nq = 4\np = 2\n"));
  CHECK_THROWS_WITH_AS(
      parse_config("[experiment]\nname = picard\n[solver]\nq = 8\np = 8\n"),
      doctest::Contains("dim/p - 1 >= 1 - 4/q"), std::invalid_argument);

  // persistence indices
  CHECK_THROWS_WITH_AS(parse_config("[experiment]\nname = smalldata\n[params]\n"
                                    "p = 4\nr = 4\n"),
                       doctest::Contains("2/p + 2/r > 1"), std::invalid_argument);

  // split study needs p strictly above 2
  CHECK_THROWS_WITH_AS(
      parse_config("[experiment]\nname = growth\n[params]\np = 2\n"),
      doctest::Contains("2 < p < inf"), std::invalid_argument);

  // the recombination's envelope runs on the wider energy-index set
  CHECK_NOTHROW(
      parse_config("[experiment]\nname = calderon\n[params]\np = 2\nr = 3\n"));
  CHECK_THROWS_WITH_AS(
      parse_config("[experiment]\nname = calderon\n[params]\np = 4\nr = 4\n"),
      doctest::Contains("2/p + 2/r > 1"), std::invalid_argument);

  // heat interval bound ties the Lorentz exponent to the scaling line
  CHECK_THROWS_WITH_AS(parse_config("[experiment]\nname = lorentz-check\n"
                                    "[params]\np = 4\nqx = 3\n"),
                       doctest::Contains("2/p + dim/q = dim/2"),
                       std::invalid_argument);
  CHECK_NOTHROW(parse_config("[experiment]\nname = lorentz-check\n"
                             "[params]\np = 4\nqx = 4\n"));
}

// ----------------------------------------------------------- checkpoints ---

TEST_CASE("checkpoint: round trip is bit identical") {
  const MHDState s = sample_state(32, 404);
  const std::string path = tmp_path("state.chk");
  save_checkpoint(path, s);
  const MHDState back = load_checkpoint(path);

  CHECK(back.grid().dim == 2);
  CHECK(back.grid().n == 32);
  CHECK(back.t == s.t);
  for (int i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < s.u[i].c.size(); ++k) {
      // bitwise equality, not approximate: the format stores raw doubles
      CHECK(back.u[i].c[k] == s.u[i].c[k]);
      CHECK(back.b[i].c[k] == s.b[i].c[k]);
    }

  // re-saving the loaded state reproduces the file byte for byte
  const std::string path2 = tmp_path("state2.chk");
  save_checkpoint(path2, back);
  CHECK(slurp(path) == slurp(path2));
}

TEST_CASE("checkpoint: corrupt files are reported by failure mode") {
  const MHDState s = sample_state(16, 12);
  const std::string path = tmp_path("corrupt.chk");
  save_checkpoint(path, s);
  const std::string good = slurp(path);

  {  // wrong magic
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    std::string bad = good;
    bad[0] = 'X';
    os << bad;
  }
  CHECK_THROWS_WITH_AS(load_checkpoint(path), doctest::Contains("bad magic"),
                       std::runtime_error);

  {  // cut mid-coefficient
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    os << good.substr(0, good.size() / 2);
  }
  CHECK_THROWS_WITH_AS(load_checkpoint(path), doctest::Contains("truncated"),
                       std::runtime_error);

  {  // extra bytes after the last field
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    os << good << "zz";
  }
  CHECK_THROWS_WITH_AS(load_checkpoint(path), doctest::Contains("trailing"),
                       std::runtime_error);

  CHECK_THROWS_WITH_AS(load_checkpoint(tmp_path("nope.chk")),
                       doctest::Contains("cannot open"), std::runtime_error);
}

// ---------------------------------------------------------------- reports ---

TEST_CASE("report: norm table and time series have the documented shape") {
  const std::string csv = norm_report_csv(
      {{"besov", -0.5, 2.0, 2.0, 0.0, 1.25}, {"l4", 0.0, 4.0, 0.0, 0.0, 0.5}});
  CHECK(csv.substr(0, csv.find('\n')) == "norm_name,s,p,r,rho,value");
  CHECK(csv.find("besov,-0.5,2,2,0,1.25") != std::string::npos);
  CHECK(csv.find("l4,0,4,0,0,0.5") != std::string::npos);

  TimeSeries ts;
  ts.columns = {"energy", "dissipation"};
  ts.t = {0.0, 0.5};
  ts.rows = {{1.0, 0.25}, {0.75, 0.125}};
  const std::string tcsv = time_series_csv(ts);
  CHECK(tcsv.substr(0, tcsv.find('\n')) == "t,energy,dissipation");
  CHECK(tcsv.find("0.5,0.75,0.125") != std::string::npos);

  ts.rows.pop_back();
  CHECK_THROWS_AS(time_series_csv(ts), std::invalid_argument);
}

TEST_CASE("report: estimate and summary JSON carry the required keys") {
  EstimateReport rep;
  rep.name = "advective-product";
  rep.indices = "r=2 sigma=4";
  rep.n_trials_a = 150;
  rep.n_trials_b = 150;
  rep.max_ratio_a = 0.8;
  rep.max_ratio_b = 0.75;
  rep.calibration = 1.0;
  rep.drift = 0.0625;
  rep.pass = true;
  const auto j = nlohmann::json::parse(estimate_json(rep));
  CHECK(j.at("lemma") == "advective-product");
  CHECK(j.at("indices") == "r=2 sigma=4");
  CHECK(j.at("n_trials") == 300);
  CHECK(j.at("max_ratio") == 0.8);
  CHECK(j.at("calibration_constant") == 1.0);
  CHECK(j.at("drift") == 0.0625);
  CHECK(j.at("pass") == true);

  RunSummary sum;
  sum.config_hash = "00ff";
  sum.final_norms = {{"energy", 0.5}};
  sum.contraction_factors = {0.4, 0.2};
  sum.residuals = {{"mild", 1e-9}};
  sum.drift = {{"advective-product", 0.0625}};
  sum.pass = true;
  const auto sj = nlohmann::json::parse(summary_json(sum));
  CHECK(sj.at("config_hash") == "00ff");
  CHECK(sj.at("final_norms").at("energy") == 0.5);
  CHECK(sj.at("contraction_factors").size() == 2);
  CHECK(sj.at("residuals").at("mild") == 1e-9);
  CHECK(sj.at("pass") == true);
}

TEST_CASE("report: repeated emission is byte identical") {
  EstimateReport rep;
  rep.name = "heat-lorentz";
  rep.indices = "p=4 q=4";
  rep.n_trials_a = 50;
  rep.n_trials_b = 50;
  rep.max_ratio_a = 1.0 / 3.0;
  rep.max_ratio_b = 0.3;
  rep.calibration = 5.0 / 12.0;
  rep.drift = 0.1;
  rep.pass = true;
  CHECK(estimate_json(rep) == estimate_json(rep));

  const std::vector<NormRow> rows{{"besov", 1.0 / 3.0, 2, 2, 0, 0.1}};
  CHECK(norm_report_csv(rows) == norm_report_csv(rows));

  const std::string path = tmp_path("report.csv");
  write_text_file(path, norm_report_csv(rows));
  CHECK(slurp(path) == norm_report_csv(rows));
  CHECK_THROWS_WITH_AS(write_text_file("/nonexistent-dir/x.csv", "x"),
                       doctest::Contains("cannot open output file"),
                       std::runtime_error);
}
