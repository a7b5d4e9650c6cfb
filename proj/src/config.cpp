#include "bmhd/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace bmhd {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

double to_double(const std::string& v, const std::string& key) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("config value for '" + key +
                                "' is not a number: " + v);
  }
  if (used != v.size())
    throw std::invalid_argument("config value for '" + key +
                                "' has trailing characters: " + v);
  return x;
}

long long to_int(const std::string& v, const std::string& key) {
  const double x = to_double(v, key);
  const long long i = static_cast<long long>(x);
  if (static_cast<double>(i) != x)
    throw std::invalid_argument("config value for '" + key +
                                "' must be an integer: " + v);
  return i;
}

const std::set<std::string>& known_experiments() {
  static const std::set<std::string> k{
      "lp-check",  "bony-check", "norms",     "solve",
      "picard",    "smalldata",  "local",     "calderon",
      "weakstrong", "trilinear", "growth",    "lorentz-check"};
  return k;
}

void fail_index(const std::string& what) { throw std::invalid_argument(what); }

}  // namespace

bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.dim == b.dim && a.n == b.n && a.custom_bands == b.custom_bands &&
         a.j_min == b.j_min && a.j_max == b.j_max && a.dt == b.dt &&
         a.t_end == b.t_end && a.n_times == b.n_times && a.q == b.q &&
         a.spec.s == b.spec.s && a.spec.p == b.spec.p && a.spec.r == b.spec.r &&
         a.experiment == b.experiment && a.params == b.params &&
         a.calibration == b.calibration && a.seed == b.seed &&
         a.out_dir == b.out_dir && a.threads == b.threads;
}

double param_or(const RunConfig& cfg, const std::string& key, double fallback) {
  const auto it = cfg.params.find(key);
  return it == cfg.params.end() ? fallback : it->second;
}

void validate_config(const RunConfig& cfg) {
  if (cfg.dim != 2 && cfg.dim != 3)
    fail_index("grid dimension must be 2 or 3, got " + std::to_string(cfg.dim));
  if (cfg.n < 16 || (cfg.n & (cfg.n - 1)) != 0)
    fail_index("grid size must be a power of two >= 16, got " +
               std::to_string(cfg.n));
  if (cfg.custom_bands != 0 && cfg.custom_bands != 1)
    fail_index("custom_bands must be 0 or 1");
  if (cfg.custom_bands && cfg.j_min > cfg.j_max)
    fail_index("band range needs j_min <= j_max");
  if (!(cfg.dt > 0.0)) fail_index("time step must be positive");
  if (!(cfg.t_end > 0.0)) fail_index("final time must be positive");
  if (cfg.n_times < 2) fail_index("time mesh needs at least two nodes");
  if (!(cfg.threads >= 0)) fail_index("worker thread count cannot be negative");
  if (!cfg.experiment.empty() && known_experiments().count(cfg.experiment) == 0)
    fail_index("unknown experiment '" + cfg.experiment + "'");

  const double dim = cfg.dim;
  const std::string& e = cfg.experiment;

  if (e == "picard" || e == "smalldata" || e == "local" || e == "solve") {
    if (!(cfg.q > 2.0) || !std::isfinite(cfg.q))
      fail_index("mild working norm needs a time exponent 2 < q < inf; got q = " +
                 fmt(cfg.q));
    // the critical working index: s = dim/p - 1 with s >= 1 - 4/q, the
    // endpoint equality being the default operating point
    const double sp = dim / cfg.spec.p - 1.0;
    if (sp < 1.0 - 4.0 / cfg.q - 1e-12)
      fail_index(
          "mild working norm needs dim/p - 1 >= 1 - 4/q; got dim/p - 1 = " +
          fmt(sp) + " against 1 - 4/q = " + fmt(1.0 - 4.0 / cfg.q));
    if (!(cfg.spec.p >= 1.0) || !(cfg.spec.r >= 1.0))
      fail_index("mild working norm needs p >= 1 and r >= 1");
  }
  if (e == "smalldata") {
    const double p = param_or(cfg, "p", cfg.spec.p);
    const double r = param_or(cfg, "r", cfg.spec.r);
    if (!(2.0 / p + 2.0 / r > 1.0))
      fail_index("small-data persistence needs 2/p + 2/r > 1; got " +
                 fmt(2.0 / p + 2.0 / r));
  }
  if (e == "trilinear") {
    const double r = param_or(cfg, "r", 2.0);
    const double sigma = param_or(cfg, "sigma", 4.0);
    const double eps = param_or(cfg, "eps", 0.05);
    if (!(r >= 2.0) || !std::isfinite(r))
      fail_index("advective interval bound needs 2 <= r < inf; got r = " +
                 fmt(r));
    if (!(sigma > 2.0) || !std::isfinite(sigma))
      fail_index("advective interval bound needs 2 < sigma < inf; got sigma = " +
                 fmt(sigma));
    if (!(dim / r + 2.0 / sigma > 1.0))
      fail_index("advective interval bound needs dim/r + 2/sigma > 1; got " +
                 fmt(dim / r + 2.0 / sigma));
    if (!(eps > 0.0))
      fail_index("dissipation absorption weight must be positive; got eps = " +
                 fmt(eps));
  }
  if (e == "weakstrong") {
    const double p = param_or(cfg, "p", 2.0);
    const double r = param_or(cfg, "r", 3.0);
    if (!(p >= 1.0) || !std::isfinite(p) || !(r > 2.0) || !std::isfinite(r))
      fail_index("stability envelope needs 1 <= p < inf and 2 < r < inf; got p = " +
                 fmt(p) + ", r = " + fmt(r));
    if (!(dim / (2.0 * p) + 2.0 / r > 1.0))
      fail_index("stability envelope needs dim/(2p) + 2/r > 1; got " +
                 fmt(dim / (2.0 * p) + 2.0 / r));
  }
  if (e == "calderon") {
    const double p = param_or(cfg, "p", 2.0);
    const double r = param_or(cfg, "r", 3.0);
    if (!(p >= 1.0) || !(r >= 1.0))
      fail_index("energy envelope needs p >= 1 and r >= 1; got p = " + fmt(p) +
                 ", r = " + fmt(r));
    if (!(2.0 / p + 2.0 / r > 1.0))
      fail_index("energy envelope needs 2/p + 2/r > 1; got " +
                 fmt(2.0 / p + 2.0 / r));
  }
  if (e == "growth") {
    const double p = param_or(cfg, "p", 4.0);
    const double r = param_or(cfg, "r", 4.0);
    if (!(p > 2.0) || !std::isfinite(p))
      fail_index("large-data split needs 2 < p < inf; got p = " + fmt(p));
    if (!(r >= 1.0) || !std::isfinite(r))
      fail_index("large-data split needs 1 <= r < inf; got r = " + fmt(r));
  }
  if (e == "lorentz-check") {
    const double p = param_or(cfg, "p", 4.0);
    const double qx = param_or(cfg, "qx", 4.0);
    if (!(p > 1.0))
      fail_index("heat interval bound needs a Lorentz exponent p > 1; got " +
                 fmt(p));
    if (std::abs(2.0 / p + dim / qx - dim / 2.0) > 1e-9)
      fail_index("heat interval bound needs 2/p + dim/q = dim/2; got 2/p + dim/q = " +
                 fmt(2.0 / p + dim / qx));
  }
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t cut = line.find_first_of("#;");
    if (cut != std::string::npos) line = line.substr(0, cut);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("config line " + std::to_string(line_no) +
                                    ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": empty key or value");
    const std::string path = section + "." + key;
    if (section != "params" && section != "calibration" && !seen.insert(path).second)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": duplicate key '" + path + "'");

    if (section == "grid") {
      if (key == "dim") cfg.dim = static_cast<int>(to_int(value, path));
      else if (key == "n") cfg.n = static_cast<int>(to_int(value, path));
      else throw std::invalid_argument("unknown configuration key '" + path + "'");
    } else if (section == "bands") {
      if (key == "custom") cfg.custom_bands = static_cast<int>(to_int(value, path));
      else if (key == "j_min") cfg.j_min = static_cast<int>(to_int(value, path));
      else if (key == "j_max") cfg.j_max = static_cast<int>(to_int(value, path));
      else throw std::invalid_argument("unknown configuration key '" + path + "'");
    } else if (section == "solver") {
      if (key == "dt") cfg.dt = to_double(value, path);
      else if (key == "t_end") cfg.t_end = to_double(value, path);
      else if (key == "n_times") cfg.n_times = static_cast<int>(to_int(value, path));
      else if (key == "q") cfg.q = to_double(value, path);
      else if (key == "s") cfg.spec.s = to_double(value, path);
      else if (key == "p") cfg.spec.p = to_double(value, path);
      else if (key == "r") cfg.spec.r = to_double(value, path);
      else throw std::invalid_argument("unknown configuration key '" + path + "'");
    } else if (section == "experiment") {
      if (key == "name") cfg.experiment = value;
      else throw std::invalid_argument("unknown configuration key '" + path + "'");
    } else if (section == "params") {
      if (!cfg.params.emplace(key, to_double(value, path)).second)
        throw std::invalid_argument("config line " + std::to_string(line_no) +
                                    ": duplicate key '" + path + "'");
    } else if (section == "calibration") {
      if (!cfg.calibration.emplace(key, to_double(value, path)).second)
        throw std::invalid_argument("config line " + std::to_string(line_no) +
                                    ": duplicate key '" + path + "'");
    } else if (section == "run") {
      if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_int(value, path));
      else if (key == "out_dir") cfg.out_dir = value;
      else if (key == "threads") cfg.threads = static_cast<int>(to_int(value, path));
      else throw std::invalid_argument("unknown configuration key '" + path + "'");
    } else {
      throw std::invalid_argument("unknown configuration section '" + section +
                                  "'");
    }
  }
  validate_config(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string emit_config(const RunConfig& cfg) {
  std::ostringstream os;
  os << "[grid]\n";
  os << "dim = " << cfg.dim << "\n";
  os << "n = " << cfg.n << "\n";
  os << "[bands]\n";
  os << "custom = " << cfg.custom_bands << "\n";
  os << "j_min = " << cfg.j_min << "\n";
  os << "j_max = " << cfg.j_max << "\n";
  os << "[solver]\n";
  os << "dt = " << fmt(cfg.dt) << "\n";
  os << "t_end = " << fmt(cfg.t_end) << "\n";
  os << "n_times = " << cfg.n_times << "\n";
  os << "q = " << fmt(cfg.q) << "\n";
  os << "s = " << fmt(cfg.spec.s) << "\n";
  os << "p = " << fmt(cfg.spec.p) << "\n";
  os << "r = " << fmt(cfg.spec.r) << "\n";
  if (!cfg.experiment.empty()) {
    os << "[experiment]\n";
    os << "name = " << cfg.experiment << "\n";
  }
  if (!cfg.params.empty()) {
    os << "[params]\n";
    for (const auto& [k, v] : cfg.params) os << k << " = " << fmt(v) << "\n";
  }
  if (!cfg.calibration.empty()) {
    os << "[calibration]\n";
    for (const auto& [k, v] : cfg.calibration) os << k << " = " << fmt(v) << "\n";
  }
  os << "[run]\n";
  os << "seed = " << cfg.seed << "\n";
  os << "out_dir = " << cfg.out_dir << "\n";
  os << "threads = " << cfg.threads << "\n";
  return os.str();
}

std::uint64_t config_hash(const RunConfig& cfg) {
  // output location and worker count are run environment, not experiment
  // identity: two runs differing only there must produce identical bytes
  RunConfig id = cfg;
  id.out_dir = ".";
  id.threads = 0;
  const std::string text = emit_config(id);
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a offset basis
  for (const unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;  // FNV-1a prime
  }
  return h;
}

std::string config_hash_hex(const RunConfig& cfg) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(config_hash(cfg)));
  return buf;
}

}  // namespace bmhd
