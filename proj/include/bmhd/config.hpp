#pragma once
#include <cstdint>
#include <map>
#include <string>

#include "bmhd/norms.hpp"

namespace bmhd {

// Flat sectioned key = value experiment description.  Unset keys keep these
// defaults; every index set is checked at load time against the hypotheses of
// the bound the named experiment feeds, so a bad run fails before it starts.
struct RunConfig {
  // [grid]
  int dim = 2;
  int n = 32;
  // [bands] — 1 enables the explicit range, otherwise the partition defaults
  int custom_bands = 0;
  int j_min = -2;
  int j_max = 0;
  // [solver]
  double dt = 1e-3;
  double t_end = 1.0;
  int n_times = 9;
  double q = 4.0;
  BesovSpec spec{0.0, 2.0, 2.0};
  // [experiment]
  std::string experiment;
  std::map<std::string, double> params;
  // [calibration] — named constants frozen from held-out banks, never in code
  std::map<std::string, double> calibration;
  // [run]
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  int threads = 0;  // 0 = inherit the environment's worker count
};

bool operator==(const RunConfig& a, const RunConfig& b);
inline bool operator!=(const RunConfig& a, const RunConfig& b) { return !(a == b); }

// Parse + validate from text or a file; throws with the offending line or the
// violated index inequality spelled out.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Canonical serialization: fixed section and key order, full-precision
// numbers; load(emit(cfg)) == cfg exactly.
std::string emit_config(const RunConfig& cfg);

// FNV-1a over the canonical serialization with the output directory and
// thread count masked off, so the hash identifies the experiment content and
// names every output file of a run.
std::uint64_t config_hash(const RunConfig& cfg);
std::string config_hash_hex(const RunConfig& cfg);

// Fetch a free parameter with a default.
double param_or(const RunConfig& cfg, const std::string& key, double fallback);

// Validation used by parse/load; public so the CLI can re-check after
// command-line overrides.
void validate_config(const RunConfig& cfg);

}  // namespace bmhd
