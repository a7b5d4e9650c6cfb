#pragma once
#include <map>
#include <string>
#include <vector>

#include "bmhd/estimates.hpp"

namespace bmhd {

// Output side of a run: every emitter is deterministic — identical inputs
// serialize to identical bytes, so repeated runs with one config and seed can
// be diffed file-for-file.

// One named norm evaluation.  Indices that a norm does not use stay 0.
struct NormRow {
  std::string norm_name;
  double s = 0.0, p = 0.0, r = 0.0, rho = 0.0;
  double value = 0.0;
};
std::string norm_report_csv(const std::vector<NormRow>& rows);

// Sampled time series: first column is always t, the rest are named norms.
struct TimeSeries {
  std::vector<std::string> columns;            // without the leading t
  std::vector<double> t;
  std::vector<std::vector<double>> rows;       // rows[i].size() == columns.size()
};
std::string time_series_csv(const TimeSeries& ts);

// Two-phase protocol result as a JSON object string.
std::string estimate_json(const EstimateReport& rep);

// End-of-run digest.
struct RunSummary {
  std::string config_hash;
  std::map<std::string, double> final_norms;
  std::vector<double> contraction_factors;
  std::map<std::string, double> residuals;
  std::map<std::string, double> drift;
  bool pass = false;
};
std::string summary_json(const RunSummary& s);

// Atomic-enough text write: throws with the path on any failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace bmhd
