#include "bmhd/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace bmhd {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

std::string norm_report_csv(const std::vector<NormRow>& rows) {
  std::string out = "norm_name,s,p,r,rho,value\n";
  for (const NormRow& row : rows) {
    out += row.norm_name;
    for (const double v : {row.s, row.p, row.r, row.rho, row.value})
      out += "," + fmt(v);
    out += "\n";
  }
  return out;
}

std::string time_series_csv(const TimeSeries& ts) {
  if (ts.t.size() != ts.rows.size())
    throw std::invalid_argument("time series has " + std::to_string(ts.t.size()) +
                                " time nodes but " + std::to_string(ts.rows.size()) +
                                " rows");
  std::string out = "t";
  for (const std::string& c : ts.columns) out += "," + c;
  out += "\n";
  for (std::size_t i = 0; i < ts.t.size(); ++i) {
    if (ts.rows[i].size() != ts.columns.size())
      throw std::invalid_argument("time series row " + std::to_string(i) +
                                  " width does not match the column list");
    out += fmt(ts.t[i]);
    for (const double v : ts.rows[i]) out += "," + fmt(v);
    out += "\n";
  }
  return out;
}

std::string estimate_json(const EstimateReport& rep) {
  nlohmann::ordered_json j;
  j["lemma"] = rep.name;
  j["indices"] = rep.indices;
  j["n_trials"] = rep.n_trials_a + rep.n_trials_b;
  j["max_ratio"] = rep.max_ratio_b > rep.max_ratio_a ? rep.max_ratio_b
                                                     : rep.max_ratio_a;
  j["calibration_constant"] = rep.calibration;
  j["max_ratio_calibration"] = rep.max_ratio_a;
  j["max_ratio_holdout"] = rep.max_ratio_b;
  j["drift"] = rep.drift;
  j["pass"] = rep.pass;
  return j.dump(2) + "\n";
}

std::string summary_json(const RunSummary& s) {
  nlohmann::ordered_json j;
  j["config_hash"] = s.config_hash;
  j["final_norms"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : s.final_norms) j["final_norms"][k] = v;
  j["contraction_factors"] = s.contraction_factors;
  j["residuals"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : s.residuals) j["residuals"][k] = v;
  j["drift"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : s.drift) j["drift"][k] = v;
  j["pass"] = s.pass;
  return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open output file for writing: " + path);
  os.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!os) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace bmhd
