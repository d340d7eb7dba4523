#pragma once

// Run reports: named checks with stored tolerances, a config echo, optional
// gridded plot data, and deterministic serialization.  Pass/fail is always
// computed from the stored tolerance.  Timing lives in a separate metadata
// block that comparisons exclude.

#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"
#include "types.hpp"

namespace koppel {

inline constexpr const char* kArtifactVersion = "0.1.0";

struct Check {
  std::string name;
  double value = 0;  // measured deviation / residual
  double tol = 0;
  bool pass = false;
};

struct RunReport {
  std::string scenario;
  std::vector<std::pair<std::string, std::string>> config;  // echoed key=value
  std::vector<Check> checks;
  std::vector<std::pair<std::string, std::string>> info;
  std::vector<std::array<double, 5>> plot;  // re z, im z, re val, im val, residual
  double runtime_sec = 0;

  void check(const std::string& name, double value, double tol) {
    checks.push_back({name, value, tol, value < tol});
  }
  void check_flag(const std::string& name, bool ok) {
    checks.push_back({name, ok ? 0.0 : 1.0, 0.5, ok});
  }
  void note(const std::string& key, const std::string& val) {
    info.emplace_back(key, val);
  }
  bool all_pass() const {
    for (const Check& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }
};

inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}
inline std::string fmt_cpx(Cpx v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.12g%+.12gi", v.real(), v.imag());
  return buf;
}

inline std::string report_json(const RunReport& r, bool include_meta) {
  nlohmann::ordered_json j;
  j["artifact_version"] = kArtifactVersion;
  j["scenario"] = r.scenario;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.config) cfg[k] = v;
  j["config"] = cfg;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  int npass = 0;
  for (const Check& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"value", c.value},
                      {"tol", c.tol},
                      {"pass", c.pass}});
    if (c.pass) ++npass;
  }
  j["checks"] = checks;
  nlohmann::ordered_json info = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.info) info[k] = v;
  j["info"] = info;
  j["summary"] = {{"pass", npass},
                  {"fail", static_cast<int>(r.checks.size()) - npass}};
  if (include_meta) j["meta"] = {{"runtime_sec", r.runtime_sec}};
  return j.dump(2) + "\n";
}

// CSV plot data: header row then one row per grid point, deterministic order.
inline std::string plot_csv(const RunReport& r) {
  std::string out = "re_z,im_z,re_val,im_val,residual\n";
  char buf[200];
  for (const auto& row : r.plot) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", row[0], row[1],
                  row[2], row[3], row[4]);
    out += buf;
  }
  return out;
}

}  // namespace koppel
