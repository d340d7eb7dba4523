// koppel: scenario runner for the weighted Koppelman operator library.
//
// One scenario per invocation.  Reports are deterministic JSON documents
// (timing segregated in a "meta" block); optional CSV plot data.  Exit
// codes: 0 all checks pass, 1 a check failed, 2 usage/config error,
// 3 numerical divergence or exhausted accuracy budget.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "koppel/koppel.hpp"

namespace {

std::string resolve_out_path(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  const char* base = std::getenv("KOPPEL_OUT_DIR");
  if (base && *base) return (std::filesystem::path(base) / p).string();
  return path;
}

void write_file(const std::string& path, const std::string& content) {
  std::string full = resolve_out_path(path);
  std::ofstream out(full, std::ios::binary);
  if (!out) throw koppel::Error("cannot write '" + full + "'");
  out << content;
}

struct Common {
  std::string config_file;
  std::string report_path;
  std::string csv_path;
  bool quiet = false;
};

void add_kv_flag(CLI::App* cmd, koppel::ScenarioConfig& cfg, const std::string& key,
                 const std::string& desc) {
  cmd->add_option_function<std::string>(
      "--" + key, [&cfg, key](const std::string& v) { cfg.set(key, v); }, desc);
}

int finish(const koppel::RunReport& rep, const Common& common) {
  std::string doc = koppel::report_json(rep, /*include_meta=*/true);
  if (!common.report_path.empty()) write_file(common.report_path, doc);
  if (!common.csv_path.empty()) write_file(common.csv_path, koppel::plot_csv(rep));
  if (!common.quiet) {
    std::cout << doc;
    for (const koppel::Check& c : rep.checks)
      std::cerr << (c.pass ? "[pass] " : "[FAIL] ") << c.name
                << "  value=" << koppel::fmt_double(c.value)
                << " tol=" << koppel::fmt_double(c.tol) << "\n";
  }
  return rep.all_pass() || rep.checks.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted Koppelman integral operators on planar domains and singular curves"};
  app.require_subcommand(1);

  Common common;
  app.add_option("--config", common.config_file, "key-value config file");
  app.add_option("--report", common.report_path, "write the JSON report here");
  app.add_option("--csv", common.csv_path, "write CSV plot data here");
  app.add_flag("--quiet", common.quiet, "suppress stdout report");

  koppel::ScenarioConfig cfg;

  struct SubSpec {
    const char* name;
    const char* desc;
    std::vector<std::pair<const char*, const char*>> keys;
  };
  const std::vector<SubSpec> subs = {
      {"verify-koppelman", "pointwise residuals of the Koppelman identity",
       {{"preset", "disc-bump | disc-dzbar | disc-holo | p-holo | cusp"},
        {"grid", "grid size, e.g. 5x5"},
        {"tol", "acceptance tolerance"},
        {"quad_tol", "quadrature tolerance"},
        {"fd_step", "finite-difference step"}}},
      {"cusp-classify", "moment verdicts vs the semigroup oracle",
       {{"r", "curve exponent r"}, {"s", "curve exponent s"}, {"kmax", "largest monomial"}}},
      {"moment-check", "moment residues of a Laurent phi on the cusp",
       {{"r", "curve exponent r"}, {"s", "curve exponent s"}, {"phi", "e.g. \"tau\" or \"2*tau^3-1\""}}},
      {"hartogs", "extension across a compact set",
       {{"variant", "cusp | ball2"},
        {"phi", "cusp variant: Laurent phi"},
        {"slow", "1 enables the ball2 slow suite"},
        {"tol", "acceptance tolerance"}}},
      {"structure-form", "ambient gamma pullback vs the symbolic density",
       {{"r", "curve exponent r"},
        {"s", "curve exponent s"},
        {"radii", "comma-separated sample radii"},
        {"tol", "relative tolerance"},
        {"samples", "points per circle"}}},
      {"pv-convergence", "principal-value route agreement",
       {{"case", "pl1d | cusp-moments | synthetic"}, {"tol", "tolerance"}}},
      {"asymptotic-probe", "fitted blow-up exponent of K phi",
       {{"case", "disc | cusp"}, {"quad_tol", "quadrature tolerance"}}},
      {"weight-audit", "weight contracts and Hefer exactness",
       {{"pairs", "sample pairs"},
        {"tol", "contract tolerance"},
        {"hefer_tol", "Hefer tolerance"},
        {"seed", "sampling seed"},
        {"fd_step", "finite-difference step"}}}};

  for (const SubSpec& s : subs) {
    CLI::App* cmd = app.add_subcommand(s.name, s.desc);
    for (const auto& [key, desc] : s.keys) add_kv_flag(cmd, cfg, key, desc);
    cmd->callback([&cfg, name = std::string(s.name)]() { cfg.scenario = name; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (!common.config_file.empty()) {
      std::ifstream in(common.config_file);
      if (!in) throw koppel::UsageError("cannot read config '" + common.config_file + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      koppel::ScenarioConfig file_cfg = koppel::ScenarioConfig::from_text(ss.str());
      // flags override file values
      for (const auto& [k, v] : cfg.kv) file_cfg.set(k, v);
      if (!cfg.scenario.empty()) file_cfg.scenario = cfg.scenario;
      if (file_cfg.scenario.empty())
        throw koppel::UsageError("config: no scenario selected");
      cfg = file_cfg;
    }
    koppel::RunReport rep = koppel::run_scenario(cfg);
    return finish(rep, common);
  } catch (const koppel::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const koppel::DivergenceError& e) {
    std::cerr << "divergence: " << e.what() << "\n";
    return 3;
  } catch (const koppel::AccuracyError& e) {
    std::cerr << "accuracy budget exhausted: " << e.what() << "\n";
    return 3;
  } catch (const koppel::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
