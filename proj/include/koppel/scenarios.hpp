#pragma once

// Named experiment runners behind the CLI and the acceptance suite.  Every
// scenario uses fixed, documented point sets and seeds, so identical configs
// produce byte-identical reports.

#include <chrono>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "report.hpp"
#include "solver.hpp"

namespace koppel {

// ---------------------------------------------------------------------------
// configuration

struct ScenarioConfig {
  std::string scenario;
  std::map<std::string, std::string> kv;

  void set(const std::string& k, const std::string& v) { kv[k] = v; }
  bool has(const std::string& k) const { return kv.count(k) != 0; }
  std::string get(const std::string& k, const std::string& dflt) const {
    auto it = kv.find(k);
    return it == kv.end() ? dflt : it->second;
  }
  double getd(const std::string& k, double dflt) const {
    auto it = kv.find(k);
    if (it == kv.end()) return dflt;
    try {
      return std::stod(it->second);
    } catch (...) {
      throw UsageError("config: bad numeric value for '" + k + "'");
    }
  }
  int geti(const std::string& k, int dflt) const {
    auto it = kv.find(k);
    if (it == kv.end()) return dflt;
    try {
      return std::stoi(it->second);
    } catch (...) {
      throw UsageError("config: bad integer value for '" + k + "'");
    }
  }

  // Key-value file with optional [sections]; keys inside [run] keep their
  // bare names, other sections prefix "section.".  '#' starts a comment.
  static ScenarioConfig from_text(const std::string& text) {
    ScenarioConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      auto notspace = [](unsigned char c) { return !std::isspace(c); };
      line.erase(line.begin(), std::find_if(line.begin(), line.end(), notspace));
      while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
        line.pop_back();
      if (line.empty()) continue;
      if (line.front() == '[' && line.back() == ']') {
        section = line.substr(1, line.size() - 2);
        continue;
      }
      auto eq = line.find('=');
      if (eq == std::string::npos)
        throw UsageError("config: expected 'key = value' at line " +
                         std::to_string(lineno));
      std::string k = line.substr(0, eq), v = line.substr(eq + 1);
      auto trim = [&](std::string& s) {
        s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
          s.pop_back();
      };
      trim(k);
      trim(v);
      if (k.empty()) throw UsageError("config: empty key at line " + std::to_string(lineno));
      if (!section.empty() && section != "run") k = section + "." + k;
      if (k == "scenario")
        cfg.scenario = v;
      else
        cfg.set(k, v);
    }
    return cfg;
  }
};

inline void reject_unknown_keys(const ScenarioConfig& cfg,
                                const std::set<std::string>& allowed) {
  for (const auto& [k, v] : cfg.kv) {
    (void)v;
    if (!allowed.count(k))
      throw UsageError("config: unknown key '" + k + "' for scenario '" +
                       cfg.scenario + "'");
  }
}

// ---------------------------------------------------------------------------
// small parsers

inline std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stod(tok));
  }
  if (out.empty()) throw UsageError("expected a comma-separated number list");
  return out;
}

inline std::pair<int, int> parse_grid(const std::string& s) {
  auto x = s.find('x');
  if (x == std::string::npos) throw UsageError("grid: expected NxM, e.g. 5x5");
  int a = std::stoi(s.substr(0, x));
  int b = std::stoi(s.substr(x + 1));
  if (a < 1 || b < 1) throw UsageError("grid: dimensions must be positive");
  return {a, b};
}

// Laurent expressions of the shape "2*tau^3 - tau + 1".
inline LaurentPoly parse_laurent(const std::string& expr) {
  LaurentPoly out;
  std::string s;
  for (char c : expr)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw UsageError("phi: empty expression");
  std::size_t i = 0;
  while (i < s.size()) {
    double sign = 1;
    while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      if (s[i] == '-') sign = -sign;
      ++i;
    }
    if (i >= s.size()) throw UsageError("phi: dangling sign");
    double coef = 1;
    bool saw_num = false;
    std::size_t j = i;
    while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.'))
      ++j;
    if (j > i) {
      coef = std::stod(s.substr(i, j - i));
      saw_num = true;
      i = j;
    }
    if (i < s.size() && s[i] == '*') ++i;
    int expo = 0;
    if (i + 2 < s.size() + 1 && s.compare(i, 3, "tau") == 0) {
      i += 3;
      expo = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::size_t k = i;
        if (k < s.size() && s[k] == '-') ++k;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
        if (k == i) throw UsageError("phi: bad exponent");
        expo = std::stoi(s.substr(i, k - i));
        i = k;
      }
    } else if (!saw_num) {
      throw UsageError("phi: expected a coefficient or 'tau'");
    }
    out += LaurentPoly::monomial(expo, Cpx{sign * coef, 0});
  }
  return out;
}

// ---------------------------------------------------------------------------
// shared fixtures

// C^2-smooth ring profile in u: rises on [u0,u1], falls on [u2,u3].
struct RingProfile {
  double u0, u1, u2, u3;
  double operator()(double u) const {
    return smoothstep::s((u - u0) / (u1 - u0)) *
           (1.0 - smoothstep::s((u - u2) / (u3 - u2)));
  }
};

inline BumpProfile unit_ball_chi() { return BumpProfile{1.21, 2.56}; }

inline DiscAssembly fixture_disc_assembly() {
  BumpProfile chi = unit_ball_chi();
  return make_disc_assembly(ball_weight(chi, 1),
                            std::make_pair(std::sqrt(chi.t0), std::sqrt(chi.t1)));
}

inline std::vector<Cpx> seeded_disc_points(int n, double radius, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Cpx> out;
  while (static_cast<int>(out.size()) < n) {
    double x = 2 * u(rng) - 1, y = 2 * u(rng) - 1;
    if (x * x + y * y <= 1.0) out.push_back(radius * Cpx{x, y});
  }
  return out;
}

inline std::vector<Cpx> seeded_annulus_points(int n, double lo, double hi, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Cpx> out;
  while (static_cast<int>(out.size()) < n) {
    double x = 2 * u(rng) - 1, y = 2 * u(rng) - 1;
    double r2 = x * x + y * y;
    if (r2 <= 1.0 && r2 >= (lo / hi) * (lo / hi)) out.push_back(hi * Cpx{x, y});
  }
  return out;
}

inline std::vector<Cpx> square_grid(int nx, int ny, double half) {
  std::vector<Cpx> out;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      double x = (nx == 1) ? 0.0 : -half + 2 * half * i / (nx - 1);
      double y = (ny == 1) ? 0.0 : -half + 2 * half * j / (ny - 1);
      out.push_back(Cpx{x, y});
    }
  return out;
}

// Weight-contract residual: max over k of |delta_eta g_{k+1,k+1} -
// dbar g_{k,k}| at (zeta, z), dbar by central differences.
inline double weight_contract_residual(const WeightForm& W, const Pt& zeta, const Pt& z,
                                       double fd_step) {
  Pt eta = zeta - z;
  std::array<Cpx, 3> eta_a{eta[0], eta[1], eta[2]};
  ExtForm total = W.total(zeta, z);
  double worst = 0;
  for (int k = 0; k < W.dim; ++k) {
    ExtForm lhs = contract_eta(eta_a, total.bidegree_part(k + 1, k + 1));
    ExtForm rhs = dbar_fd(W.component(k), zeta, z, Side::zeta, fd_step);
    worst = std::max(worst, (lhs - rhs).max_abs());
  }
  return worst;
}

// ---------------------------------------------------------------------------
// scenario runners

namespace scenarios {

inline RunReport run_cusp_classify(const ScenarioConfig& cfg) {
  reject_unknown_keys(cfg, {"r", "s", "kmax"});
  int r = cfg.geti("r", 2), s = cfg.geti("s", 3);
  MonomialCurve c = MonomialCurve::make(r, s);
  int kmax = cfg.geti("kmax", 2 * c.conductor());
  RunReport rep;
  rep.scenario = "cusp-classify";
  rep.config = {{"kmax", std::to_string(kmax)},
                {"r", std::to_string(r)},
                {"s", std::to_string(s)}};
  auto rows = classify_monomials(c, kmax);  // throws on any disagreement
  int disagreements = 0;
  std::string nonext;
  for (const auto& row : rows) {
    if (row.extends != row.semigroup_member) ++disagreements;
    if (!row.extends) nonext += (nonext.empty() ? "" : ",") + std::to_string(row.k);
    rep.plot.push_back({static_cast<double>(row.k), 0.0, row.extends ? 1.0 : 0.0,
                        row.semigroup_member ? 1.0 : 0.0,
                        row.extends == row.semigroup_member ? 0.0 : 1.0});
  }
  rep.check("oracle-agreement", disagreements, 0.5);
  rep.note("conductor", std::to_string(c.conductor()));
  rep.note("non_extending", nonext.empty() ? "(none)" : nonext);
  return rep;
}

inline RunReport run_structure_form(const ScenarioConfig& cfg) {
  reject_unknown_keys(cfg, {"r", "s", "radii", "tol", "samples"});
  int r = cfg.geti("r", 2), s = cfg.geti("s", 3);
  double tol = cfg.getd("tol", 1e-8);
  int samples = cfg.geti("samples", 64);
  std::vector<double> radii = parse_double_list(cfg.get("radii", "0.25,0.5,0.9"));
  MonomialCurve c = MonomialCurve::make(r, s);
  RunReport rep;
  rep.scenario = "structure-form";
  rep.config = {{"r", std::to_string(r)},
                {"radii", cfg.get("radii", "0.25,0.5,0.9")},
                {"s", std::to_string(s)},
                {"samples", std::to_string(samples)},
                {"tol", fmt_double(tol)}};
  for (double rad : radii) {
    GammaCheckReport g = pullback_gamma_check(c, rad, tol, samples);
    rep.check("gamma-pullback-dev@r=" + fmt_double(rad), g.max_rel_dev, tol);
  }
  rep.note("pole_order", std::to_string(c.conductor()));
  rep.note("density", "2*pi*i / tau^" + std::to_string(c.conductor()));
  double fit = omega_blowup_exponent(c, {0.5, 0.25, 0.125, 0.0625, 0.03125});
  rep.check("omega-blowup-exponent-dev", std::abs(fit - c.conductor()), 0.05);
  return rep;
}

inline RunReport run_moment_check(const ScenarioConfig& cfg) {
  reject_unknown_keys(cfg, {"r", "s", "phi"});
  int r = cfg.geti("r", 2), s = cfg.geti("s", 3);
  std::string phis = cfg.get("phi", "tau");
  LaurentPoly phi = parse_laurent(phis);
  MonomialCurve c = MonomialCurve::make(r, s);
  RunReport rep;
  rep.scenario = "moment-check";
  rep.config = {{"phi", phis}, {"r", std::to_string(r)}, {"s", std::to_string(s)}};
  MomentReport m = moment_check(c, phi, default_xi_family(c));
  rep.note("extends", m.extends ? "true" : "false");
  for (const auto& [mm, res] : m.residues) {
    rep.note("residue_m" + std::to_string(mm), fmt_cpx(res));
    // route agreement: epsilon-circle contour against the exact residue
    Cpx via_contour =
        moment_contour(c, phi * LaurentPoly::monomial(mm), 0.4, 1e-12);
    rep.check("contour-agreement-m" + std::to_string(mm),
              std::abs(via_contour - res), 1e-10);
  }
  return rep;
}

inline RunReport run_weight_audit(const ScenarioConfig& cfg) {
  reject_unknown_keys(cfg, {"pairs", "tol", "hefer_tol", "seed", "fd_step"});
  int pairs = cfg.geti("pairs", 20);
  double tol = cfg.getd("tol", 1e-5);
  double hefer_tol = cfg.getd("hefer_tol", 1e-12);
  double fd_step = cfg.getd("fd_step", 1e-4);
  unsigned seed = static_cast<unsigned>(cfg.geti("seed", 20240901));

  RunReport rep;
  rep.scenario = "weight-audit";
  rep.config = {{"fd_step", fmt_double(fd_step)},
                {"hefer_tol", fmt_double(hefer_tol)},
                {"pairs", std::to_string(pairs)},
                {"seed", std::to_string(seed)},
                {"tol", fmt_double(tol)}};

  WeightForm ball1 = ball_weight(unit_ball_chi(), 1);
  WeightForm prod = weight_product(ball1, ball1);
  WeightForm ga = singular_weight_ga({Poly::zeta(1)}, 1, 1);
  WeightForm ball2w = ball_weight(unit_ball_chi(), 2);

  auto audit1 = [&](const WeightForm& W, const std::vector<Cpx>& zetas,
                    const std::vector<Cpx>& zs) {
    double worst = 0;
    for (int i = 0; i < pairs; ++i)
      worst = std::max(worst, weight_contract_residual(W, pt(zetas[i]), pt(zs[i]), fd_step));
    return worst;
  };

  auto zetas = seeded_disc_points(pairs, 1.7, seed);
  auto zs = seeded_disc_points(pairs, 0.5, seed + 1);
  rep.check("ball-weight-contract", audit1(ball1, zetas, zs), tol);
  rep.check("product-weight-contract", audit1(prod, zetas, zs), tol);

  auto zetas_ga = seeded_annulus_points(pairs, 0.3, 1.5, seed + 2);
  auto zs_ga = seeded_disc_points(pairs, 1.0, seed + 3);
  rep.check("ga-weight-contract", audit1(ga, zetas_ga, zs_ga), tol);

  {
    auto za = seeded_disc_points(2 * pairs, 1.2, seed + 4);
    auto zb = seeded_disc_points(2 * pairs, 0.4, seed + 5);
    double worst = 0;
    for (int i = 0; i < pairs; ++i) {
      Pt zeta = pt(za[2 * i], za[2 * i + 1]);
      Pt z = pt(zb[2 * i], zb[2 * i + 1]);
      worst = std::max(worst, weight_contract_residual(ball2w, zeta, z, fd_step));
    }
    rep.check("ball2-weight-contract", worst, tol);
  }

  {
    HeferForm H = hefer_single(Poly::zeta(1, 2) - Poly::zeta(2, 3), 2);
    auto za = seeded_disc_points(100, 1.5, seed + 6);
    auto zb = seeded_disc_points(100, 1.5, seed + 7);
    double worst = 0;
    for (int i = 0; i < 50; ++i) {
      Pt zeta = pt(za[2 * i], za[2 * i + 1]);
      Pt z = pt(zb[2 * i], zb[2 * i + 1]);
      worst = std::max(worst, std::abs(H.defect(zeta, z)));
    }
    rep.check("hefer-exactness", worst, hefer_tol);
  }
  return rep;
}

inline RunReport run_pv_convergence(const ScenarioConfig& cfg) {
  reject_unknown_keys(cfg, {"case", "tol"});
  std::string which = cfg.get("case", "pl1d");
  RunReport rep;
  rep.scenario = "pv-convergence";
  rep.config = {{"case", which}};

  if (which == "pl1d") {
    double tol = cfg.getd("tol", 1e-8);
    rep.config.emplace_back("tol", fmt_double(tol));
    BumpProfile b{0.25, 0.64};
    PVSchedule sched = PVSchedule::dyadic(3, 12, PVSchedule::Extrap::richardson, 2.0);
    struct Case {
      const char* name;
      std::function<Cpx(Cpx)> xi;
      Cpx expected;
    };
    std::vector<Case> cases = {
        {"bump", [b](Cpx z) { return Cpx{b(std::norm(z)), 0}; }, Cpx{1, 0}},
        {"bump*(1+z+zbar)",
         [b](Cpx z) { return b(std::norm(z)) * (Cpx{1, 0} + z + std::conj(z)); },
         Cpx{1, 0}},
        {"bump*(2+|z|^2+z^2)",
         [b](Cpx z) {
           return b(std::norm(z)) * (Cpx{2, 0} + Cpx{std::norm(z), 0} + z * z);
         },
         Cpx{2, 0}}};
    for (const auto& cse : cases) {
      SepResult r = lelong_point_mass(cse.xi, sched, 1e-13);
      rep.check(std::string("pl1d-") + cse.name, std::abs(r.value - cse.expected), tol);
    }
  } else if (which == "cusp-moments") {
    double tol = cfg.getd("tol", 1e-3);
    rep.config.emplace_back("tol", fmt_double(tol));
    MonomialCurve c = MonomialCurve::make(2, 3);
    PVSchedule sched = PVSchedule::dyadic(3, 10);
    std::vector<std::pair<std::string, LaurentPoly>> fs = {
        {"1", LaurentPoly::constant(Cpx{1, 0})},
        {"tau", LaurentPoly::monomial(1)},
        {"tau^2", LaurentPoly::monomial(2)},
        {"tau^3", LaurentPoly::monomial(3)},
        {"2tau+3tau^3",
         LaurentPoly::monomial(1, Cpx{2, 0}) + LaurentPoly::monomial(3, Cpx{3, 0})}};
    for (const auto& [name, f] : fs) {
      Cpx a = moment_contour(c, f, 0.4, 1e-12);
      Cpx b2 = moment_cutoff(c, f, sched, 0.8, 1e-10);
      rep.check("route-agreement-" + name, std::abs(a - b2), tol);
      rep.note("value-" + name, fmt_cpx(a));
    }
  } else if (which == "synthetic") {
    double tol = cfg.getd("tol", 1e-4);
    rep.config.emplace_back("tol", fmt_double(tol));
    {
      PVSchedule s1 = PVSchedule::dyadic(3, 12, PVSchedule::Extrap::richardson, 1.0);
      std::vector<Cpx> fam;
      for (double d : s1.deltas) fam.push_back(Cpx{2.5 + 0.7 * d, -1.0 + 0.3 * d});
      SepResult r = sep_regularize(fam, s1);
      rep.check("linear-family", std::abs(r.value - Cpx{2.5, -1.0}), 1e-12);
    }
    {
      PVSchedule s2 = PVSchedule::dyadic(3, 12, PVSchedule::Extrap::richardson, 0.5);
      std::vector<Cpx> fam;
      for (double d : s2.deltas)
        fam.push_back(Cpx{1.25 + 0.9 * std::sqrt(d), 0.5 - 0.2 * std::sqrt(d)});
      SepResult r = sep_regularize(fam, s2);
      rep.check("sqrt-family", std::abs(r.value - Cpx{1.25, 0.5}), tol);
      rep.note("sqrt-family-fitted-order", fmt_double(r.fitted_order));
    }
  } else {
    throw UsageError("pv-convergence: unknown case '" + which + "'");
  }
  return rep;
}

inline RunReport run_verify_koppelman(const ScenarioConfig& cfg) {
  reject_unknown_keys(cfg, {"preset", "grid", "tol", "quad_tol", "fd_step"});
  std::string preset = cfg.get("preset", "disc-bump");
  RunReport rep;
  rep.scenario = "verify-koppelman";
  rep.config = {{"preset", preset}};

  if (preset == "disc-bump") {
    auto [nx, ny] = parse_grid(cfg.get("grid", "5x5"));
    double tol = cfg.getd("tol", 1e-4);
    double qtol = cfg.getd("quad_tol", 1e-8);
    rep.config.emplace_back("grid", cfg.get("grid", "5x5"));
    rep.config.emplace_back("quad_tol", fmt_double(qtol));
    rep.config.emplace_back("tol", fmt_double(tol));
    DiscAssembly A = fixture_disc_assembly();
    BumpProfile b{0.36, 0.81};
    ScalarInput phi{
        [b](Cpx z) { return std::conj(z) * b(std::norm(z)); },
        [b](Cpx z) {
          double t = std::norm(z);
          return Cpx{b(t) + t * b.deriv(t), 0};
        },
        0.9};
    auto grid = square_grid(nx, ny, 0.35);
    SolveReport r = verify_koppelman_disc(A, phi, grid, qtol);
    for (const auto& p : r.points) {
      Cpx val = phi.value(p.z);
      rep.plot.push_back({p.z.real(), p.z.imag(), val.real(), val.imag(), p.residual});
    }
    rep.check("koppelman-identity-max-residual", r.max_residual, tol);
  } else if (preset == "disc-dzbar") {
    double tol = cfg.getd("tol", 1e-6);
    double qtol = cfg.getd("quad_tol", 1e-11);
    double fd = cfg.getd("fd_step", 1e-3);
    rep.config.emplace_back("fd_step", fmt_double(fd));
    rep.config.emplace_back("quad_tol", fmt_double(qtol));
    rep.config.emplace_back("tol", fmt_double(tol));
    DiscAssembly A = make_disc_assembly(trivial_weight(1), std::nullopt);
    OneFormInput phi{[](Cpx) { return Cpx{1, 0}; }, 1.0};
    std::vector<Cpx> grid = {Cpx{0, 0}, Cpx{0.2, 0.1}, Cpx{-0.3, 0.2},
                             Cpx{0.1, -0.25}, Cpx{0.35, 0.3}};
    SolveReport r = verify_dbar_solve_disc(A, phi, grid, qtol, fd);
    rep.check("dbar-K-max-residual", r.max_residual, tol);
    // closed form: K(dzetabar) = conj(z) on the unit disc
    Cpx k = disc_K(A, phi, Cpx{0.2, 0.1}, qtol);
    rep.check("cauchy-transform-value", std::abs(k - Cpx{0.2, -0.1}), 1e-8);
  } else if (preset == "disc-holo") {
    double tol = cfg.getd("tol", 1e-6);
    double qtol = cfg.getd("quad_tol", 1e-9);
    rep.config.emplace_back("quad_tol", fmt_double(qtol));
    rep.config.emplace_back("tol", fmt_double(tol));
    DiscAssembly A = fixture_disc_assembly();
    auto grid = square_grid(3, 3, 0.35);
    double worst = 0;
    for (Cpx z : grid) {
      Cpx p = disc_P(A, [](Cpx w) { return w * w; }, z, qtol);
      worst = std::max(worst, std::abs(p - z * z));
      rep.plot.push_back({z.real(), z.imag(), p.real(), p.imag(), std::abs(p - z * z)});
    }
    rep.check("holomorphic-identity-P-reproduces", worst, tol);
  } else if (preset == "p-holo") {
    double tol = cfg.getd("tol", 1e-5);
    double qtol = cfg.getd("quad_tol", 1e-9);
    double fd = cfg.getd("fd_step", 1e-3);
    rep.config.emplace_back("fd_step", fmt_double(fd));
    rep.config.emplace_back("quad_tol", fmt_double(qtol));
    rep.config.emplace_back("tol", fmt_double(tol));
    DiscAssembly A = fixture_disc_assembly();
    auto zs = seeded_disc_points(20, 0.5, 424243);
    struct Case {
      const char* name;
      std::function<Cpx(Cpx)> phi;
    };
    std::vector<Case> cases = {
        {"conj", [](Cpx w) { return std::conj(w); }},
        {"abs2", [](Cpx w) { return Cpx{std::norm(w), 0}; }},
        {"square", [](Cpx w) { return w * w; }}};
    for (const auto& cse : cases) {
      auto P = [&](Cpx z) { return disc_P(A, cse.phi, z, qtol); };
      double worst = 0;
      for (Cpx z : zs) worst = std::max(worst, std::abs(dbar_scalar(P, z, fd)));
      rep.check(std::string("P-holomorphy-") + cse.name, worst, tol);
    }
    double worst = 0;
    for (Cpx z : zs)
      worst = std::max(worst,
                       std::abs(disc_P(A, [](Cpx w) { return w * w; }, z, qtol) - z * z));
    rep.check("P-reproduces-z^2", worst, 1e-6);
  } else if (preset == "cusp") {
    double tol = cfg.getd("tol", 1e-3);
    double qtol = cfg.getd("quad_tol", 1e-8);
    double fd = cfg.getd("fd_step", 1e-3);
    rep.config.emplace_back("fd_step", fmt_double(fd));
    rep.config.emplace_back("quad_tol", fmt_double(qtol));
    rep.config.emplace_back("tol", fmt_double(tol));
    MonomialCurve c = MonomialCurve::make(2, 3);
    CurveAssembly A = make_cusp_assembly(c, ball_weight(unit_ball_chi(), 2));
    // pullback of rho(|zeta_2|^2) dzetabar_2 with a ring-supported rho
    RingProfile ring{0.008, 0.02, 0.20, 0.30};
    auto psi = [ring](Cpx tau) {
      double u = std::norm(tau) * std::norm(tau);  // |zeta_2|^2 = |tau|^4
      double v = ring(u);
      return (v == 0.0) ? Cpx{} : Cpx{v, 0} * std::conj(2.0 * tau);
    };
    PVSchedule sched = PVSchedule::dyadic(4, 9);
    std::vector<Cpx> grid;
    for (int k = 0; k < 6; ++k) {
      double th = 2.0 * kPi * k / 6;
      grid.push_back(0.45 * Cpx{std::cos(th), std::sin(th)});
    }
    SolveReport r = verify_koppelman_curve(A, psi, 0.29, 0.75, grid, qtol, fd, &sched);
    for (const auto& p : r.points) {
      Cpx val = psi(p.z);
      rep.plot.push_back({p.z.real(), p.z.imag(), val.real(), val.imag(), p.residual});
    }
    rep.check("cusp-dbar-K-max-residual", r.max_residual, tol);
  } else {
    throw UsageError("verify-koppelman: unknown preset '" + preset + "'");
  }
  return rep;
}

inline RunReport run_asymptotic_probe(const ScenarioConfig& cfg) {
  reject_unknown_keys(cfg, {"case", "quad_tol"});
  std::string which = cfg.get("case", "disc");
  RunReport rep;
  rep.scenario = "asymptotic-probe";
  rep.config = {{"case", which}};

  if (which == "disc") {
    double qtol = cfg.getd("quad_tol", 1e-7);
    rep.config.emplace_back("quad_tol", fmt_double(qtol));
    DiscAssembly A = fixture_disc_assembly();
    BumpProfile b{0.36, 0.81};
    OneFormInput phi{[b](Cpx z) { return (Cpx{1, 0} + z) * b(std::norm(z)); }, 0.9};
    std::vector<Cpx> path;
    for (int j = 0; j <= 6; ++j) path.push_back(Cpx{0.4 * std::ldexp(1.0, -j), 0});
    ProbeReport r = asymptotic_probe_disc(A, phi, path, qtol);
    rep.check_flag("probe-finite", r.finite);
    rep.check("smooth-slope", std::abs(r.slope), 0.2);
    rep.note("slope", fmt_double(r.slope));
    for (std::size_t i = 0; i < r.deltas.size(); ++i)
      rep.plot.push_back({r.deltas[i], 0, r.absK[i], 0, 0});
  } else if (which == "cusp") {
    double qtol = cfg.getd("quad_tol", 5e-6);
    rep.config.emplace_back("quad_tol", fmt_double(qtol));
    MonomialCurve c = MonomialCurve::make(2, 3);
    CurveAssembly A = make_cusp_assembly(c, ball_weight(unit_ball_chi(), 2));
    BumpProfile b{0.2, 0.5};
    auto psi = [b](Cpx tau) { return (Cpx{1, 0} + tau) * b(std::norm(tau)); };
    std::vector<Cpx> path;
    Cpx dir{std::cos(kPi / 7), std::sin(kPi / 7)};
    for (int j = 0; j <= 6; ++j) path.push_back(0.3 * std::ldexp(1.0, -j) * dir);
    ProbeReport r = asymptotic_probe_cusp(A, psi, 0.75, path, qtol);
    rep.check_flag("probe-finite", r.finite);
    rep.check("tail-stability", std::abs(r.slope - r.slope_prev), 0.3);
    rep.note("fitted_exponent", fmt_double(r.slope));
    for (std::size_t i = 0; i < r.deltas.size(); ++i)
      rep.plot.push_back({r.deltas[i], 0, r.absK[i], 0, 0});
  } else {
    throw UsageError("asymptotic-probe: unknown case '" + which + "'");
  }
  return rep;
}

inline RunReport run_hartogs(const ScenarioConfig& cfg) {
  reject_unknown_keys(cfg, {"variant", "phi", "slow", "tol"});
  std::string variant = cfg.get("variant", "cusp");
  RunReport rep;
  rep.scenario = "hartogs";
  rep.config = {{"variant", variant}};

  if (variant == "cusp") {
    std::string phis = cfg.get("phi", "tau");
    rep.config.emplace_back("phi", phis);
    MonomialCurve c = MonomialCurve::make(2, 3);
    LaurentPoly phi = parse_laurent(phis);
    HartogsReport h = hartogs_extend_cusp(c, phi);
    rep.note("extends", h.extends ? "true" : "false");
    rep.note("note", h.note);
    for (const auto& [m, r] : h.residues)
      rep.note("residue_m" + std::to_string(m), fmt_cpx(r));
    for (const auto& v : h.values)
      rep.plot.push_back({v.z[0].real(), v.z[0].imag(), v.value.real(),
                          v.value.imag(), 0.0});
    // integrity: symbolic verdict must match the contour route
    MomentReport m = moment_check(c, phi, default_xi_family(c));
    double worst = 0;
    for (const auto& [mm, res] : m.residues) {
      Cpx via = moment_contour(c, phi * LaurentPoly::monomial(mm), 0.35, 1e-12);
      worst = std::max(worst, std::abs(via - res));
    }
    rep.check("moment-route-agreement", worst, 1e-10);
  } else if (variant == "ball2") {
    if (cfg.geti("slow", 0) == 0)
      throw UsageError("hartogs ball2 is the slow suite; pass --slow");
    double tol = cfg.getd("tol", 1e-2);
    rep.config.emplace_back("slow", "1");
    rep.config.emplace_back("tol", fmt_double(tol));
    auto phi = [](const Pt& z) { return Cpx{1, 0} / (z[0] - Cpx{2, 0}); };
    BumpProfile chiK{0.25, 0.5625};  // K = {|z| <= 0.5}, shell out to 0.75
    std::vector<Pt> zs = {pt(Cpx{0, 0}, Cpx{0, 0}), pt(Cpx{0.2, 0}, Cpx{0, 0}),
                          pt(Cpx{0, 0}, Cpx{0.2, 0}), pt(Cpx{-0.15, 0}, Cpx{0.1, 0}),
                          pt(Cpx{0.1, 0}, Cpx{0, -0.2})};
    QuadOptions outer;
    outer.gl_points = 12;
    outer.theta_init = 24;
    outer.theta_max = 192;
    QuadOptions inner;
    inner.gl_points = 10;
    inner.theta_init = 16;
    inner.theta_max = 128;
    HartogsReport h = hartogs_extend_ball2(phi, chiK, zs, 2e-4, outer, inner);
    double worst = 0;
    for (const auto& v : h.values) {
      Cpx want = phi(v.z);
      double rel = std::abs(v.value - want) / std::abs(want);
      worst = std::max(worst, rel);
      rep.plot.push_back({v.z[0].real(), v.z[0].imag(), v.value.real(),
                          v.value.imag(), rel});
    }
    rep.check("extension-max-rel-err", worst, tol);

    // v is holomorphic in the hole (f vanishes there)
    ShellForm f;
    f.lo = 0.5;
    f.hi = 0.75;
    f.comps = [phi, chiK](const Pt& zeta) -> std::array<Cpx, 2> {
      double dc = chiK.deriv(norm2(zeta, 2));
      if (dc == 0.0) return {Cpx{}, Cpx{}};
      Cpx p = phi(zeta);
      return {dc * zeta[0] * p, dc * zeta[1] * p};
    };
    auto v = [&](const Pt& z) { return bm2_transform(f, z, 2e-4, outer, inner); };
    auto db = dbar_scalar2(v, pt(Cpx{0.1, 0.05}, Cpx{-0.05, 0.1}), 2e-2);
    rep.check("hole-holomorphy",
              std::max(std::abs(db[0]), std::abs(db[1])), 1e-2);
  } else {
    throw UsageError("hartogs: unknown variant '" + variant + "'");
  }
  return rep;
}

}  // namespace scenarios

inline const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {
      "verify-koppelman", "cusp-classify", "moment-check", "hartogs",
      "structure-form",   "pv-convergence", "asymptotic-probe", "weight-audit"};
  return names;
}

inline RunReport run_scenario(const ScenarioConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  RunReport rep;
  if (cfg.scenario == "cusp-classify")
    rep = scenarios::run_cusp_classify(cfg);
  else if (cfg.scenario == "structure-form")
    rep = scenarios::run_structure_form(cfg);
  else if (cfg.scenario == "moment-check")
    rep = scenarios::run_moment_check(cfg);
  else if (cfg.scenario == "weight-audit")
    rep = scenarios::run_weight_audit(cfg);
  else if (cfg.scenario == "pv-convergence")
    rep = scenarios::run_pv_convergence(cfg);
  else if (cfg.scenario == "verify-koppelman")
    rep = scenarios::run_verify_koppelman(cfg);
  else if (cfg.scenario == "asymptotic-probe")
    rep = scenarios::run_asymptotic_probe(cfg);
  else if (cfg.scenario == "hartogs")
    rep = scenarios::run_hartogs(cfg);
  else
    throw UsageError("unknown scenario '" + cfg.scenario + "'");
  rep.runtime_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace koppel
