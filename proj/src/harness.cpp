#include "swlag/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "swlag/errors.hpp"
#include "swlag/exact_solutions.hpp"
#include "swlag/invariant_schemes.hpp"
#include "swlag/reference_schemes.hpp"

namespace swlag {

// ---------------------------------------------------------------------------
// test problems

TestProblem test_problem(int id) {
  switch (id) {
    case 1:
      return {1, 3.0, 0.55, true};
    case 2:
      return {2, 3.0, 0.6, true};
    case 3:
      return {3, 3.0, 0.74, true};
    case 4:
      return {4, 4.0, 1.0, false};
    default:
      throw InvalidConfig("unknown test id " + std::to_string(id));
  }
}

double piston_velocity(int test_id, double t, double test1_speed) {
  switch (test_id) {
    case 1:
      return test1_speed;
    case 2:
      return 0.5;
    case 3: {
      const double u0 = 0.8, u1 = 1.6, t1 = 0.25, t2 = 0.5;
      if (t <= t1) return u0;
      if (t >= t2) return u1;
      const double sn = std::sin(0.5 * std::numbers::pi * (t - t1) / (t2 - t1));
      return u0 + (u1 - u0) * sn * sn;
    }
    case 4:
      return 0.5;
    default:
      throw InvalidConfig("unknown test id " + std::to_string(test_id));
  }
}

double right_boundary_velocity(int test_id, double) {
  if (test_id < 1 || test_id > 4)
    throw InvalidConfig("unknown test id " + std::to_string(test_id));
  return test_id == 4 ? -0.5 : 0.0;
}

// ---------------------------------------------------------------------------
// configuration

double RunConfig::effective_t_end() const {
  return std::isnan(t_end) ? test_problem(test).t_end : t_end;
}

void apply_scheme_defaults(RunConfig& cfg) {
  auto& sc = cfg.scheme;
  sc.viscosity = ViscosityParams{};
  sc.mu_visc = 0.0;
  switch (sc.scheme) {
    case SchemeId::explicit_scheme:
      sc.viscosity.nu = 0.005;
      sc.viscosity.kappa = 4.5;
      break;
    case SchemeId::inv2:
    case SchemeId::inv3_mass:
    case SchemeId::sampop:
    case SchemeId::korobitsyn:
      sc.viscosity.nu = 0.001;
      sc.viscosity.kappa = 4.5;
      break;
    case SchemeId::inv3_viscous:
      sc.mu_visc = 0.01 * cfg.hs * cfg.hs;
      break;
    default:
      break;
  }
}

RawConfig parse_config_text(const std::string& text) {
  RawConfig raw;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::vector<std::string> bad;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return std::string();
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      bad.push_back("line " + std::to_string(lineno) + ": missing '='");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) {
      bad.push_back("line " + std::to_string(lineno) + ": empty key");
      continue;
    }
    raw[key] = val;
  }
  if (!bad.empty()) {
    std::string msg = "malformed config:";
    for (const auto& b : bad) msg += "\n  " + b;
    throw InvalidConfig(msg);
  }
  return raw;
}

RawConfig read_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

std::vector<std::string> config_keys() {
  return {"scheme",  "test",      "hs",        "tau-ratio",
          "nu",      "kappa-visc", "mu-visc",  "eps",
          "t-end",   "out",       "test1-speed", "q-korob",
          "max-iter", "rho0",     "snapshots", "yelenin-three-level-flux",
          "assert-conservation"};
}

namespace {

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  std::istringstream in(s);
  in >> out;
  return !in.fail() && in.eof();
}

bool parse_int(const std::string& s, long& out) {
  if (s.empty()) return false;
  std::istringstream in(s);
  in >> out;
  return !in.fail() && in.eof();
}

bool parse_bool(const std::string& s, bool& out) {
  if (s == "1" || s == "true" || s == "yes") {
    out = true;
    return true;
  }
  if (s == "0" || s == "false" || s == "no") {
    out = false;
    return true;
  }
  return false;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

RunConfig build_run_config(const RawConfig& raw) {
  std::vector<std::string> errors;
  const auto keys = config_keys();
  for (const auto& [k, v] : raw)
    if (std::find(keys.begin(), keys.end(), k) == keys.end())
      errors.push_back("unknown key '" + k + "'");

  RunConfig cfg;
  auto get = [&](const std::string& k) -> const std::string* {
    auto it = raw.find(k);
    return it == raw.end() ? nullptr : &it->second;
  };
  auto num = [&](const std::string& k, double& dst) {
    if (const auto* v = get(k)) {
      if (!parse_double(*v, dst))
        errors.push_back("key '" + k + "': expected a number, got '" + *v + "'");
      return true;
    }
    return false;
  };

  if (const auto* v = get("scheme")) {
    try {
      cfg.scheme.scheme = parse_scheme_id(*v);
    } catch (const Error&) {
      errors.push_back("key 'scheme': unknown scheme '" + *v + "'");
    }
  }
  if (const auto* v = get("test")) {
    long t = 0;
    if (!parse_int(*v, t) || t < 1 || t > 4)
      errors.push_back("key 'test': expected 1..4, got '" + *v + "'");
    else
      cfg.test = static_cast<int>(t);
  }
  num("hs", cfg.hs);
  num("tau-ratio", cfg.tau_ratio);
  num("rho0", cfg.rho0);
  apply_scheme_defaults(cfg);

  double nu = 0.0, kappa = 0.0, mu = 0.0;
  const bool has_nu = num("nu", nu);
  const bool has_kappa = num("kappa-visc", kappa);
  const bool has_mu = num("mu-visc", mu);
  if (has_nu) cfg.scheme.viscosity.nu = nu;
  if (has_kappa) cfg.scheme.viscosity.kappa = kappa;
  if (has_mu) cfg.scheme.mu_visc = mu;
  num("eps", cfg.scheme.eps_iter);
  num("t-end", cfg.t_end);
  num("test1-speed", cfg.test1_speed);
  num("q-korob", cfg.scheme.q_korob);
  if (const auto* v = get("max-iter")) {
    long it = 0;
    if (!parse_int(*v, it) || it < 1)
      errors.push_back("key 'max-iter': expected a positive integer, got '" +
                       *v + "'");
    else
      cfg.scheme.max_iter = static_cast<int>(it);
  }
  if (const auto* v = get("out")) cfg.out_dir = *v;
  if (const auto* v = get("snapshots")) {
    std::istringstream in(*v);
    std::string item;
    while (std::getline(in, item, ',')) {
      double t = 0.0;
      if (!parse_double(item, t) || t < 0.0)
        errors.push_back("key 'snapshots': bad time '" + item + "'");
      else
        cfg.snapshot_times.push_back(t);
    }
  }
  for (const char* k : {"yelenin-three-level-flux", "assert-conservation"}) {
    if (const auto* v = get(k)) {
      bool b = false;
      if (!parse_bool(*v, b))
        errors.push_back(std::string("key '") + k + "': expected a boolean");
      else if (std::string(k) == "assert-conservation")
        cfg.assert_conservation = b;
      else
        cfg.yelenin_three_level_flux = b;
    }
  }

  // ranges
  if (!(cfg.hs > 0.0)) errors.push_back("hs must be positive");
  if (!(cfg.tau_ratio > 0.0)) errors.push_back("tau-ratio must be positive");
  if (!(cfg.rho0 > 0.0)) errors.push_back("rho0 must be positive");
  if (!(cfg.scheme.eps_iter > 0.0)) errors.push_back("eps must be positive");
  if (!std::isnan(cfg.t_end) && !(cfg.t_end >= 0.0))
    errors.push_back("t-end must be non-negative");
  if (cfg.scheme.viscosity.nu < 0.0) errors.push_back("nu must be non-negative");
  if (cfg.scheme.viscosity.kappa < 0.0)
    errors.push_back("kappa-visc must be non-negative");
  if (!(cfg.scheme.q_korob >= 0.0 && cfg.scheme.q_korob <= 1.0))
    errors.push_back("q-korob must lie in [0, 1]");
  if (cfg.test1_speed > 0.0)
    errors.push_back("test1-speed is a withdrawal speed and must be <= 0");

  // contradictions
  const SchemeId id = cfg.scheme.scheme;
  const bool visc_given = (has_nu && nu != 0.0) || (has_kappa && kappa != 0.0);
  if (id == SchemeId::yelenin && visc_given)
    errors.push_back("scheme yelenin runs without artificial viscosity; "
                     "nu/kappa-visc must be 0");
  if (is_potential_scheme(id) && visc_given)
    errors.push_back("nu/kappa-visc apply to mass-coordinate schemes, not " +
                     scheme_name(id));
  if (has_mu && mu != 0.0 && id != SchemeId::inv3_viscous)
    errors.push_back("mu-visc is only used by inv3_viscous, not " +
                     scheme_name(id));
  if (get("q-korob") && id != SchemeId::korobitsyn)
    errors.push_back("q-korob is only used by korobitsyn");
  if (get("yelenin-three-level-flux") && id != SchemeId::yelenin)
    errors.push_back("yelenin-three-level-flux is only used by yelenin");
  if (get("test1-speed") && cfg.test != 1)
    errors.push_back("test1-speed requires test 1");

  if (!errors.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw InvalidConfig(msg);
  }
  return cfg;
}

std::string format_config(const RunConfig& cfg) {
  std::ostringstream os;
  os << "scheme=" << scheme_name(cfg.scheme.scheme) << "\n";
  os << "test=" << cfg.test << "\n";
  os << "hs=" << fmt(cfg.hs) << "\n";
  os << "tau-ratio=" << fmt(cfg.tau_ratio) << "\n";
  os << "nu=" << fmt(cfg.scheme.viscosity.nu) << "\n";
  os << "kappa-visc=" << fmt(cfg.scheme.viscosity.kappa) << "\n";
  os << "mu-visc=" << fmt(cfg.scheme.mu_visc) << "\n";
  os << "eps=" << fmt(cfg.scheme.eps_iter) << "\n";
  os << "t-end=" << fmt(cfg.effective_t_end()) << "\n";
  os << "out=" << cfg.out_dir << "\n";
  if (cfg.test == 1) os << "test1-speed=" << fmt(cfg.test1_speed) << "\n";
  if (cfg.scheme.scheme == SchemeId::korobitsyn)
    os << "q-korob=" << fmt(cfg.scheme.q_korob) << "\n";
  os << "max-iter=" << cfg.scheme.max_iter << "\n";
  os << "rho0=" << fmt(cfg.rho0) << "\n";
  if (!cfg.snapshot_times.empty()) {
    os << "snapshots=";
    for (std::size_t i = 0; i < cfg.snapshot_times.size(); ++i)
      os << (i ? "," : "") << fmt(cfg.snapshot_times[i]);
    os << "\n";
  }
  if (cfg.scheme.scheme == SchemeId::yelenin)
    os << "yelenin-three-level-flux=" << (cfg.yelenin_three_level_flux ? 1 : 0)
       << "\n";
  os << "assert-conservation=" << (cfg.assert_conservation ? 1 : 0) << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// run loop

namespace {

// The energy laws of yelenin and korobitsyn are stated but not identities,
// explicit energy is a balance and sampop energy a monitor; only
// `conserved` laws are asserted.
bool asserted(const LawLedger& L) { return L.status == LawStatus::conserved; }

struct Runner {
  const RunConfig& cfg;
  RunResult& res;
  MassMesh mesh;
  long nsteps = 0;
  std::vector<double> pending;  // snapshot times still to take
  bool wall_warned = false;
  Snapshot last_good;

  Runner(const RunConfig& c, RunResult& r) : cfg(c), res(r) {
    const TestProblem tp = test_problem(cfg.test);
    const double S = tp.total_mass;
    const long cells = std::lround(S / cfg.hs);
    if (std::abs(cells * cfg.hs - S) > 1e-9 * S)
      throw InvalidConfig("hs must divide the total mass");
    mesh = build_uniform_mass_mesh(static_cast<std::size_t>(cells), cfg.hs,
                                   cfg.tau());
    res.cells = mesh.cells();
    const double t_end = cfg.effective_t_end();
    nsteps = std::lround(t_end / cfg.tau());
    for (double t : cfg.snapshot_times)
      if (t > 0.0 && t < t_end) pending.push_back(t);
    std::sort(pending.begin(), pending.end());
  }

  double left_u(double t) const {
    return piston_velocity(cfg.test, t, cfg.test1_speed);
  }
  double right_u(double t) const { return right_boundary_velocity(cfg.test, t); }

  void record(double t, const std::array<LawTransition, 4>& tr) {
    ledger_update(res.ledger, tr);
    ConservationRow row;
    row.t = t;
    for (std::size_t i = 0; i < 4; ++i) {
      const LawLedger& L = res.ledger.laws[i];
      const bool undef = L.status == LawStatus::undefined;
      const double nan = std::numeric_limits<double>::quiet_NaN();
      row.drift[i] = undef ? nan : L.drift();
      row.relative[i] = undef ? nan : L.relative_drift();
      row.step_drift[i] = undef ? nan : L.last_step_drift;
      row.step_source[i] = undef ? nan : L.last_step_source;
    }
    res.series.push_back(row);
  }

  void log_solve(long step, double t, const SolveReport& r) {
    res.solver_log.push_back(
        {step, t, r.iterations, r.final_defect, r.converged, r.newton_used});
  }

  void check_wall(const Snapshot& snap) {
    if (wall_warned || !test_problem(cfg.test).right_wall) return;
    const std::size_t nc = snap.rows();
    const std::size_t band = std::min<std::size_t>(5, nc);
    for (std::size_t k = nc - band; k < nc; ++k) {
      if (std::abs(snap.rho[k] - cfg.rho0) > 1e-3 * cfg.rho0 ||
          std::abs(snap.u[k]) > 1e-3) {
        std::ostringstream os;
        os << "wave within 5 cells of the right wall at t=" << snap.t;
        res.warnings.push_back(os.str());
        wall_warned = true;
        return;
      }
    }
  }

  // Takes pending snapshots whose time has been reached.
  template <class Fn>
  void maybe_snapshot(double t, long step, Fn&& snap) {
    const double half = 0.5 * cfg.tau();
    while (!pending.empty() && t >= pending.front() - half) {
      if (res.snapshots.back().t != t) res.snapshots.push_back(snap(step));
      pending.erase(pending.begin());
    }
  }

  void run_potential() {
    RestState rest = init_rest_state(mesh, cfg.rho0);
    PotentialHistory hist = rest.history;
    const BottomProfile flat = BottomProfile::flat();
    res.snapshots.push_back(to_eulerian_snapshot(hist, mesh, 0));
    const double tau = mesh.tau;
    for (long n = 1; n <= nsteps; ++n) {
      const double t = hist.times[2];
      BoundaryPositions bc;
      bc.left = hist.layers[2].front() + tau * left_u(t + 0.5 * tau);
      bc.right = hist.layers[2].back() + tau * right_u(t + 0.5 * tau);
      auto step = step_potential(hist, mesh, cfg.scheme, flat, t + tau, bc);
      log_solve(n, t + tau, step.report);
      if (step.regularized > 0)
        res.warnings.push_back("step " + std::to_string(n) + ": " +
                               std::to_string(step.regularized) +
                               " regularized bottom nodes");
      check_monotone(step.layer, mesh, n);
      hist.advance(std::move(step.layer), t + tau);
      std::array<LawTransition, 4> tr;
      for (std::size_t i = 0; i < 4; ++i)
        tr[i] = cl_density_flux(cfg.scheme.scheme, kLaws[i], hist, mesh,
                                cfg.scheme, flat);
      record(hist.t(), tr);
      res.steps = n;
      res.t_final = hist.t();
      last_good = to_eulerian_snapshot(hist, mesh, n);
      maybe_snapshot(hist.t(), n, [&](long) { return last_good; });
      if (n % 20 == 0) check_wall(last_good);
    }
    finish(to_eulerian_snapshot(hist, mesh, nsteps));
  }

  void run_two_level() {
    const SchemeId id = cfg.scheme.scheme;
    RestState rest = init_rest_state(mesh, cfg.rho0);
    MassState st = rest.state;
    prepare_state(id, st);
    res.snapshots.push_back(to_eulerian_snapshot(st, mesh, 0));
    const double tau = mesh.tau;
    LawOptions opt;
    opt.yelenin_three_level_flux = cfg.yelenin_three_level_flux;
    // inv2 and explicit move the mesh with the stored velocity over the next
    // interval; the others use the new-layer velocity at t_{n+1}.
    const bool forward =
        id == SchemeId::inv2 || id == SchemeId::explicit_scheme;
    for (long n = 1; n <= nsteps; ++n) {
      const double tb = forward ? st.t + 1.5 * tau : st.t + tau;
      BoundaryVelocities bc{left_u(tb), right_u(tb)};
      MassStep step;
      switch (id) {
        case SchemeId::inv2:
          step = step_inv2(st, mesh, cfg.scheme, bc);
          break;
        case SchemeId::explicit_scheme:
          step = step_explicit(st, mesh, cfg.scheme, bc);
          break;
        case SchemeId::sampop:
          step = step_samarskiy_popov(st, mesh, cfg.scheme, bc);
          break;
        case SchemeId::yelenin:
          step = step_yelenin_krylov(st, mesh, cfg.scheme, bc);
          break;
        case SchemeId::korobitsyn:
          step = step_korobitsyn(st, mesh, cfg.scheme, bc);
          break;
        default:
          throw InvalidConfig("not a two-level scheme: " + scheme_name(id));
      }
      log_solve(n, step.state.t, step.report);
      check_monotone(step.state.x, mesh, n);
      std::array<LawTransition, 4> tr;
      for (std::size_t i = 0; i < 4; ++i)
        tr[i] = cl_density_flux(id, kLaws[i], st, step.state, mesh, cfg.scheme,
                                opt);
      st = std::move(step.state);
      record(st.t, tr);
      res.steps = n;
      res.t_final = st.t;
      last_good = to_eulerian_snapshot(st, mesh, n);
      maybe_snapshot(st.t, n, [&](long) { return last_good; });
      if (n % 20 == 0) check_wall(last_good);
    }
    finish(to_eulerian_snapshot(st, mesh, nsteps));
  }

  void run_inv3_mass() {
    RestState rest = init_rest_state(mesh, cfg.rho0);
    MassState older = rest.state, newer = rest.state;
    const double tau = mesh.tau;
    older.t = -tau;
    res.snapshots.push_back(to_eulerian_snapshot(newer, mesh, 0));
    for (long n = 1; n <= nsteps; ++n) {
      const double tb = newer.t + 0.5 * tau;
      BoundaryVelocities bc{left_u(tb), right_u(tb)};
      MassStep step = step_inv3_mass(older, newer, mesh, cfg.scheme, bc);
      log_solve(n, step.state.t, step.report);
      check_monotone(step.state.x, mesh, n);
      std::array<LawTransition, 4> tr;
      for (std::size_t i = 0; i < 4; ++i)
        tr[i] = cl_density_flux(kLaws[i], older, newer, step.state, mesh,
                                cfg.scheme);
      older = std::move(newer);
      newer = std::move(step.state);
      record(newer.t, tr);
      res.steps = n;
      res.t_final = newer.t;
      last_good = to_eulerian_snapshot(newer, mesh, n);
      maybe_snapshot(newer.t, n, [&](long) { return last_good; });
      if (n % 20 == 0) check_wall(last_good);
    }
    finish(to_eulerian_snapshot(newer, mesh, nsteps));
  }

  void finish(Snapshot fin) {
    if (res.snapshots.back().t != fin.t) res.snapshots.push_back(fin);
    check_wall(fin);
  }

  void assert_laws() {
    if (!cfg.assert_conservation || res.ledger.steps == 0) return;
    const double bound = 10.0 * cfg.scheme.eps_iter *
                         static_cast<double>(mesh.cells()) *
                         static_cast<double>(res.ledger.steps);
    for (std::size_t i = 0; i < 4; ++i) {
      const LawLedger& L = res.ledger.laws[i];
      if (!asserted(L)) continue;
      const double rd = L.relative_defect();
      if (!(rd <= bound)) {
        std::ostringstream os;
        os << law_name(kLaws[i]) << " relative defect " << rd
           << " exceeds bound " << bound;
        res.assertion_failures.push_back(os.str());
      }
    }
  }
};

}  // namespace

RunResult run(const RunConfig& cfg) {
  RunResult res;
  Runner r(cfg, res);
  try {
    const SchemeId id = cfg.scheme.scheme;
    if (is_potential_scheme(id))
      r.run_potential();
    else if (id == SchemeId::inv3_mass)
      r.run_inv3_mass();
    else
      r.run_two_level();
    res.completed = true;
    r.assert_laws();
  } catch (const Error& e) {
    res.completed = false;
    res.error = e.what();
    if (r.last_good.rows() > 0 && !res.snapshots.empty() &&
        res.snapshots.back().t != r.last_good.t)
      res.snapshots.push_back(r.last_good);
  }
  return res;
}

std::string snapshot_csv(const Snapshot& snap) {
  std::ostringstream os;
  os << "t,s,x,u,rho,p\n";
  for (std::size_t k = 0; k < snap.rows(); ++k)
    os << fmt(snap.t) << ',' << fmt(snap.s[k]) << ',' << fmt(snap.x[k]) << ','
       << fmt(snap.u[k]) << ',' << fmt(snap.rho[k]) << ',' << fmt(snap.p[k])
       << '\n';
  return os.str();
}

std::string conservation_csv(const RunResult& res, bool relative) {
  std::ostringstream os;
  os << "t,mass_defect,momentum_defect,energy_defect,com_defect\n";
  os << fmt(0.0) << ",0,0,0,0\n";
  for (const auto& row : res.series) {
    os << fmt(row.t);
    for (std::size_t i = 0; i < 4; ++i)
      os << ',' << fmt(relative ? row.relative[i] : row.drift[i]);
    os << '\n';
  }
  return os.str();
}

void write_run_outputs(const RunResult& res, const RunConfig& cfg,
                       const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir);
  auto put = [&](const std::string& name, const std::string& body) {
    std::ofstream f(fs::path(dir) / name, std::ios::binary);
    if (!f) throw IoError("cannot write " + (fs::path(dir) / name).string());
    f << body;
  };
  put("config.txt", format_config(cfg));
  for (std::size_t i = 0; i < res.snapshots.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "snapshot_%03zu.csv", i);
    put(name, snapshot_csv(res.snapshots[i]));
  }
  put("conservation.csv", conservation_csv(res, false));
  put("conservation_relative.csv", conservation_csv(res, true));

  std::ostringstream st;
  st << "law,status\n";
  for (std::size_t i = 0; i < 4; ++i)
    st << law_name(kLaws[i]) << ',' << status_name(res.ledger.laws[i].status)
       << '\n';
  put("law_status.csv", st.str());

  std::ostringstream sl;
  sl << "step,t,iterations,final_defect,converged,newton_used\n";
  for (const auto& l : res.solver_log)
    sl << l.step << ',' << fmt(l.t) << ',' << l.iterations << ','
       << fmt(l.final_defect) << ',' << (l.converged ? 1 : 0) << ','
       << (l.newton_used ? 1 : 0) << '\n';
  put("solver.csv", sl.str());

  std::ostringstream w;
  for (const auto& s : res.warnings) w << "warning: " << s << '\n';
  for (const auto& s : res.assertion_failures) w << "assertion: " << s << '\n';
  if (!res.error.empty()) w << "error: " << res.error << '\n';
  put("messages.txt", w.str());
}

// ---------------------------------------------------------------------------
// oracles

std::string oracle_csv(int test, double rho0, double speed, double t, int n) {
  std::ostringstream os;
  if (test == 1) {
    const auto [tail, head] = rarefaction_fan_edges(speed, rho0, t);
    const double xa = speed * t, xb = head + 0.25 * (head - xa) + 1e-12;
    os << "t,x,u,rho\n";
    for (int i = 0; i < n; ++i) {
      const double x = xa + (xb - xa) * i / std::max(1, n - 1);
      const EulerPoint e = rarefaction_oracle(speed, rho0, t, x);
      os << fmt(t) << ',' << fmt(x) << ',' << fmt(e.u) << ',' << fmt(e.rho)
         << '\n';
    }
    (void)tail;
    return os.str();
  }
  if (test == 2) {
    const ShockState sh = shock_state_oracle(speed, rho0);
    const double s_shock = sh.W * t;
    const double S = test_problem(2).total_mass;
    os << "t,s,u,rho,shock_s,W\n";
    for (int i = 0; i < n; ++i) {
      const double s = S * i / std::max(1, n - 1);
      const bool behind = s < s_shock;
      os << fmt(t) << ',' << fmt(s) << ',' << fmt(behind ? speed : 0.0) << ','
         << fmt(behind ? sh.rho1 : rho0) << ',' << fmt(s_shock) << ','
         << fmt(sh.W) << '\n';
    }
    return os.str();
  }
  throw InvalidConfig("oracles exist for tests 1 and 2 only");
}

// ---------------------------------------------------------------------------
// manufactured truncation study

namespace {

constexpr double kAmp = 0.2;
double mx(double s, double t) { return s + kAmp * std::sin(s) * std::cos(t); }
double mxt(double s, double t) { return -kAmp * std::sin(s) * std::sin(t); }
double mxs(double s, double t) { return 1.0 + kAmp * std::cos(s) * std::cos(t); }
// x_tt - 2 x_ss / x_s^3
double moperator(double s, double t) {
  const double xtt = -kAmp * std::sin(s) * std::cos(t);
  const double xss = -kAmp * std::sin(s) * std::cos(t);
  const double xs = mxs(s, t);
  return xtt - 2.0 * xss / (xs * xs * xs);
}

double truncation_inv3(double h, double tau) {
  const double t = 1.0;
  double err = 0.0;
  const long n = std::lround(1.0 / h);
  for (long i = 0; i <= n; ++i) {
    const double s = 0.5 + i * h;
    Stencil9 st;
    st.t = {t - tau, t, t + tau};
    st.s = {s - h, s, s + h};
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j) st.x[k][j] = mx(st.s[j], st.t[k]);
    err = std::max(err, std::abs(residual_inv3(st) - moperator(s, t)));
  }
  return err;
}

double truncation_inv2(double h, double tau) {
  const double t0 = 1.0, t1 = t0 + tau;
  auto rho = [&](double sl, double t) { return 1.0 / mxs(sl + 0.5 * h, t); };
  double err = 0.0;
  const long n = std::lround(1.0 / h);
  for (long i = 0; i <= n; ++i) {
    const double s = 0.5 + i * h;
    // momentum at node s, flux in cells [s-h, s] and [s, s+h]
    auto Q = [&](double sl) {
      const double r1 = rho(sl, t1), r0 = rho(sl, t0);
      return flux_Q(r1, r0, r1 * r1);
    };
    const double mom = (mxt(s, t1) - mxt(s, t0)) / tau + (Q(s) - Q(s - h)) / h;
    err = std::max(err, std::abs(mom - moperator(s, t0 + 0.5 * tau)));
    // continuity in cell [s, s+h]
    const double lam_r = 0.5 * (mxt(s + h, t1) + mxt(s + h, t0));
    const double lam_l = 0.5 * (mxt(s, t1) + mxt(s, t0));
    const double cont = (1.0 / rho(s, t1) - 1.0 / rho(s, t0)) / tau -
                        (lam_r - lam_l) / h;
    err = std::max(err, std::abs(cont));
    // state relation with p = rho^2 sampled exactly
    const double state = 1.0 / rho(s, t1) + 1.0 / rho(s, t0) - 2.0 / rho(s, t0);
    err = std::max(err, std::abs(state));
  }
  return err;
}

}  // namespace

std::vector<ConvergenceLevel> convergence_study(SchemeId id, int levels,
                                                double h0, double tau_ratio) {
  if (levels < 2) throw InvalidConfig("convergence study needs >= 2 levels");
  if (id != SchemeId::inv3 && id != SchemeId::inv2)
    throw InvalidConfig("convergence study supports inv3 and inv2");
  std::vector<ConvergenceLevel> out;
  for (int k = 0; k < levels; ++k) {
    ConvergenceLevel L;
    L.h = h0 / std::pow(2.0, k);
    L.tau = tau_ratio * L.h;
    L.error = id == SchemeId::inv3 ? truncation_inv3(L.h, L.tau)
                                   : truncation_inv2(L.h, L.tau);
    if (!out.empty()) L.order = std::log2(out.back().error / L.error);
    out.push_back(L);
  }
  return out;
}

}  // namespace swlag
