#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "swlag/errors.hpp"
#include "swlag/exact_solutions.hpp"
#include "swlag/harness.hpp"
#include "swlag/symmetry.hpp"

namespace {

using namespace swlag;

void write_text(const std::string& path, const std::string& body) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  f << body;
}

// Emits to a file when a path is given, otherwise to stdout.
void emit(const std::string& path, const std::string& body) {
  if (path.empty())
    std::cout << body;
  else
    write_text(path, body);
}

struct RunFlags {
  std::string config;
  std::map<std::string, std::string> values;
};

int do_run(const RunFlags& flags) {
  RawConfig raw;
  if (!flags.config.empty()) raw = read_config_file(flags.config);
  for (const auto& [k, v] : flags.values) raw[k] = v;
  const RunConfig cfg = build_run_config(raw);

  const RunResult res = run(cfg);
  write_run_outputs(res, cfg, cfg.out_dir);

  std::cout << "scheme " << scheme_name(cfg.scheme.scheme) << ", test "
            << cfg.test << ", " << res.cells << " cells, " << res.steps
            << " steps, t = " << res.t_final << "\n";
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& L = res.ledger.laws[i];
    std::cout << "  " << law_name(kLaws[i]) << " [" << status_name(L.status)
              << "]";
    if (L.status != LawStatus::undefined)
      std::cout << " drift " << L.drift() << ", relative defect "
                << L.relative_defect();
    std::cout << "\n";
  }
  for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& a : res.assertion_failures)
    std::cerr << "conservation assertion failed: " << a << "\n";
  if (!res.completed) {
    std::cerr << "run aborted: " << res.error << "\n";
    return 2;
  }
  return res.success() ? 0 : 3;
}

int do_invariance(int samples, unsigned long seed, const std::string& out) {
  std::mt19937_64 rng(seed);
  const double eps_list[] = {-1.0, -0.25, 0.25, 1.0};
  double worst_w[7] = {0}, worst_eq[7] = {0};
  double worst_rep = 0.0, worst_rep_visc = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Stencil9 st = random_monotone_stencil(rng);
    const double w = scaled_residual(st);
    const double f = residual_inv3(st);
    for (int g = 1; g <= 6; ++g)
      for (double e : eps_list) {
        const GroupElement ge{g, e};
        const Stencil9 gs = group_transform(ge, st);
        const double sc = std::max(std::abs(w), 1e-300);
        worst_w[g] = std::max(worst_w[g], invariance_defect(ge, st) / sc);
        const double fg = residual_inv3(gs);
        const double want = residual_equivariance_weight(ge) * f;
        worst_eq[g] = std::max(
            worst_eq[g], std::abs(fg - want) / std::max(std::abs(want), 1e-300));
      }
    const auto iv = difference_invariants(st);
    worst_rep = std::max(worst_rep, std::abs(residual_via_invariants(iv) - w) /
                                        std::max(std::abs(w), 1e-300));
    const double mu = 0.3;
    const double wv = scaled_residual(st, mu);
    const double alpha = st.tau_minus() / st.h_minus();
    worst_rep_visc = std::max(
        worst_rep_visc, std::abs(residual_via_invariants(iv, mu, alpha) - wv) /
                            std::max(std::abs(wv), 1e-300));
  }
  std::ostringstream os;
  os << "generator,max_rel_W_change,max_rel_equivariance_error\n";
  for (int g = 1; g <= 6; ++g)
    os << 'X' << g << ',' << worst_w[g] << ',' << worst_eq[g] << '\n';
  os << "representation," << worst_rep << ",\n";
  os << "representation_viscous," << worst_rep_visc << ",\n";
  emit(out, os.str());
  return 0;
}

int do_convergence(const std::string& scheme, int levels, double h0,
                   double ratio, const std::string& out) {
  const SchemeId id = parse_scheme_id(scheme);
  const auto study = convergence_study(id, levels, h0, ratio);
  std::ostringstream os;
  os << "h,tau,error,order\n";
  for (const auto& L : study)
    os << L.h << ',' << L.tau << ',' << L.error << ','
       << (std::isnan(L.order) ? std::string() : std::to_string(L.order))
       << '\n';
  emit(out, os.str());
  return 0;
}

int do_dilation(double delta, int count, const std::string& out) {
  std::ostringstream os;
  os.precision(17);
  os << "# kappa roots:";
  for (double k : solve_kappa(delta)) os << ' ' << k;
  os << "\n# mu roots:";
  for (double m : solve_mu(delta)) os << ' ' << m;
  os << "\n";
  const auto p = make_dilation_params(delta);
  const auto chk = check_dilation_lattice(p, count);
  os << "delta,kappa,mu,coupling_residual,nodes,max_rel_reduced_residual,"
        "max_rel_scheme_residual\n";
  os << delta << ',' << p.kappa << ',' << p.mu << ','
     << coupling_residual(p.kappa, p.mu) << ',' << chk.nodes << ','
     << chk.max_relative_residual << ',' << chk.max_relative_full_residual
     << '\n';
  emit(out, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lagrangian shallow water solver and verification harness"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "advance a scheme on a piston test");
  RunFlags flags;
  run_cmd->add_option("--config", flags.config, "key=value config file")
      ->check(CLI::ExistingFile);
  const std::pair<const char*, const char*> run_opts[] = {
      {"scheme", "inv3, inv3_viscous, inv2, inv3_mass, explicit, sampop, "
                 "yelenin, korobitsyn, inv_bottom_energy, inv_bottom_momentum"},
      {"test", "test problem 1..4"},
      {"hs", "mass step"},
      {"tau-ratio", "tau = ratio * hs"},
      {"nu", "linear viscosity"},
      {"kappa-visc", "quadratic viscosity"},
      {"mu-visc", "invariant scheme viscosity factor"},
      {"eps", "implicit solve tolerance"},
      {"t-end", "final time"},
      {"out", "output directory"},
      {"test1-speed", "Test 1 withdrawal speed (<= 0)"},
      {"q-korob", "Korobitsyn parameter in [0, 1]"},
      {"max-iter", "iteration cap per step"},
      {"snapshots", "comma-separated snapshot times"},
      {"yelenin-three-level-flux", "alternative energy flux (0/1)"},
      {"assert-conservation", "fail the run on conservation defects (0/1)"},
  };
  std::map<std::string, std::string> run_values;
  for (const auto& [name, help] : run_opts)
    run_cmd->add_option(std::string("--") + name, run_values[name], help);

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "exact piston profiles");
  int o_test = 2, o_points = 301;
  double o_t = std::nan(""), o_speed = std::nan(""), o_rho0 = 1.0;
  std::string o_out;
  oracle_cmd->add_option("--test", o_test, "1 (rarefaction) or 2 (shock)");
  oracle_cmd->add_option("--t-end", o_t, "time of the profile");
  oracle_cmd->add_option("--speed", o_speed, "piston speed");
  oracle_cmd->add_option("--rho0", o_rho0, "rest height");
  oracle_cmd->add_option("--points", o_points, "profile samples");
  oracle_cmd->add_option("--out", o_out, "CSV path (stdout if omitted)");

  // invariance-check
  auto* inv_cmd = app.add_subcommand("invariance-check",
                                     "finite group action on random stencils");
  int i_samples = 100;
  unsigned long i_seed = 12345;
  std::string i_out;
  inv_cmd->add_option("--samples", i_samples, "random stencils");
  inv_cmd->add_option("--seed", i_seed, "RNG seed");
  inv_cmd->add_option("--out", i_out, "CSV path (stdout if omitted)");

  // convergence
  auto* conv_cmd = app.add_subcommand("convergence",
                                      "manufactured-solution truncation order");
  std::string c_scheme = "inv3", c_out;
  int c_levels = 4;
  double c_h0 = 0.1, c_ratio = 0.5;
  conv_cmd->add_option("--scheme", c_scheme, "inv3 or inv2");
  conv_cmd->add_option("--levels", c_levels, "refinement levels");
  conv_cmd->add_option("--hs", c_h0, "coarsest mass step");
  conv_cmd->add_option("--tau-ratio", c_ratio, "tau = ratio * hs");
  conv_cmd->add_option("--out", c_out, "CSV path (stdout if omitted)");

  // exact-dilation
  auto* dil_cmd = app.add_subcommand("exact-dilation",
                                     "dilation solution on a geometric lattice");
  double d_delta = 0.01;
  int d_count = 12;
  std::string d_out;
  dil_cmd->add_option("--delta", d_delta, "mesh density parameter");
  dil_cmd->add_option("--count", d_count, "lattice points per direction");
  dil_cmd->add_option("--out", d_out, "CSV path (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      for (const auto& [name, help] : run_opts)
        if (run_cmd->count(std::string("--") + name) > 0)
          flags.values[name] = run_values[name];
      return do_run(flags);
    }
    if (*oracle_cmd) {
      const double speed =
          std::isnan(o_speed) ? piston_velocity(o_test, 0.0) : o_speed;
      const double t =
          std::isnan(o_t) ? test_problem(o_test).t_end : o_t;
      emit(o_out, oracle_csv(o_test, o_rho0, speed, t, o_points));
      return 0;
    }
    if (*inv_cmd) return do_invariance(i_samples, i_seed, i_out);
    if (*conv_cmd)
      return do_convergence(c_scheme, c_levels, c_h0, c_ratio, c_out);
    if (*dil_cmd) return do_dilation(d_delta, d_count, d_out);
  } catch (const swlag::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
