#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "swlag/conservation.hpp"
#include "swlag/core_state.hpp"
#include "swlag/implicit_solver.hpp"

namespace swlag {

// ---- test problems ---------------------------------------------------------

struct TestProblem {
  int id = 2;
  double total_mass = 3.0;
  double t_end = 0.6;
  bool right_wall = true;
};

TestProblem test_problem(int id);

// Left piston velocity. test1_speed is the withdrawal speed of Test 1.
double piston_velocity(int test_id, double t, double test1_speed = -0.5);
// Right boundary: wall (0) for Tests 1-3, second piston for Test 4.
double right_boundary_velocity(int test_id, double t);

// ---- configuration ---------------------------------------------------------

struct RunConfig {
  int test = 2;
  SchemeConfig scheme{};
  double hs = 0.02;
  double tau_ratio = 0.025;
  double rho0 = 1.0;
  double t_end = std::numeric_limits<double>::quiet_NaN();  // NaN: test default
  double test1_speed = -0.5;
  std::vector<double> snapshot_times;  // t_end is always added
  std::string out_dir = "out";
  bool yelenin_three_level_flux = false;
  bool assert_conservation = true;

  double effective_t_end() const;
  double tau() const { return tau_ratio * hs; }
};

// Scheme-dependent defaults for viscosity and the invariant viscous factor.
void apply_scheme_defaults(RunConfig& cfg);

using RawConfig = std::map<std::string, std::string>;

// Flat key=value lines; '#' starts a comment. Throws InvalidConfig on
// malformed lines.
RawConfig parse_config_text(const std::string& text);
RawConfig read_config_file(const std::string& path);

// Builds a validated configuration. Unknown keys, type mismatches and
// contradictory settings raise InvalidConfig listing every offender.
RunConfig build_run_config(const RawConfig& raw);

// key=value echo of the effective configuration.
std::string format_config(const RunConfig& cfg);

std::vector<std::string> config_keys();

// ---- runs ------------------------------------------------------------------

struct ConservationRow {
  double t = 0.0;
  std::array<double, 4> drift{};
  std::array<double, 4> relative{};
  std::array<double, 4> step_drift{};
  std::array<double, 4> step_source{};
};

struct StepLog {
  long step = 0;
  double t = 0.0;
  int iterations = 0;
  double final_defect = 0.0;
  bool converged = true;
  bool newton_used = false;
};

struct RunResult {
  bool completed = false;
  std::string error;
  long steps = 0;
  double t_final = 0.0;
  std::size_t cells = 0;
  std::vector<Snapshot> snapshots;
  ConservationLedger ledger;
  std::vector<ConservationRow> series;
  std::vector<StepLog> solver_log;
  std::vector<std::string> warnings;
  std::vector<std::string> assertion_failures;

  bool success() const { return completed && assertion_failures.empty(); }
  const Snapshot& final_snapshot() const { return snapshots.back(); }
};

RunResult run(const RunConfig& cfg);

// Writes config.txt, snapshot_NNN.csv, conservation.csv,
// conservation_relative.csv, law_status.csv, solver.csv and messages.txt
// into dir.
void write_run_outputs(const RunResult& res, const RunConfig& cfg,
                       const std::string& dir);

std::string snapshot_csv(const Snapshot& snap);
std::string conservation_csv(const RunResult& res, bool relative);

// ---- oracle and order studies ----------------------------------------------

// Test 1: Eulerian rarefaction profile on n points; Test 2: shock state and
// the piecewise-constant profile in the mass coordinate.
std::string oracle_csv(int test, double rho0, double speed, double t, int n);

struct ConvergenceLevel {
  double h = 0.0;
  double tau = 0.0;
  double error = 0.0;
  double order = std::numeric_limits<double>::quiet_NaN();
};

// Truncation study on x = s + 0.2 sin(s) cos(t) for inv3 or inv2, with
// h = h0 / 2^k and tau = tau_ratio h.
std::vector<ConvergenceLevel> convergence_study(SchemeId id, int levels,
                                                double h0 = 0.1,
                                                double tau_ratio = 0.5);

}  // namespace swlag
