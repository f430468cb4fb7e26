#pragma once

#include <functional>
#include <span>
#include <vector>

namespace swlag {

// Preconditioned residual R(z); the fixed point iteration is z <- z - d R(z).
using ResidualMap =
    std::function<void(std::span<const double> z, std::span<double> r)>;

struct SolverOptions {
  double eps = 1e-3;     // relative max-norm update tolerance
  int max_iter = 200;
  double damping = 1.0;
  int half_bandwidth = -1;  // Jacobian half-bandwidth hint, -1 for dense
  double stall_ratio = 0.9;
  int stall_window = 5;
  bool throw_on_failure = true;
};

struct SolveReport {
  int iterations = 0;
  double final_defect = 0.0;    // last relative update
  double final_residual = 0.0;  // max |R| at the returned point
  bool converged = false;
  bool newton_used = false;
};

struct SolveResult {
  std::vector<double> z;
  SolveReport report;
};

// Damped fixed-point iteration with a banded finite-difference Newton
// fallback when the contraction stalls. Convergence: ||dz||_inf <=
// eps * max(1, ||z||_inf). Throws NumericalBlowup on NaN/Inf and
// NonConvergence when max_iter is exhausted (unless throw_on_failure=false).
SolveResult fixed_point_solve(const ResidualMap& residual,
                              std::vector<double> guess,
                              const SolverOptions& opt);

}  // namespace swlag
