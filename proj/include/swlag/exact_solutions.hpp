#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "swlag/core_state.hpp"

namespace swlag {

// ---- travelling wave x = s - alpha t ---------------------------------------

struct TravellingWave {
  PotentialHistory history;
  bool matched = true;  // alpha == h/tau
  std::string warning;
};

// Layers at t0 - tau, t0, t0 + tau.
TravellingWave travelling_wave(const MassMesh& mesh, double alpha,
                               double t0 = 0.0);

// ---- dilation family x = (54 s t^2)^{1/3} ----------------------------------

double dilation_exact(double s, double t);
double dilation_velocity(double s, double t, double mu);
double dilation_density(double s, double t, double kappa);

double kappa_residual(double kappa, double delta);
double mu_constraint_residual(double mu, double delta);
// (k^2+k+1)(k^2+1)(k+1)/k^4 - 54 mu^3 (mu+1)/(mu^2+mu+1)^2
double coupling_residual(double kappa, double mu);

// All positive roots in [1e-3, 1e3], ascending. Exact zeros on the scan
// grid are returned as they are.
std::vector<double> solve_kappa(double delta);
std::vector<double> solve_mu(double delta);

struct DilationMeshParams {
  double kappa = 1.0;
  double mu = 1.0;
  double delta = 0.0;
  double s0 = 1.0;
  double t0 = 1.0;
};

// Picks the roots nearest 1 (and different from 1) of both constraints.
DilationMeshParams make_dilation_params(double delta, double s0 = 1.0,
                                        double t0 = 1.0);

// Reduced scheme at one lattice node:
//   psi^ psi_v psi_{t tv} + [((s+ - s)/(s+^{1/3} - s^{1/3}))^2
//                           - ((s- - s)/(s-^{1/3} - s^{1/3}))^2] / (s^{1/3}(s - s-))
// Returns the residual and, through scale, the sum of term magnitudes.
template <class T>
T reduced_scheme_residual(T psi_prev, T psi, T psi_next, T t_prev, T t,
                          T t_next, T s_minus, T s, T s_plus, T* scale) {
  using std::abs;
  using std::cbrt;
  const T tm = t - t_prev, tp = t_next - t;
  const T ptt = ((psi_next - psi) / tp - (psi - psi_prev) / tm) / tm;
  const T a = psi_next * psi_prev * ptt;
  const T r1 = (s_plus - s) / (cbrt(s_plus) - cbrt(s));
  const T r2 = (s_minus - s) / (cbrt(s_minus) - cbrt(s));
  const T den = cbrt(s) * (s - s_minus);
  const T b = r1 * r1 / den, c = r2 * r2 / den;
  if (scale) *scale = abs(a) + abs(b) + abs(c);
  return a + b - c;
}

struct DilationCheck {
  double max_relative_residual = 0.0;  // reduced scheme
  double max_relative_full_residual = 0.0;  // three-level potential scheme
  int nodes = 0;
};

// Evaluates both residuals on the lattice s_m = s0 kappa^{-3m},
// t_n = t0 mu^{3n} for m, n = 0..count-1 in long double.
DilationCheck check_dilation_lattice(const DilationMeshParams& p, int count);

// ---- reduced time ODE psi^ psi_v psi_{t tv} = K on a uniform lattice -----

// Real root of the quadratic nearest 2 psi - psi_prev. Throws
// NonPhysicalState when no positive real root exists.
double psi_ode_step(double psi_prev, double psi, double K, double tau);

// psi_t^2 + K (1/psi_next + 1/psi) with psi_t = (psi_next - psi)/tau.
double psi_first_integral(double psi, double psi_next, double K, double tau);

// (psi - psi0)^2 + t^2 K (1/psi + 1/psi0) - t^2 C1
double psi_cauchy_residual(double psi, double psi0, double K, double C1,
                           double t);

// Root of the Cauchy relation nearest guess, by bracketing and bisection.
double psi_cauchy_solve(double psi0, double K, double C1, double t,
                        double guess);

// ---- piston oracles (p = rho^2, c = sqrt(2 rho)) ---------------------------

struct EulerPoint {
  double u = 0.0;
  double rho = 0.0;
};

// Left piston at x = x0 withdrawing with speed U <= 0 into fluid at rest on
// its right: centred simple wave with u - 2c = -2c0.
EulerPoint rarefaction_oracle(double U, double rho0, double t, double x,
                              double x0 = 0.0);

// Eulerian fan edges (tail, head) at time t.
std::pair<double, double> rarefaction_fan_edges(double U, double rho0,
                                                double t, double x0 = 0.0);

struct ShockState {
  double rho1 = 0.0;
  double W = 0.0;  // shock speed in the mass coordinate
};

// Left piston pushing with speed U > 0 into fluid at rest.
ShockState shock_state_oracle(double U, double rho0);

}  // namespace swlag
