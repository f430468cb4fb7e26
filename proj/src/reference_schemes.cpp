#include "swlag/reference_schemes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace swlag {

double artificial_viscosity(double rho, double u_s, double nu, double kappa,
                            double gamma, double h, bool squared_length) {
  double l = kappa * h / std::numbers::pi;
  if (squared_length) l *= l;
  return -nu * rho * u_s + 0.5 * (1.0 + gamma) * rho * l * u_s * u_s;
}

double applied_viscosity(double rho, double u_s, const ViscosityParams& vp,
                         double h) {
  if (!vp.active()) return 0.0;
  if (vp.compression_only && u_s >= 0.0) return 0.0;
  return artificial_viscosity(rho, u_s, vp.nu, vp.kappa, vp.gamma, h,
                              vp.squared_length);
}

void prepare_state(SchemeId id, MassState& st) {
  if (st.q.size() != st.p.size()) st.q = st.p;
  if (id == SchemeId::sampop && st.internal_energy.size() != st.rho.size())
    st.internal_energy = st.rho;
  if (id == SchemeId::yelenin && st.potential.size() != st.p.size())
    st.potential = st.p;
}

namespace {

void require_positive_volume(const std::vector<double>& v, const char* who) {
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!(v[k] > 0.0)) {
      std::ostringstream os;
      os << who << ": non-positive specific volume at cell " << k;
      throw NonPhysicalState(os.str());
    }
}

SolverOptions solver_options(const SchemeConfig& cfg) {
  SolverOptions o;
  o.eps = cfg.eps_iter;
  o.max_iter = cfg.max_iter;
  o.damping = cfg.damping;
  o.half_bandwidth = 1;
  return o;
}

// Continuity with node velocities w: V^ = V + tau (w_{k+1} - w_k)/h.
void advance_volume(const MassState& st, const std::vector<double>& w,
                    double tau, double h, std::vector<double>& vnew) {
  for (std::size_t k = 0; k < vnew.size(); ++k)
    vnew[k] = 1.0 / st.rho[k] + tau * (w[k + 1] - w[k]) / h;
}

}  // namespace

MassStep step_explicit(const MassState& st, const MassMesh& mesh,
                       const SchemeConfig& cfg, BoundaryVelocities bc) {
  const std::size_t nc = mesh.cells(), nn = mesh.nodes();
  const double h = mesh.h, tau = mesh.tau;
  MassStep out;
  MassState& ns = out.state;
  ns.t = st.t + tau;
  ns.x.resize(nn);
  for (std::size_t m = 0; m < nn; ++m) ns.x[m] = st.x[m] + tau * st.u[m];
  std::vector<double> v(nc);
  advance_volume(st, st.u, tau, h, v);
  require_positive_volume(v, "explicit");
  ns.rho.resize(nc);
  ns.p.resize(nc);
  ns.q.resize(nc);
  for (std::size_t k = 0; k < nc; ++k) {
    ns.rho[k] = 1.0 / v[k];
    ns.p[k] = ns.rho[k] * ns.rho[k];
    ns.q[k] = st.rho[k] * ns.rho[k] +
              applied_viscosity(ns.rho[k], (st.u[k + 1] - st.u[k]) / h,
                                cfg.viscosity, h);
  }
  ns.u.resize(nn);
  ns.u[0] = bc.left;
  ns.u[nn - 1] = bc.right;
  for (std::size_t m = 1; m < nc; ++m)
    ns.u[m] = st.u[m] - tau * (ns.q[m] - ns.q[m - 1]) / h;
  return out;
}

MassStep step_samarskiy_popov(const MassState& st, const MassMesh& mesh,
                              const SchemeConfig& cfg, BoundaryVelocities bc) {
  const std::size_t nc = mesh.cells(), nn = mesh.nodes();
  const double h = mesh.h, tau = mesh.tau;
  if (st.internal_energy.size() != nc)
    throw InvalidConfig("sampop state needs an internal-energy track");

  std::vector<double> un(nn), w(nn), v(nc), pt(nc);
  un[0] = bc.left;
  un[nn - 1] = bc.right;
  auto eval = [&]() {
    for (std::size_t m = 0; m < nn; ++m) w[m] = 0.5 * (st.u[m] + un[m]);
    advance_volume(st, w, tau, h, v);
    for (std::size_t k = 0; k < nc; ++k) {
      const double rho = 1.0 / std::max(v[k], 1e-12 / st.rho[k]);
      pt[k] = rho * rho +
              applied_viscosity(rho, (un[k + 1] - un[k]) / h, cfg.viscosity, h);
    }
  };
  auto residual = [&](std::span<const double> z, std::span<double> r) {
    for (std::size_t m = 1; m < nc; ++m) un[m] = z[m - 1];
    eval();
    for (std::size_t m = 1; m < nc; ++m)
      r[m - 1] = un[m] - st.u[m] + tau * (pt[m] - pt[m - 1]) / h;
  };
  std::vector<double> guess(st.u.begin() + 1, st.u.end() - 1);
  auto sol = fixed_point_solve(residual, std::move(guess), solver_options(cfg));
  for (std::size_t m = 1; m < nc; ++m) un[m] = sol.z[m - 1];
  eval();
  require_positive_volume(v, "sampop");

  MassStep out;
  out.report = sol.report;
  MassState& ns = out.state;
  ns.t = st.t + tau;
  ns.u = un;
  ns.x.resize(nn);
  for (std::size_t m = 0; m < nn; ++m) ns.x[m] = st.x[m] + tau * w[m];
  ns.rho.resize(nc);
  ns.p.resize(nc);
  ns.q = pt;
  ns.internal_energy.resize(nc);
  for (std::size_t k = 0; k < nc; ++k) {
    ns.rho[k] = 1.0 / v[k];
    ns.p[k] = ns.rho[k] * ns.rho[k];
    ns.internal_energy[k] =
        st.internal_energy[k] - pt[k] * (v[k] - 1.0 / st.rho[k]);
  }
  return out;
}

MassStep step_yelenin_krylov(const MassState& st, const MassMesh& mesh,
                             const SchemeConfig& cfg, BoundaryVelocities bc) {
  const std::size_t nc = mesh.cells(), nn = mesh.nodes();
  const double h = mesh.h, tau = mesh.tau;
  if (st.potential.size() != nc)
    throw InvalidConfig("yelenin state needs the potential track");

  std::vector<double> un(nn), w(nn), v(nc), pn(nc), pi(nc);
  un[0] = bc.left;
  un[nn - 1] = bc.right;
  auto eval = [&]() {
    for (std::size_t m = 0; m < nn; ++m) w[m] = 0.5 * (st.u[m] + un[m]);
    advance_volume(st, w, tau, h, v);
    for (std::size_t k = 0; k < nc; ++k) {
      const double v0 = 1.0 / st.rho[k];
      const double r0 = st.rho[k];
      const double r1 = 1.0 / std::max(v[k], 1e-12 * v0);
      const double r03 = r0 * r0 * r0;
      pn[k] = st.potential[k] + 2.0 * (v[k] - v0) * r03;
      pi[k] = 0.5 * (pn[k] + st.potential[k]) +
              0.5 * (v[k] + v0) * (r1 * r1 * r1 + r03);
    }
  };
  auto residual = [&](std::span<const double> z, std::span<double> r) {
    for (std::size_t m = 1; m < nc; ++m) un[m] = z[m - 1];
    eval();
    for (std::size_t m = 1; m < nc; ++m)
      r[m - 1] = un[m] - st.u[m] + tau * (pi[m] - pi[m - 1]) / h;
  };
  std::vector<double> guess(st.u.begin() + 1, st.u.end() - 1);
  auto sol = fixed_point_solve(residual, std::move(guess), solver_options(cfg));
  for (std::size_t m = 1; m < nc; ++m) un[m] = sol.z[m - 1];
  eval();
  require_positive_volume(v, "yelenin");

  MassStep out;
  out.report = sol.report;
  MassState& ns = out.state;
  ns.t = st.t + tau;
  ns.u = un;
  ns.x.resize(nn);
  for (std::size_t m = 0; m < nn; ++m) ns.x[m] = st.x[m] + tau * w[m];
  ns.rho.resize(nc);
  ns.p.resize(nc);
  ns.q = pi;
  ns.potential = pn;
  for (std::size_t k = 0; k < nc; ++k) {
    ns.rho[k] = 1.0 / v[k];
    ns.p[k] = ns.rho[k] * ns.rho[k];
  }
  return out;
}

double korobitsyn_pressure(const std::vector<double>& rho_new, std::size_t m,
                           double u_t, double q, double tau) {
  const double r = rho_new[m];
  const double rl = m == 0 ? rho_new[0] : rho_new[m - 1];
  return (0.5 * q * (rl + r) + (1.0 - q) * r) *
         (r + 0.25 * q * tau * tau * u_t * u_t);
}

MassStep step_korobitsyn(const MassState& st, const MassMesh& mesh,
                         const SchemeConfig& cfg, BoundaryVelocities bc) {
  const std::size_t nc = mesh.cells(), nn = mesh.nodes();
  const double h = mesh.h, tau = mesh.tau;
  const double q = cfg.q_korob;
  if (!(q >= 0.0 && q <= 1.0))
    throw InvalidConfig("korobitsyn parameter q must lie in [0, 1]");

  MassStep out;
  MassState& ns = out.state;
  ns.t = st.t + tau;
  ns.q.resize(nc);
  for (std::size_t k = 0; k < nc; ++k)
    ns.q[k] = st.p[k] + applied_viscosity(st.rho[k],
                                          (st.u[k + 1] - st.u[k]) / h,
                                          cfg.viscosity, h);
  ns.u.resize(nn);
  ns.u[0] = bc.left;
  ns.u[nn - 1] = bc.right;
  for (std::size_t m = 1; m < nc; ++m)
    ns.u[m] = st.u[m] - tau * (ns.q[m] - ns.q[m - 1]) / h;

  std::vector<double> w(nn), v(nc);
  for (std::size_t m = 0; m < nn; ++m) w[m] = 0.5 * (st.u[m] + ns.u[m]);
  advance_volume(st, w, tau, h, v);
  require_positive_volume(v, "korobitsyn");
  ns.x.resize(nn);
  for (std::size_t m = 0; m < nn; ++m) ns.x[m] = st.x[m] + tau * w[m];
  ns.rho.resize(nc);
  for (std::size_t k = 0; k < nc; ++k) ns.rho[k] = 1.0 / v[k];
  ns.p.resize(nc);
  for (std::size_t k = 0; k < nc; ++k)
    ns.p[k] = korobitsyn_pressure(ns.rho, k, (ns.u[k] - st.u[k]) / tau, q, tau);
  return out;
}

}  // namespace swlag
