#include "swlag/invariant_schemes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "swlag/reference_schemes.hpp"

namespace swlag {

double bottom_divided_difference(const BottomProfile& bottom, double a,
                                 double b, bool* regularized) {
  if (regularized) *regularized = false;
  if (bottom.kind() == BottomProfile::Kind::flat) return 0.0;
  if (bottom.kind() == BottomProfile::Kind::linear) return bottom.linear_c1();
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  if (std::abs(a - b) < 1e-12 * scale) {
    if (regularized) *regularized = true;
    return bottom.slope(0.5 * (a + b));
  }
  return (bottom.value(a) - bottom.value(b)) / (a - b);
}

double residual_bottom_energy(const Stencil9& st, const BottomProfile& bottom,
                              bool* regularized) {
  const double f = residual_inv3(st, 0.0);
  return f - bottom_divided_difference(bottom, st.x[2][1], st.x[0][1],
                                       regularized);
}

double residual_bottom_momentum(const Stencil9& st,
                                const BottomProfile& bottom) {
  detail::require_regular(st);
  const double hm = st.h_minus();
  const double a2 = st.xs(2) * st.xs(0);
  const double b2 = st.xsb(2) * st.xsb(0);
  if (!(a2 > 0.0) || !(b2 > 0.0))
    throw SingularStencil("bottom momentum residual needs positive x_s");
  const double A = 1.0 / std::sqrt(a2);
  const double B = 1.0 / std::sqrt(b2);
  const double c = 0.5 * (st.xs(1) + st.xsb(1));
  const double dh = (bottom.value(st.x[1][1]) - bottom.value(st.x[1][0])) / hm;
  return 0.5 * (A + B) * (c * st.xtt() - dh) + (A * A - B * B) / hm;
}

double residual_time_weight(SchemeId id, const Stencil9& st) {
  const double w = 1.0 / (st.tau_plus() * st.tau_minus());
  if (id != SchemeId::inv_bottom_momentum) return w;
  const double a2 = st.xs(2) * st.xs(0);
  const double b2 = st.xsb(2) * st.xsb(0);
  if (!(a2 > 0.0) || !(b2 > 0.0)) return w;
  const double A = 1.0 / std::sqrt(a2);
  const double B = 1.0 / std::sqrt(b2);
  const double c = 0.5 * (st.xs(1) + st.xsb(1));
  return 0.5 * (A + B) * c * w;
}

double inv2_inverse_sqrt_pressure(double rho_prev, double p_prev) {
  if (!(rho_prev > 0.0) || !(p_prev > 0.0))
    throw NonPhysicalState("state relation needs positive rho and p");
  const double a = 2.0 / rho_prev - 1.0 / std::sqrt(p_prev);
  if (!(a > 0.0))
    throw NonPhysicalState("state relation gives non-positive pressure root");
  return a;
}

namespace {

double potential_residual(SchemeId id, const Stencil9& st, double mu,
                          const BottomProfile& bottom, bool* reg) {
  switch (id) {
    case SchemeId::inv3:
      return residual_inv3(st, 0.0);
    case SchemeId::inv3_viscous:
      return residual_inv3(st, mu);
    case SchemeId::inv_bottom_energy:
      return residual_bottom_energy(st, bottom, reg);
    case SchemeId::inv_bottom_momentum:
      return residual_bottom_momentum(st, bottom);
    default:
      throw InvalidConfig("not a potential-coordinate scheme: " +
                          scheme_name(id));
  }
}

SolverOptions solver_options(const SchemeConfig& cfg, int half_bw) {
  SolverOptions o;
  o.eps = cfg.eps_iter;
  o.max_iter = cfg.max_iter;
  o.damping = cfg.damping;
  o.half_bandwidth = half_bw;
  return o;
}

}  // namespace

PotentialStep step_potential(const PotentialHistory& history,
                             const MassMesh& mesh, const SchemeConfig& cfg,
                             const BottomProfile& bottom, double t_new,
                             BoundaryPositions bc) {
  const std::size_t nn = mesh.nodes();
  const auto& xa = history.layers[1];
  const auto& xb = history.layers[2];
  if (xa.size() != nn || xb.size() != nn)
    throw InvalidConfig("potential history does not match mesh");
  const double t0 = history.times[1], t1 = history.times[2];
  const double tp = t_new - t1, tm = t1 - t0;
  const SchemeId id = cfg.scheme;

  std::vector<double> guess(nn - 2);
  for (std::size_t m = 1; m + 1 < nn; ++m)
    guess[m - 1] = xb[m] + (tp / tm) * (xb[m] - xa[m]);

  std::vector<double> full(nn);
  full[0] = bc.left;
  full[nn - 1] = bc.right;
  int regularized = 0;

  auto residual = [&](std::span<const double> z, std::span<double> r) {
    std::copy(z.begin(), z.end(), full.begin() + 1);
    regularized = 0;
    for (std::size_t m = 1; m + 1 < nn; ++m) {
      const auto st = gather_stencil(mesh.s, xa, xb, full, t0, t1, t_new, m);
      bool reg = false;
      const double f = potential_residual(id, st, cfg.mu_visc, bottom, &reg);
      regularized += reg ? 1 : 0;
      r[m - 1] = f / residual_time_weight(id, st);
    }
  };

  auto sol = fixed_point_solve(residual, std::move(guess),
                               solver_options(cfg, 1));
  PotentialStep out;
  out.layer.resize(nn);
  out.layer[0] = bc.left;
  out.layer[nn - 1] = bc.right;
  std::copy(sol.z.begin(), sol.z.end(), out.layer.begin() + 1);
  out.report = sol.report;
  // regularization count at the returned point
  std::vector<double> r(nn - 2);
  residual(sol.z, r);
  out.regularized = regularized;
  return out;
}

PotentialStep step_inv3(const PotentialHistory& history, const MassMesh& mesh,
                        const SchemeConfig& cfg, double t_new,
                        BoundaryPositions bc) {
  if (cfg.scheme != SchemeId::inv3 && cfg.scheme != SchemeId::inv3_viscous)
    throw InvalidConfig("step_inv3 needs scheme inv3 or inv3_viscous");
  return step_potential(history, mesh, cfg, BottomProfile::flat(), t_new, bc);
}

PotentialHistory start_potential_history(const MassMesh& mesh,
                                         const std::vector<double>& x0,
                                         const std::vector<double>& u0,
                                         const BottomProfile& bottom,
                                         double t0) {
  const std::size_t nn = mesh.nodes();
  if (x0.size() != nn || u0.size() != nn)
    throw InvalidConfig("initial data does not match mesh");
  const double tau = mesh.tau;
  std::vector<double> a(nn, 0.0);
  for (std::size_t m = 1; m + 1 < nn; ++m) {
    const double hm = mesh.s[m] - mesh.s[m - 1];
    const double hp = mesh.s[m + 1] - mesh.s[m];
    const double xsp = (x0[m + 1] - x0[m]) / hp;
    const double xsm = (x0[m] - x0[m - 1]) / hm;
    const double xs = 0.5 * (xsp + xsm);
    const double xss = (xsp - xsm) / (0.5 * (hp + hm));
    a[m] = 2.0 * xss / (xs * xs * xs) + bottom.slope(x0[m]);
  }
  PotentialHistory h;
  h.layers[0].resize(nn);
  h.layers[2].resize(nn);
  h.layers[1] = x0;
  for (std::size_t m = 0; m < nn; ++m) {
    const double c = 0.5 * tau * tau * a[m];
    h.layers[0][m] = x0[m] - tau * u0[m] + c;
    h.layers[2][m] = x0[m] + tau * u0[m] + c;
  }
  h.times = {t0 - tau, t0, t0 + tau};
  return h;
}

MassStep step_inv2(const MassState& prev, const MassMesh& mesh,
                   const SchemeConfig& cfg, BoundaryVelocities bc) {
  const std::size_t nc = mesh.cells();
  const std::size_t nn = mesh.nodes();
  const double h = mesh.h, tau = mesh.tau;
  const auto& vp = cfg.viscosity;

  MassStep out;
  MassState& st = out.state;
  st.t = prev.t + tau;
  st.x.resize(nn);
  for (std::size_t m = 0; m < nn; ++m) st.x[m] = prev.x[m] + tau * prev.u[m];
  st.p.resize(nc);
  std::vector<double> vold(nc);
  for (std::size_t k = 0; k < nc; ++k) {
    const double a = inv2_inverse_sqrt_pressure(prev.rho[k], prev.p[k]);
    st.p[k] = 1.0 / (a * a);
    vold[k] = 1.0 / prev.rho[k];
  }

  // z = [V_0, u_1, V_1, ..., u_{M-1}, V_{M-1}]
  const std::size_t nz = 2 * nc - 1;
  std::vector<double> guess(nz);
  for (std::size_t k = 0; k < nc; ++k) guess[2 * k] = vold[k];
  for (std::size_t m = 1; m < nc; ++m) guess[2 * m - 1] = prev.u[m];

  std::vector<double> u(nn), pi(nc);
  u[0] = bc.left;
  u[nn - 1] = bc.right;
  auto residual = [&](std::span<const double> z, std::span<double> r) {
    for (std::size_t m = 1; m < nc; ++m) u[m] = z[2 * m - 1];
    for (std::size_t k = 0; k < nc; ++k) {
      const double v = std::max(z[2 * k], 1e-12 * vold[k]);
      const double rho = 1.0 / v;
      pi[k] = flux_Q(rho, prev.rho[k], st.p[k]) +
              applied_viscosity(rho, (u[k + 1] - u[k]) / h, vp, h);
    }
    for (std::size_t k = 0; k < nc; ++k) {
      const double lam_r = 0.5 * (u[k + 1] + prev.u[k + 1]);
      const double lam_l = 0.5 * (u[k] + prev.u[k]);
      r[2 * k] = z[2 * k] - vold[k] - tau * (lam_r - lam_l) / h;
    }
    for (std::size_t m = 1; m < nc; ++m)
      r[2 * m - 1] = u[m] - prev.u[m] + tau * (pi[m] - pi[m - 1]) / h;
  };

  auto sol = fixed_point_solve(residual, std::move(guess),
                               solver_options(cfg, 2));
  out.report = sol.report;
  st.u.resize(nn);
  st.u[0] = bc.left;
  st.u[nn - 1] = bc.right;
  for (std::size_t m = 1; m < nc; ++m) st.u[m] = sol.z[2 * m - 1];
  st.rho.resize(nc);
  st.q.resize(nc);
  for (std::size_t k = 0; k < nc; ++k) {
    const double v = sol.z[2 * k];
    if (!(v > 0.0)) {
      std::ostringstream os;
      os << "inv2: non-positive specific volume at cell " << k;
      throw NonPhysicalState(os.str());
    }
    st.rho[k] = 1.0 / v;
    st.q[k] = flux_Q(st.rho[k], prev.rho[k], st.p[k]) +
              applied_viscosity(st.rho[k], (st.u[k + 1] - st.u[k]) / h, vp, h);
  }
  return out;
}

MassStep step_inv3_mass(const MassState& older, const MassState& newer,
                        const MassMesh& mesh, const SchemeConfig& cfg,
                        BoundaryVelocities bc) {
  const std::size_t nc = mesh.cells();
  const std::size_t nn = mesh.nodes();
  const double h = mesh.h, tau = mesh.tau;
  const auto& vp = cfg.viscosity;

  std::vector<double> u(nn), rho_new(nc), flux(nc);
  u[0] = bc.left;
  u[nn - 1] = bc.right;
  auto new_density = [&](std::size_t k) {
    const double v = 1.0 / newer.rho[k] + tau * (u[k + 1] - u[k]) / h;
    return 1.0 / std::max(v, 1e-12 / newer.rho[k]);
  };
  auto residual = [&](std::span<const double> z, std::span<double> r) {
    for (std::size_t m = 1; m < nc; ++m) u[m] = z[m - 1];
    for (std::size_t k = 0; k < nc; ++k) {
      rho_new[k] = new_density(k);
      flux[k] = rho_new[k] * older.rho[k] +
                applied_viscosity(rho_new[k], (u[k + 1] - u[k]) / h, vp, h);
    }
    for (std::size_t m = 1; m < nc; ++m)
      r[m - 1] = u[m] - newer.u[m] + tau * (flux[m] - flux[m - 1]) / h;
  };
  std::vector<double> guess(newer.u.begin() + 1, newer.u.end() - 1);
  auto sol = fixed_point_solve(residual, std::move(guess),
                               solver_options(cfg, 1));

  MassStep out;
  out.report = sol.report;
  MassState& st = out.state;
  st.t = newer.t + tau;
  st.u.resize(nn);
  st.u[0] = bc.left;
  st.u[nn - 1] = bc.right;
  for (std::size_t m = 1; m < nc; ++m) st.u[m] = sol.z[m - 1];
  st.x.resize(nn);
  for (std::size_t m = 0; m < nn; ++m) st.x[m] = newer.x[m] + tau * st.u[m];
  st.rho.resize(nc);
  st.p.resize(nc);
  st.q.resize(nc);
  for (std::size_t k = 0; k < nc; ++k) {
    const double v = 1.0 / newer.rho[k] + tau * (st.u[k + 1] - st.u[k]) / h;
    if (!(v > 0.0)) {
      std::ostringstream os;
      os << "inv3_mass: non-positive specific volume at cell " << k;
      throw NonPhysicalState(os.str());
    }
    st.rho[k] = 1.0 / v;
    st.p[k] = st.rho[k] * st.rho[k];
    st.q[k] = st.rho[k] * older.rho[k] +
              applied_viscosity(st.rho[k], (st.u[k + 1] - st.u[k]) / h, vp, h);
  }
  return out;
}

namespace {
PotentialHistory shift_parabola(const PotentialHistory& h, double c1,
                                double tau, double sign) {
  PotentialHistory out = h;
  for (int k = 0; k < 3; ++k) {
    const double t = h.times[static_cast<std::size_t>(k)];
    const double shift = sign * 0.5 * c1 * t * (t + tau);
    for (double& x : out.layers[static_cast<std::size_t>(k)]) x += shift;
  }
  return out;
}
}  // namespace

PotentialHistory transform_linear_to_flat(const PotentialHistory& h,
                                          double c1, double tau) {
  return shift_parabola(h, c1, tau, -1.0);
}

PotentialHistory transform_flat_to_linear(const PotentialHistory& h,
                                          double c1, double tau) {
  return shift_parabola(h, c1, tau, 1.0);
}

}  // namespace swlag
