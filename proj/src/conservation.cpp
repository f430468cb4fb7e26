#include "swlag/conservation.hpp"

#include <algorithm>
#include <cmath>

#include "swlag/errors.hpp"
#include "swlag/invariant_schemes.hpp"
#include "swlag/reference_schemes.hpp"

namespace swlag {

std::string law_name(Law law) {
  switch (law) {
    case Law::mass:
      return "mass";
    case Law::momentum:
      return "momentum";
    case Law::energy:
      return "energy";
    case Law::center_of_mass:
      return "center_of_mass";
  }
  return "?";
}

std::string status_name(LawStatus s) {
  switch (s) {
    case LawStatus::conserved:
      return "conserved";
    case LawStatus::stated:
      return "stated";
    case LawStatus::balance:
      return "balance";
    case LawStatus::monitor:
      return "monitor";
    case LawStatus::undefined:
      return "undefined";
  }
  return "?";
}

double LawTransition::lhs(std::size_t k) const {
  return (density_new[k] - density_old[k]) / dt + (flux[k + 1] - flux[k]) / h;
}

double LawTransition::identity_defect(std::size_t k) const {
  return lhs(k) - source[k] - rhs[k];
}

double LawTransition::identity_scale(std::size_t k) const {
  return (std::abs(density_new[k]) + std::abs(density_old[k])) / std::abs(dt) +
         (std::abs(flux[k + 1]) + std::abs(flux[k])) / std::abs(h) +
         std::abs(source[k]) + std::abs(rhs[k]);
}

double LawTransition::max_relative_identity_defect() const {
  double worst = 0.0;
  for (std::size_t k = 0; k < size(); ++k) {
    const double sc = std::max(identity_scale(k), 1e-300);
    worst = std::max(worst, std::abs(identity_defect(k)) / sc);
  }
  return worst;
}

double inv2_internal_energy(double rho, double p) {
  const double d = 2.0 * std::sqrt(p) - rho;
  if (d == 0.0) throw SingularStencil("inv2 internal energy: 2 sqrt(p) = rho");
  return p / d;
}

namespace {

LawTransition make(LawStatus st, std::size_t n, double dt, double h) {
  LawTransition t;
  t.status = st;
  t.dt = dt;
  t.h = h;
  t.density_old.assign(n, 0.0);
  t.density_new.assign(n, 0.0);
  t.flux.assign(n + 1, 0.0);
  t.source.assign(n, 0.0);
  t.rhs.assign(n, 0.0);
  return t;
}

LawTransition undefined_law() { return LawTransition{}; }

double cube(double a) { return a * a * a; }

}  // namespace

// ---------------------------------------------------------------------------
// potential coordinates

LawTransition cl_density_flux(SchemeId id, Law law, const PotentialHistory& hs,
                              const MassMesh& mesh, const SchemeConfig& cfg,
                              const BottomProfile& bottom) {
  if (!is_potential_scheme(id))
    throw InvalidConfig("not a potential-coordinate scheme");
  const auto& L0 = hs.layers[0];
  const auto& L1 = hs.layers[1];
  const auto& L2 = hs.layers[2];
  const double t0 = hs.times[0], t1 = hs.times[1], t2 = hs.times[2];
  const double tm = t1 - t0, tp = t2 - t1;
  const std::size_t nc = mesh.cells(), nn = mesh.nodes();
  const double h = mesh.step(0);
  const double mu = id == SchemeId::inv3_viscous ? cfg.mu_visc : 0.0;

  auto xs = [&](const std::vector<double>& L, std::size_t k) {
    return (L[k + 1] - L[k]) / mesh.step(k);
  };
  std::vector<double> phi0(nc), phi(nc), xt(nn), xtc(nn), F(nn, 0.0);
  for (std::size_t k = 0; k < nc; ++k) {
    phi0[k] = 1.0 / (xs(L2, k) * xs(L0, k));
    phi[k] = phi0[k] + 0.5 * mu * (xs(L2, k) + xs(L0, k));
  }
  for (std::size_t m = 0; m < nn; ++m) {
    xt[m] = (L2[m] - L1[m]) / tp;
    xtc[m] = (L1[m] - L0[m]) / tm;
  }
  for (std::size_t m = 1; m + 1 < nn; ++m) {
    const auto st = gather_stencil(mesh.s, L0, L1, L2, t0, t1, t2, m);
    switch (id) {
      case SchemeId::inv3:
      case SchemeId::inv3_viscous:
        F[m] = residual_inv3(st, mu);
        break;
      case SchemeId::inv_bottom_energy:
        F[m] = residual_bottom_energy(st, bottom);
        break;
      default:
        F[m] = residual_bottom_momentum(st, bottom);
        break;
    }
  }

  const bool plain = id == SchemeId::inv3 || id == SchemeId::inv3_viscous;
  const std::size_t ni = nn - 2;  // interior nodes 1..M-1

  switch (law) {
    case Law::mass: {
      auto t = make(LawStatus::conserved, nc, tp, h);
      for (std::size_t k = 0; k < nc; ++k) {
        t.density_old[k] = xs(L1, k);
        t.density_new[k] = xs(L2, k);
      }
      for (std::size_t j = 0; j < nn; ++j) t.flux[j] = -xt[j];
      return t;
    }
    case Law::momentum: {
      if (plain) {
        auto t = make(LawStatus::conserved, ni, tm, h);
        for (std::size_t k = 0; k < ni; ++k) {
          const std::size_t m = k + 1;
          t.density_old[k] = xtc[m];
          t.density_new[k] = xt[m];
          t.rhs[k] = F[m];
        }
        for (std::size_t j = 0; j < nc; ++j) t.flux[j] = phi[j];
        return t;
      }
      if (id == SchemeId::inv_bottom_momentum) {
        auto t = make(LawStatus::conserved, ni, tm, h);
        std::vector<double> A(nc);
        for (std::size_t j = 0; j < nc; ++j)
          A[j] = 1.0 / std::sqrt(xs(L2, j) * xs(L0, j));
        for (std::size_t k = 0; k < ni; ++k) {
          const std::size_t m = k + 1;
          t.density_old[k] = 0.5 * xtc[m] * (xs(L1, m) + xs(L1, m - 1));
          t.density_new[k] = 0.5 * xt[m] * (xs(L2, m) + xs(L2, m - 1));
          t.rhs[k] = 2.0 * F[m] / (A[m] + A[m - 1]);
        }
        for (std::size_t j = 0; j < nc; ++j)
          t.flux[j] = 2.0 * A[j] - 0.5 * xt[j] * xt[j + 1] - bottom.value(L1[j]);
        return t;
      }
      return undefined_law();
    }
    case Law::center_of_mass: {
      if (!plain) return undefined_law();
      auto t = make(LawStatus::conserved, ni, tm, h);
      for (std::size_t k = 0; k < ni; ++k) {
        const std::size_t m = k + 1;
        t.density_old[k] = t0 * xtc[m] - L0[m];
        t.density_new[k] = t1 * xt[m] - L1[m];
        t.rhs[k] = t1 * F[m];
      }
      for (std::size_t j = 0; j < nc; ++j) t.flux[j] = t1 * phi[j];
      return t;
    }
    case Law::energy: {
      if (id == SchemeId::inv_bottom_momentum) return undefined_law();
      const bool hb = id == SchemeId::inv_bottom_energy;
      auto t = make(LawStatus::conserved, ni, tm, h);
      for (std::size_t k = 0; k < ni; ++k) {
        const std::size_t m = k + 1;
        double eo = 0.5 * xtc[m] * xtc[m] + 0.5 * (1.0 / xs(L0, m) + 1.0 / xs(L1, m));
        double en = 0.5 * xt[m] * xt[m] + 0.5 * (1.0 / xs(L1, m) + 1.0 / xs(L2, m));
        if (mu != 0.0) {
          const double a0 = xs(L0, m - 1), a1 = xs(L1, m - 1), a2 = xs(L2, m - 1);
          eo -= 0.25 * mu * (a0 * a0 + a1 * a1);
          en -= 0.25 * mu * (a1 * a1 + a2 * a2);
        }
        if (hb) {
          eo -= 0.5 * (bottom.value(L0[m]) + bottom.value(L1[m]));
          en -= 0.5 * (bottom.value(L1[m]) + bottom.value(L2[m]));
        }
        t.density_old[k] = eo;
        t.density_new[k] = en;
        t.rhs[k] = 0.5 * (xt[m] + xtc[m]) * F[m];
      }
      for (std::size_t j = 0; j < nc; ++j) {
        double g = 0.5 * (xt[j + 1] + xtc[j + 1]) * phi0[j];
        if (mu != 0.0)
          g += mu * (L2[j] - L0[j]) * (xs(L2, j) + xs(L0, j)) / (4.0 * tm);
        t.flux[j] = g;
      }
      return t;
    }
  }
  return undefined_law();
}

// ---------------------------------------------------------------------------
// two-level mass schemes

std::vector<double> scheme_momentum_flux(SchemeId id, const MassState& P,
                                         const MassState& N,
                                         const MassMesh& mesh,
                                         const SchemeConfig& cfg) {
  const std::size_t nc = mesh.cells();
  const double h = mesh.h;
  const auto& vp = cfg.viscosity;
  std::vector<double> pi(nc);
  for (std::size_t k = 0; k < nc; ++k) {
    const double usn = (N.u[k + 1] - N.u[k]) / h;
    const double uso = (P.u[k + 1] - P.u[k]) / h;
    switch (id) {
      case SchemeId::inv2:
        pi[k] = flux_Q(N.rho[k], P.rho[k], N.p[k]) +
                applied_viscosity(N.rho[k], usn, vp, h);
        break;
      case SchemeId::explicit_scheme:
        pi[k] = P.rho[k] * N.rho[k] + applied_viscosity(N.rho[k], uso, vp, h);
        break;
      case SchemeId::sampop:
        pi[k] = N.rho[k] * N.rho[k] + applied_viscosity(N.rho[k], usn, vp, h);
        break;
      case SchemeId::yelenin: {
        const double v0 = 1.0 / P.rho[k], v1 = 1.0 / N.rho[k];
        pi[k] = 0.5 * (N.potential[k] + P.potential[k]) +
                0.5 * (v1 + v0) * (cube(N.rho[k]) + cube(P.rho[k]));
        break;
      }
      case SchemeId::korobitsyn:
        pi[k] = P.p[k] + applied_viscosity(P.rho[k], uso, vp, h);
        break;
      default:
        throw InvalidConfig("no two-level momentum flux for " + scheme_name(id));
    }
  }
  return pi;
}

LawTransition cl_density_flux(SchemeId id, Law law, const MassState& P,
                              const MassState& N, const MassMesh& mesh,
                              const SchemeConfig& cfg, const LawOptions& opt) {
  const std::size_t nc = mesh.cells(), nn = mesh.nodes();
  const double h = mesh.h, tau = mesh.tau;
  const auto& vp = cfg.viscosity;

  // continuity velocity and kinematic velocity
  std::vector<double> cv(nn), kv(nn);
  for (std::size_t m = 0; m < nn; ++m) {
    const double avg = 0.5 * (P.u[m] + N.u[m]);
    switch (id) {
      case SchemeId::inv2:
        cv[m] = avg;
        kv[m] = P.u[m];
        break;
      case SchemeId::explicit_scheme:
        cv[m] = kv[m] = P.u[m];
        break;
      case SchemeId::sampop:
      case SchemeId::yelenin:
      case SchemeId::korobitsyn:
        cv[m] = kv[m] = avg;
        break;
      default:
        throw InvalidConfig("not a two-level mass scheme: " + scheme_name(id));
    }
  }
  const auto pi = scheme_momentum_flux(id, P, N, mesh, cfg);
  std::vector<double> vo(nc), vn(nc), cont(nc), mom(nn, 0.0), kin(nn);
  for (std::size_t k = 0; k < nc; ++k) {
    vo[k] = 1.0 / P.rho[k];
    vn[k] = 1.0 / N.rho[k];
    cont[k] = (vn[k] - vo[k]) / tau - (cv[k + 1] - cv[k]) / h;
  }
  for (std::size_t m = 1; m + 1 < nn; ++m)
    mom[m] = (N.u[m] - P.u[m]) / tau + (pi[m] - pi[m - 1]) / h;
  for (std::size_t m = 0; m < nn; ++m)
    kin[m] = kv[m] - (N.x[m] - P.x[m]) / tau;
  const std::size_t ni = nn - 2;

  switch (law) {
    case Law::mass: {
      auto t = make(LawStatus::conserved, nc, tau, h);
      t.density_old = vo;
      t.density_new = vn;
      for (std::size_t j = 0; j < nn; ++j) t.flux[j] = -cv[j];
      t.rhs = cont;
      return t;
    }
    case Law::momentum: {
      auto t = make(LawStatus::conserved, ni, tau, h);
      for (std::size_t k = 0; k < ni; ++k) {
        t.density_old[k] = P.u[k + 1];
        t.density_new[k] = N.u[k + 1];
        t.rhs[k] = mom[k + 1];
      }
      t.flux = pi;
      return t;
    }
    case Law::center_of_mass: {
      double a, b, c;
      if (id == SchemeId::explicit_scheme) {
        a = P.t - tau;
        b = c = P.t;
      } else if (id == SchemeId::inv2) {
        a = P.t;
        b = c = N.t;
      } else {
        a = P.t;
        b = N.t;
        c = 0.5 * (P.t + N.t);
      }
      auto t = make(LawStatus::conserved, ni, tau, h);
      for (std::size_t k = 0; k < ni; ++k) {
        const std::size_t m = k + 1;
        t.density_old[k] = a * P.u[m] - P.x[m];
        t.density_new[k] = b * N.u[m] - N.x[m];
        t.rhs[k] = c * mom[m] + kin[m];
      }
      for (std::size_t j = 0; j < nc; ++j) t.flux[j] = c * pi[j];
      return t;
    }
    case Law::energy:
      break;
  }

  if (id == SchemeId::inv2) {
    auto t = make(LawStatus::conserved, ni, tau, h);
    for (std::size_t k = 0; k < ni; ++k) {
      const std::size_t m = k + 1;
      t.density_old[k] = 0.5 * P.u[m] * P.u[m] + inv2_internal_energy(P.rho[m], P.p[m]);
      t.density_new[k] = 0.5 * N.u[m] * N.u[m] + inv2_internal_energy(N.rho[m], N.p[m]);
      const double q0 = flux_Q(N.rho[m], P.rho[m], N.p[m]);
      const double om = pi[m] - q0;
      t.rhs[k] = cv[m] * mom[m] - q0 * cont[m];
      t.source[k] = om * (cv[m + 1] - cv[m]) / h;
    }
    for (std::size_t j = 0; j < nc; ++j) t.flux[j] = cv[j + 1] * pi[j];
    return t;
  }

  if (id == SchemeId::explicit_scheme) {
    auto t = make(LawStatus::balance, ni, tau, h);
    for (std::size_t k = 0; k < ni; ++k) {
      const std::size_t m = k + 1;
      t.density_old[k] = 0.5 * P.u[m] * P.u[m] + P.rho[m];
      t.density_new[k] = 0.5 * N.u[m] * N.u[m] + N.rho[m];
      const double ut = (N.u[m] - P.u[m]) / tau;
      const double om = pi[m] - P.rho[m] * N.rho[m];
      t.rhs[k] = P.u[m] * mom[m] - P.rho[m] * N.rho[m] * cont[m];
      t.source[k] = 0.5 * ut * ut * tau + om * (P.u[m + 1] - P.u[m]) / h;
    }
    for (std::size_t j = 0; j < nc; ++j) t.flux[j] = P.u[j + 1] * pi[j];
    return t;
  }

  if (id == SchemeId::sampop) {
    if (P.internal_energy.size() != nc || N.internal_energy.size() != nc ||
        P.q.size() != nc)
      throw InvalidConfig("sampop energy monitor needs energy and pressure tracks");
    // cell k pairs with node k+1; node M borrows cell M-1 pressures
    auto qo = [&](std::size_t j) { return P.q[std::min(j, nc - 1)]; };
    auto qn = [&](std::size_t j) { return pi[std::min(j, nc - 1)]; };
    auto t = make(LawStatus::monitor, nc, tau, h);
    for (std::size_t k = 0; k < nc; ++k) {
      t.density_old[k] = P.internal_energy[k] + 0.5 * P.u[k + 1] * P.u[k + 1];
      t.density_new[k] = N.internal_energy[k] + 0.5 * N.u[k + 1] * N.u[k + 1];
      const double eres = (N.internal_energy[k] - P.internal_energy[k]) / tau +
                          pi[k] * (vn[k] - vo[k]) / tau;
      const double mk1 = (N.u[k + 1] - P.u[k + 1]) / tau + (qn(k + 1) - qn(k)) / h;
      t.rhs[k] = eres - pi[k] * cont[k] + cv[k + 1] * mk1;
      t.source[k] = -(cv[k + 1] * (qn(k + 1) - qo(k + 1)) -
                      cv[k] * (qn(k) - qo(k))) / (2.0 * h);
    }
    for (std::size_t j = 0; j < nn; ++j)
      t.flux[j] = 0.5 * cv[j] * (qo(j) + qn(j));
    return t;
  }

  if (id == SchemeId::yelenin) {
    if (P.potential.size() != nc || N.potential.size() != nc)
      throw InvalidConfig("yelenin energy law needs the potential track");
    // cells 1..M-2; node j flux uses Pi_j and Pi_{j-1}
    const std::size_t n = nc - 2;
    auto t = make(LawStatus::stated, n, tau, h);
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t c = k + 1;
      t.density_old[k] = 0.25 * (P.u[c] * P.u[c] + P.u[c + 1] * P.u[c + 1]) +
                         P.potential[c] / P.rho[c];
      t.density_new[k] = 0.25 * (N.u[c] * N.u[c] + N.u[c + 1] * N.u[c + 1]) +
                         N.potential[c] / N.rho[c];
    }
    for (std::size_t f = 0; f <= n; ++f) {
      const std::size_t j = f + 1;
      if (!opt.yelenin_three_level_flux) {
        t.flux[f] = 0.5 * cv[j] * (pi[j] - pi[j - 1]);
      } else {
        auto F = [&](std::size_t c) {
          const double v0 = 1.0 / P.rho[c], v1 = 1.0 / N.rho[c];
          return 0.5 * (N.potential[c] + P.potential[c]) -
                 0.5 * (v1 + v0) * (cube(N.rho[c]) + cube(P.rho[c]));
        };
        t.flux[f] = cv[j] * 0.5 * (F(j) + F(j - 1));
      }
    }
    return t;
  }

  if (id == SchemeId::korobitsyn) {
    // cells 2..M-2; node j flux uses cells j, j-1, j-2
    const double q = cfg.q_korob;
    const std::size_t n = nc - 3;
    auto t = make(LawStatus::stated, n, tau, h);
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t c = k + 2;
      t.density_old[k] = 0.5 * (P.u[c] * P.u[c] + P.u[c + 1] * P.u[c + 1]);
      t.density_new[k] = 0.5 * (N.u[c] * N.u[c] + N.u[c + 1] * N.u[c + 1]);
    }
    for (std::size_t f = 0; f <= n; ++f) {
      const std::size_t j = f + 2;
      const double ut = (N.u[j] - P.u[j]) / tau;
      const double utm = (N.u[j - 1] - P.u[j - 1]) / tau;
      const double r = P.rho[j], rm = P.rho[j - 1], rmm = P.rho[j - 2];
      t.flux[f] = (N.u[j] + P.u[j]) / 8.0 *
                  ((r + rm) * (r + 0.25 * q * tau * tau * ut * ut) +
                   (rm + rmm) * (rm + 0.25 * q * tau * tau * utm * utm));
    }
    return t;
  }
  (void)vp;
  return undefined_law();
}

// ---------------------------------------------------------------------------
// three-level mass scheme

LawTransition cl_density_flux(Law law, const MassState& O, const MassState& Mi,
                              const MassState& N, const MassMesh& mesh,
                              const SchemeConfig& cfg) {
  const std::size_t nc = mesh.cells(), nn = mesh.nodes();
  const double h = mesh.h, tau = mesh.tau;
  const auto& vp = cfg.viscosity;
  // u^n = N.u, u^{n-1} = Mi.u; rho^{n-1}, rho^n, rho^{n+1} = O, Mi, N
  std::vector<double> phi0(nc), phi(nc), cn(nc), cm(nc), lam(nn), R(nn, 0.0);
  for (std::size_t k = 0; k < nc; ++k) {
    phi0[k] = N.rho[k] * O.rho[k];
    phi[k] = phi0[k] + applied_viscosity(N.rho[k], (N.u[k + 1] - N.u[k]) / h, vp, h);
    cn[k] = (1.0 / N.rho[k] - 1.0 / Mi.rho[k]) / tau - (N.u[k + 1] - N.u[k]) / h;
    cm[k] = (1.0 / Mi.rho[k] - 1.0 / O.rho[k]) / tau - (Mi.u[k + 1] - Mi.u[k]) / h;
  }
  for (std::size_t m = 0; m < nn; ++m) lam[m] = 0.5 * (N.u[m] + Mi.u[m]);
  for (std::size_t m = 1; m + 1 < nn; ++m)
    R[m] = (N.u[m] - Mi.u[m]) / tau + (phi[m] - phi[m - 1]) / h;
  const std::size_t ni = nn - 2;

  switch (law) {
    case Law::mass: {
      auto t = make(LawStatus::conserved, nc, tau, h);
      for (std::size_t k = 0; k < nc; ++k) {
        t.density_old[k] = 1.0 / Mi.rho[k];
        t.density_new[k] = 1.0 / N.rho[k];
      }
      for (std::size_t j = 0; j < nn; ++j) t.flux[j] = -N.u[j];
      t.rhs = cn;
      return t;
    }
    case Law::momentum: {
      auto t = make(LawStatus::conserved, ni, tau, h);
      for (std::size_t k = 0; k < ni; ++k) {
        t.density_old[k] = Mi.u[k + 1];
        t.density_new[k] = N.u[k + 1];
        t.rhs[k] = R[k + 1];
      }
      t.flux = phi;
      return t;
    }
    case Law::center_of_mass: {
      auto t = make(LawStatus::conserved, ni, tau, h);
      for (std::size_t k = 0; k < ni; ++k) {
        const std::size_t m = k + 1;
        t.density_old[k] = O.t * Mi.u[m] - O.x[m];
        t.density_new[k] = Mi.t * N.u[m] - Mi.x[m];
        const double kin = Mi.u[m] - (Mi.x[m] - O.x[m]) / tau;
        t.rhs[k] = Mi.t * R[m] + kin;
      }
      for (std::size_t j = 0; j < nc; ++j) t.flux[j] = Mi.t * phi[j];
      return t;
    }
    case Law::energy: {
      auto t = make(LawStatus::conserved, ni, tau, h);
      for (std::size_t k = 0; k < ni; ++k) {
        const std::size_t m = k + 1;
        t.density_old[k] = 0.5 * Mi.u[m] * Mi.u[m] + 0.5 * (O.rho[m] + Mi.rho[m]);
        t.density_new[k] = 0.5 * N.u[m] * N.u[m] + 0.5 * (Mi.rho[m] + N.rho[m]);
        t.rhs[k] = lam[m] * R[m] - 0.5 * phi0[m] * (cn[m] + cm[m]);
        t.source[k] = (phi[m] - phi0[m]) * (lam[m + 1] - lam[m]) / h;
      }
      for (std::size_t j = 0; j < nc; ++j) t.flux[j] = lam[j + 1] * phi[j];
      return t;
    }
  }
  return undefined_law();
}

// ---------------------------------------------------------------------------
// ledger

double LawLedger::defect() const { return std::abs(drift() - source); }

double LawLedger::scale() const {
  return std::max({std::abs(initial_total), std::abs(current_total),
                   std::abs(boundary), std::abs(source), 1e-300});
}

double LawLedger::relative_drift() const { return std::abs(drift()) / scale(); }

double LawLedger::relative_defect() const { return defect() / scale(); }

void ledger_update(ConservationLedger& ledger,
                   const std::array<LawTransition, 4>& step) {
  for (std::size_t i = 0; i < 4; ++i) {
    const LawTransition& t = step[i];
    LawLedger& L = ledger.laws[i];
    L.status = t.status;
    if (t.status == LawStatus::undefined) continue;
    double old_total = 0.0, new_total = 0.0, src = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
      old_total += t.h * t.density_old[k];
      new_total += t.h * t.density_new[k];
      src += t.dt * t.h * t.source[k];
    }
    if (!ledger.started) {
      L.initial_total = old_total;
      L.current_total = old_total;
    }
    const double bflux = t.dt * (t.flux.back() - t.flux.front());
    L.last_step_drift = new_total - old_total + bflux;
    L.last_step_source = src;
    L.current_total = new_total;
    L.boundary += bflux;
    L.source += src;
  }
  ledger.started = true;
  ++ledger.steps;
}

}  // namespace swlag
