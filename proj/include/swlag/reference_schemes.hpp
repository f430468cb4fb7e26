#pragma once

#include "swlag/core_state.hpp"
#include "swlag/invariant_schemes.hpp"

namespace swlag {

// omega = -nu rho u_s + 0.5 (1 + gamma) rho l u_s^2 with l = kappa h / pi,
// or l = (kappa h / pi)^2 when squared_length is set.
double artificial_viscosity(double rho, double u_s, double nu, double kappa,
                            double gamma, double h,
                            bool squared_length = false);

// omega as applied inside scheme fluxes: zero in expansion when
// compression_only is set.
double applied_viscosity(double rho, double u_s, const ViscosityParams& vp,
                         double h);

// Explicit scheme. The state velocity moves the mesh: X^{n+1} = X^n + tau u^n.
// bc gives the new boundary velocities.
MassStep step_explicit(const MassState& st, const MassMesh& mesh,
                       const SchemeConfig& cfg, BoundaryVelocities bc);

// Implicit Samarskiy-Popov scheme with internal-energy track.
MassStep step_samarskiy_popov(const MassState& st, const MassMesh& mesh,
                              const SchemeConfig& cfg, BoundaryVelocities bc);

// Modified Yelenin-Krylov scheme with the potential P (P = rho0^2 at rest).
MassStep step_yelenin_krylov(const MassState& st, const MassMesh& mesh,
                             const SchemeConfig& cfg, BoundaryVelocities bc);

// Korobitsyn explicit scheme with parameter q in [0, 1].
MassStep step_korobitsyn(const MassState& st, const MassMesh& mesh,
                         const SchemeConfig& cfg, BoundaryVelocities bc);

// Korobitsyn pressure at cell m from new densities (mirror rho_{-1} = rho_0)
// and the node-m acceleration u_t.
double korobitsyn_pressure(const std::vector<double>& rho_new, std::size_t m,
                           double u_t, double q, double tau);

// Fills the scheme-specific auxiliary tracks of a rest state.
void prepare_state(SchemeId id, MassState& st);

}  // namespace swlag
