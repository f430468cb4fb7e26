#pragma once

#include <array>
#include <string>
#include <vector>

#include "swlag/core_state.hpp"

namespace swlag {

enum class Law { mass, momentum, energy, center_of_mass };
inline constexpr std::array<Law, 4> kLaws = {Law::mass, Law::momentum,
                                             Law::energy, Law::center_of_mass};
std::string law_name(Law law);

// conserved: divergence identity of the scheme, asserted in runs.
// stated: printed conservation law that is not an identity of the scheme.
// balance: identity with a non-conservative source (explicit-scheme energy).
// monitor: control quantity, reported only.
enum class LawStatus { conserved, stated, balance, monitor, undefined };
std::string status_name(LawStatus s);

// One time step of a discrete law on an index set of n entries:
//   (density_new - density_old)/dt + (flux[k+1] - flux[k])/h
//       = source[k] + rhs[k],
// where rhs is the multiplier-weighted sum of scheme residuals (zero on
// exact solutions) and source collects known non-conservative terms such as
// viscous work.
struct LawTransition {
  LawStatus status = LawStatus::undefined;
  double dt = 0.0;
  double h = 0.0;
  std::vector<double> density_old, density_new, flux, source, rhs;

  std::size_t size() const { return density_new.size(); }
  double lhs(std::size_t k) const;
  double identity_defect(std::size_t k) const;
  double identity_scale(std::size_t k) const;
  // max_k |identity_defect| / identity_scale
  double max_relative_identity_defect() const;
};

struct LawOptions {
  // Use the three-level flux form for the Yelenin-Krylov energy law.
  bool yelenin_three_level_flux = false;
};

// Potential-coordinate schemes. Level n is history.current(); densities use
// layers (n-1, n) and (n, n+1), fluxes use all three.
LawTransition cl_density_flux(SchemeId id, Law law, const PotentialHistory& h,
                              const MassMesh& mesh, const SchemeConfig& cfg,
                              const BottomProfile& bottom);

// Two-level mass schemes: inv2, explicit, sampop, yelenin, korobitsyn.
LawTransition cl_density_flux(SchemeId id, Law law, const MassState& prev,
                              const MassState& next, const MassMesh& mesh,
                              const SchemeConfig& cfg,
                              const LawOptions& opt = {});

// Three-level mass scheme (inv3_mass) over states n-1, n, n+1.
LawTransition cl_density_flux(Law law, const MassState& older,
                              const MassState& middle, const MassState& newer,
                              const MassMesh& mesh, const SchemeConfig& cfg);

// Momentum flux of a two-level mass scheme, recomputed from layer data.
std::vector<double> scheme_momentum_flux(SchemeId id, const MassState& prev,
                                         const MassState& next,
                                         const MassMesh& mesh,
                                         const SchemeConfig& cfg);

// inv2 internal energy p/(2 sqrt(p) - rho).
double inv2_internal_energy(double rho, double p);

struct LawLedger {
  LawStatus status = LawStatus::undefined;
  double initial_total = 0.0;
  double current_total = 0.0;
  double boundary = 0.0;  // accumulated tau * (flux_right - flux_left)
  double source = 0.0;    // accumulated tau * h * sum(source)
  double last_step_drift = 0.0;
  double last_step_source = 0.0;

  // current - initial + boundary outflow
  double drift() const { return current_total - initial_total + boundary; }
  // |drift - source|
  double defect() const;
  double scale() const;
  double relative_drift() const;
  double relative_defect() const;
};

struct ConservationLedger {
  std::array<LawLedger, 4> laws{};
  long steps = 0;
  bool started = false;
  LawLedger& operator[](Law l) { return laws[static_cast<std::size_t>(l)]; }
  const LawLedger& operator[](Law l) const {
    return laws[static_cast<std::size_t>(l)];
  }
};

// Adds one transition per law. The first call also fixes the initial totals
// from density_old.
void ledger_update(ConservationLedger& ledger,
                   const std::array<LawTransition, 4>& step);

}  // namespace swlag
