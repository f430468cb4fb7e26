#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "swlag/core_state.hpp"
#include "swlag/errors.hpp"
#include "swlag/implicit_solver.hpp"

namespace swlag {

// Nine-point potential stencil with absolute coordinates.
// x[k][j]: k = 0,1,2 for t_{n-1}, t_n, t_{n+1}; j = 0,1,2 for s_{m-1}, s_m,
// s_{m+1}.
template <class T>
struct Stencil9T {
  std::array<T, 3> t{};
  std::array<T, 3> s{};
  std::array<std::array<T, 3>, 3> x{};

  T tau_minus() const { return t[1] - t[0]; }
  T tau_plus() const { return t[2] - t[1]; }
  T h_minus() const { return s[1] - s[0]; }
  T h_plus() const { return s[2] - s[1]; }
  T xs(int k) const { return (x[k][2] - x[k][1]) / h_plus(); }
  T xsb(int k) const { return (x[k][1] - x[k][0]) / h_minus(); }
  T xt() const { return (x[2][1] - x[1][1]) / tau_plus(); }
  T xt_check() const { return (x[1][1] - x[0][1]) / tau_minus(); }
  T xtt() const { return (xt() - xt_check()) / tau_minus(); }
};

using Stencil9 = Stencil9T<double>;

namespace detail {
template <class T>
void require_regular(const Stencil9T<T>& st) {
  using std::abs;
  if (st.tau_minus() == T(0) || st.tau_plus() == T(0) ||
      st.h_minus() == T(0) || st.h_plus() == T(0))
    throw SingularStencil("degenerate stencil spacing");
}
}  // namespace detail

// Three-level invariant residual with optional viscous term mu.
template <class T>
T residual_inv3(const Stencil9T<T>& st, T mu = T(0)) {
  detail::require_regular(st);
  const T hm = st.h_minus();
  const T a = st.xs(2) * st.xs(0);
  const T b = st.xsb(2) * st.xsb(0);
  if (a == T(0) || b == T(0))
    throw SingularStencil("zero layer spacing in flux");
  T f = st.xtt() + (T(1) / a - T(1) / b) / hm;
  if (mu != T(0)) {
    const T xss_hat = (st.xs(2) - st.xsb(2)) / hm;
    const T xss_chk = (st.xs(0) - st.xsb(0)) / hm;
    f += mu * (xss_hat + xss_chk) / T(2);
  }
  return f;
}

// Divided difference (H(a) - H(b))/(a - b), replaced by H'((a+b)/2) when
// a and b nearly coincide.
double bottom_divided_difference(const BottomProfile& bottom, double a,
                                 double b, bool* regularized = nullptr);

// Energy-preserving bottom residual.
double residual_bottom_energy(const Stencil9& st, const BottomProfile& bottom,
                              bool* regularized = nullptr);

// Momentum-preserving bottom residual.
double residual_bottom_momentum(const Stencil9& st,
                                const BottomProfile& bottom);

// Coefficient of x_{t tcheck} in a residual, used to precondition the
// fixed-point map.
double residual_time_weight(SchemeId id, const Stencil9& st);

// Two-level momentum flux Q(rho, rho_prev, p).
template <class T>
T flux_Q(T rho, T rho_prev, T p) {
  using std::sqrt;
  if (!(p > T(0))) throw NonPhysicalState("flux_Q needs p > 0");
  const T denom = T(4) / (rho * rho_prev) -
                  (T(2) / sqrt(p)) * (T(1) / rho + T(1) / rho_prev) + T(1) / p;
  if (denom == T(0)) throw SingularStencil("flux_Q denominator vanishes");
  return T(1) / denom;
}

// Explicit state relation: returns 1/sqrt(p) = 2/rho_prev - 1/sqrt(p_prev).
double inv2_inverse_sqrt_pressure(double rho_prev, double p_prev);

struct BoundaryPositions {
  double left = 0.0, right = 0.0;
};

struct BoundaryVelocities {
  double left = 0.0, right = 0.0;
};

struct PotentialStep {
  std::vector<double> layer;
  SolveReport report;
  int regularized = 0;
};

// Solves the potential-coordinate residual centred at history.newer() for
// the layer at t_new. Interior nodes only; boundary positions are imposed.
PotentialStep step_potential(const PotentialHistory& history,
                             const MassMesh& mesh, const SchemeConfig& cfg,
                             const BottomProfile& bottom, double t_new,
                             BoundaryPositions bc);

// inv3 or inv3_viscous wrapper around step_potential with a flat bottom.
PotentialStep step_inv3(const PotentialHistory& history, const MassMesh& mesh,
                        const SchemeConfig& cfg, double t_new,
                        BoundaryPositions bc);

// Taylor start: x^{+-1} = x0 +- tau u0 + tau^2/2 a0, a0 = 2 x_ss/x_s^3 + H'(x)
// at interior nodes; boundary nodes move with u0 only.
PotentialHistory start_potential_history(const MassMesh& mesh,
                                         const std::vector<double>& x0,
                                         const std::vector<double>& u0,
                                         const BottomProfile& bottom,
                                         double t0 = 0.0);

struct MassStep {
  MassState state;
  SolveReport report;
};

// Two-level scheme. prev holds X^n, u^n, rho^n, p^n; the result holds
// X^{n+1} = X^n + tau u^n and the new u, rho, p.
MassStep step_inv2(const MassState& prev, const MassMesh& mesh,
                   const SchemeConfig& cfg, BoundaryVelocities bc);

// Three-level scheme in mass variables. States carry X^n, rho^n = 1/X^n_s
// and the backward velocity u^{n-1}; the result carries X^{n+1}, rho^{n+1}
// and u^n.
MassStep step_inv3_mass(const MassState& older, const MassState& newer,
                        const MassMesh& mesh, const SchemeConfig& cfg,
                        BoundaryVelocities bc);

// x~ = x - (C1/2) t t^ on every layer, t^ = t + tau.
PotentialHistory transform_linear_to_flat(const PotentialHistory& h,
                                          double c1, double tau);
PotentialHistory transform_flat_to_linear(const PotentialHistory& h,
                                          double c1, double tau);

// Builds the stencil centred at node m of the layer triple (a, b, c) at
// times (t0, t1, t2).
template <class T>
Stencil9T<T> gather_stencil(const std::vector<T>& s, const std::vector<T>& a,
                            const std::vector<T>& b, const std::vector<T>& c,
                            T t0, T t1, T t2, std::size_t m) {
  Stencil9T<T> st;
  st.t = {t0, t1, t2};
  st.s = {s[m - 1], s[m], s[m + 1]};
  st.x[0] = {a[m - 1], a[m], a[m + 1]};
  st.x[1] = {b[m - 1], b[m], b[m + 1]};
  st.x[2] = {c[m - 1], c[m], c[m + 1]};
  return st;
}

}  // namespace swlag
