#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "swlag/errors.hpp"
#include "swlag/exact_solutions.hpp"
#include "swlag/invariant_schemes.hpp"

using namespace swlag;

namespace {

// Bisection on f over [a, b], f(a) f(b) < 0.
template <class F>
double bisect(F f, double a, double b) {
  double fa = f(a);
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (a + b), fm = f(m);
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

TEST_CASE("dilation solution values") {
  CHECK(dilation_exact(1.0, 1.0) == doctest::Approx(std::cbrt(54.0)).epsilon(1e-15));
  CHECK(dilation_exact(2.0, 0.5) == doctest::Approx(std::cbrt(27.0)).epsilon(1e-15));
  CHECK_THROWS_AS(dilation_exact(0.0, 1.0), InvalidConfig);
  CHECK_THROWS_AS(dilation_exact(1.0, -1.0), InvalidConfig);
  // x_s = x/(3s)
  const double s = 0.7, t = 1.3, e = 1e-6;
  const double xs = (dilation_exact(s + e, t) - dilation_exact(s - e, t)) / (2 * e);
  CHECK(xs == doctest::Approx(dilation_exact(s, t) / (3.0 * s)).epsilon(1e-8));
}

TEST_CASE("kappa and mu constraints") {
  CHECK(kappa_residual(1.0, 0.0) == 0.0);
  CHECK(mu_constraint_residual(1.0, 0.0) == 0.0);
  CHECK(std::abs(coupling_residual(1.0, 1.0)) < 1e-12);

  const auto k0 = solve_kappa(0.0);
  REQUIRE_FALSE(k0.empty());
  CHECK(std::any_of(k0.begin(), k0.end(), [](double k) { return std::abs(k - 1.0) < 1e-12; }));
  CHECK(std::is_sorted(k0.begin(), k0.end()));
  for (double k : k0) CHECK(std::abs(kappa_residual(k, 0.0)) < 1e-9);

  for (double d : {0.005, 0.01, 0.02}) {
    const auto ks = solve_kappa(d), ms = solve_mu(d);
    REQUIRE_FALSE(ks.empty());
    REQUIRE_FALSE(ms.empty());
    for (double k : ks) CHECK(std::abs(kappa_residual(k, d)) < 1e-9);
    for (double m : ms) CHECK(std::abs(mu_constraint_residual(m, d)) < 1e-9);
  }

  // roots move continuously away from 1
  const auto p = make_dilation_params(0.01);
  CHECK(p.kappa != 1.0);
  CHECK(p.mu != 1.0);
  CHECK(p.kappa == doctest::Approx(1.000556).epsilon(1e-6));
  CHECK(p.mu == doctest::Approx(0.999444).epsilon(1e-6));
  CHECK(std::abs(kappa_residual(p.kappa, 0.01)) < 1e-12);
  CHECK(std::abs(mu_constraint_residual(p.mu, 0.01)) < 1e-12);
}

TEST_CASE("dilation lattice satisfies both schemes") {
  for (double d : {0.005, 0.01, 0.03}) {
    const auto chk = check_dilation_lattice(make_dilation_params(d), 8);
    CHECK(chk.nodes > 0);
    CHECK(chk.max_relative_residual <= 1e-10);
    CHECK(chk.max_relative_full_residual <= 1e-10);
  }
}

TEST_CASE("psi ODE: constant orbit when K = 0") {
  double a = 1.0, b = 1.0;
  for (int n = 0; n < 50; ++n) {
    const double c = psi_ode_step(a, b, 0.0, 0.01);
    CHECK(c == doctest::Approx(1.0).epsilon(1e-15));
    a = b;
    b = c;
  }
  // K = 0, linear orbit psi = 1 + t
  CHECK(psi_ode_step(1.0, 1.1, 0.0, 0.1) == doctest::Approx(1.2).epsilon(1e-14));
}

TEST_CASE("psi step solves the discrete equation") {
  const double tau = 0.05, K = 1.0;
  double a = 1.0, b = 1.003;
  for (int n = 0; n < 40; ++n) {
    const double c = psi_ode_step(a, b, K, tau);
    const double ptt = ((c - b) / tau - (b - a) / tau) / tau;
    CHECK(c * a * ptt == doctest::Approx(K).epsilon(1e-10));
    a = b;
    b = c;
  }
}

TEST_CASE("psi first integral is constant along the orbit") {
  const double tau = 0.01, K = 1.0;
  double a = 1.0, b = 1.003;
  const double I0 = psi_first_integral(a, b, K, tau);
  for (int n = 0; n < 100; ++n) {
    const double c = psi_ode_step(a, b, K, tau);
    CHECK(psi_first_integral(b, c, K, tau) == doctest::Approx(I0).epsilon(1e-12));
    a = b;
    b = c;
  }
}

TEST_CASE("psi breakdown") {
  CHECK_THROWS_AS(psi_ode_step(0.0, 1.0, 1.0, 0.1), NonPhysicalState);
  // strongly negative K with a large step has no real branch
  CHECK_THROWS_AS(psi_ode_step(1.0, 0.2, -50.0, 1.0), NonPhysicalState);
}

TEST_CASE("psi Cauchy relation") {
  const double psi0 = 1.0, K = 0.5, C1 = 3.0, t = 0.4;
  const double root = psi_cauchy_solve(psi0, K, C1, t, 1.2);
  CHECK(std::abs(psi_cauchy_residual(root, psi0, K, C1, t)) < 1e-12);
  CHECK(psi_cauchy_residual(psi0, psi0, K, C1, 0.0) == 0.0);
}

TEST_CASE("rarefaction oracle") {
  const auto rest = rarefaction_oracle(0.0, 1.0, 0.3, 0.2);
  CHECK(rest.u == 0.0);
  CHECK(rest.rho == 1.0);
  CHECK_THROWS_AS(rarefaction_oracle(-3.0, 1.0, 0.3, 0.2), NonPhysicalState);
  CHECK_THROWS_AS(rarefaction_oracle(0.2, 1.0, 0.3, 0.2), InvalidConfig);

  const double U = -0.5, rho0 = 1.0, c0 = std::sqrt(2.0);
  const auto [tail, head] = rarefaction_fan_edges(U, rho0, 1.0);
  CHECK(head == doctest::Approx(c0));
  // behind the fan the fluid moves with the piston
  const auto behind = rarefaction_oracle(U, rho0, 1.0, tail - 0.05);
  CHECK(behind.u == doctest::Approx(U));
  CHECK(behind.u - 2.0 * std::sqrt(2.0 * behind.rho) == doctest::Approx(-2.0 * c0));
  CHECK(tail == doctest::Approx(U + std::sqrt(2.0 * behind.rho)));
  const auto ahead = rarefaction_oracle(U, rho0, 1.0, head + 0.05);
  CHECK(ahead.u == 0.0);
  CHECK(ahead.rho == rho0);
}

TEST_CASE("rarefaction oracle solves the shallow water equations in the fan") {
  const double U = -0.5, rho0 = 1.0, t = 1.0, e = 1e-5;
  const auto [tail, head] = rarefaction_fan_edges(U, rho0, t);
  for (int i = 1; i < 10; ++i) {
    const double x = tail + (head - tail) * i / 10.0;
    auto at = [&](double tt, double xx) { return rarefaction_oracle(U, rho0, tt, xx); };
    const auto c = at(t, x);
    const auto tp = at(t + e, x), tm = at(t - e, x), xp = at(t, x + e), xm = at(t, x - e);
    const double rho_t = (tp.rho - tm.rho) / (2 * e), u_t = (tp.u - tm.u) / (2 * e);
    const double rho_x = (xp.rho - xm.rho) / (2 * e), u_x = (xp.u - xm.u) / (2 * e);
    CHECK(std::abs(rho_t + c.u * rho_x + c.rho * u_x) < 1e-6);
    CHECK(std::abs(u_t + c.u * u_x + 2.0 * rho_x) < 1e-6);
  }
}

TEST_CASE("shock oracle") {
  CHECK_THROWS_AS(shock_state_oracle(0.0, 1.0), InvalidConfig);
  CHECK_THROWS_AS(shock_state_oracle(-0.1, 1.0), InvalidConfig);
  CHECK(shock_state_oracle(1e-9, 1.0).rho1 == doctest::Approx(1.0).epsilon(1e-6));

  const auto s = shock_state_oracle(0.5, 1.0);
  CHECK(s.rho1 == doctest::Approx(1.381).epsilon(1e-3));
  for (double U : {0.1, 0.5, 1.0, 2.0})
    for (double r0 : {0.5, 1.0, 2.0}) {
      // Rankine-Hugoniot for p = rho^2 with the fluid at rest ahead
      const double r1 = bisect(
          [&](double r) { return (r * r - r0 * r0) * (1.0 / r0 - 1.0 / r) - U * U; }, r0,
          r0 + 50.0);
      const auto o = shock_state_oracle(U, r0);
      CHECK(o.rho1 == doctest::Approx(r1).epsilon(1e-10));
      const double W = std::sqrt((r1 * r1 - r0 * r0) / (1.0 / r0 - 1.0 / r1));
      CHECK(o.W == doctest::Approx(W).epsilon(1e-8));
    }
}

TEST_CASE("travelling wave") {
  const auto mesh = build_uniform_mass_mesh(10, 1.0, 1.0);
  const auto tw = travelling_wave(mesh, 1.0);
  CHECK(tw.matched);
  CHECK(tw.warning.empty());
  for (std::size_t m = 1; m + 1 < mesh.nodes(); ++m) {
    const auto& L = tw.history.layers;
    const auto& T = tw.history.times;
    CHECK(residual_inv3(gather_stencil(mesh.s, L[0], L[1], L[2], T[0], T[1], T[2], m)) == 0.0);
  }
  const auto bad = travelling_wave(mesh, 2.0);
  CHECK_FALSE(bad.matched);
  CHECK_FALSE(bad.warning.empty());
}
