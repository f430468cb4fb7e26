#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "swlag/core_state.hpp"
#include "swlag/errors.hpp"
#include "swlag/invariant_schemes.hpp"
#include "test_support.hpp"

using namespace swlag;

TEST_CASE("uniform mesh nodes") {
  const auto m = build_uniform_mass_mesh(3, 0.02, 5e-4);
  REQUIRE(m.nodes() == 4);
  CHECK(m.s[0] == 0.0);
  CHECK(m.s[1] == doctest::Approx(0.02).epsilon(1e-15));
  CHECK(m.s[2] == doctest::Approx(0.04).epsilon(1e-15));
  CHECK(m.s[3] == doctest::Approx(0.06).epsilon(1e-15));
  CHECK(m.tau == 5e-4);

  const auto unit = build_uniform_mass_mesh(3, 1.0, 1.0);
  CHECK(unit.s == std::vector<double>{0.0, 1.0, 2.0, 3.0});
}

TEST_CASE("mesh rejects bad steps") {
  CHECK_THROWS_AS(build_uniform_mass_mesh(2, -1.0, 1.0), InvalidConfig);
  CHECK_THROWS_AS(build_uniform_mass_mesh(5, -1.0, 1.0), InvalidConfig);
  CHECK_THROWS_AS(build_uniform_mass_mesh(5, 0.1, 0.0), InvalidConfig);
  CHECK_THROWS_AS(build_uniform_mass_mesh(5, 0.0, 0.1), InvalidConfig);
  CHECK_THROWS_AS(build_uniform_mass_mesh(5, std::nan(""), 0.1), InvalidConfig);
  CHECK_THROWS_AS(build_geometric_mass_mesh(5, 1.0, 1.0, 0.1), InvalidConfig);
  CHECK_THROWS_AS(build_geometric_mass_mesh(5, -1.0, 2.0, 0.1), InvalidConfig);
}

TEST_CASE("geometric mesh keeps a constant ratio") {
  const auto g = build_geometric_mass_mesh(6, 0.5, 1.3, 0.1);
  REQUIRE(g.nodes() == 7);
  CHECK(g.kind == MeshKind::geometric);
  for (std::size_t m = 1; m < g.nodes(); ++m)
    CHECK(g.s[m] / g.s[m - 1] == doctest::Approx(1.3).epsilon(1e-14));
  for (std::size_t m = 0; m < g.cells(); ++m) CHECK(g.step(m) > 0.0);
}

TEST_CASE("mass total equals configured S") {
  for (std::size_t cells : {150u, 200u, 333u}) {
    const double S = 3.0;
    const auto m = build_uniform_mass_mesh(cells, S / cells, 1e-3);
    CHECK(m.total_mass() == doctest::Approx(S).epsilon(1e-13));
    double sum = 0.0;
    for (std::size_t k = 0; k < m.cells(); ++k) sum += m.step(k);
    CHECK(sum == doctest::Approx(S).epsilon(1e-13));
  }
}

TEST_CASE("rest state on S = 3, rho0 = 1") {
  const auto mesh = build_uniform_mass_mesh(150, 0.02, 5e-4);
  const auto rest = init_rest_state(mesh, 1.0);
  const auto& st = rest.state;
  CHECK(st.x.front() == 0.0);
  CHECK(st.x.back() == doctest::Approx(3.0).epsilon(1e-14));
  for (double u : st.u) CHECK(u == 0.0);
  for (double p : st.p) CHECK(p == 1.0);
  for (double r : st.rho) CHECK(r == 1.0);
  CHECK(rest.history.times[0] == -mesh.tau);
  CHECK(rest.history.times[1] == 0.0);
  CHECK(rest.history.times[2] == mesh.tau);
  for (int k = 0; k < 3; ++k) CHECK(rest.history.layers[k] == st.x);
}

TEST_CASE("rest state with rho0 = 2 occupies half the length") {
  const auto mesh = build_uniform_mass_mesh(200, 0.02, 5e-4);
  const auto st = init_rest_state(mesh, 2.0).state;
  CHECK(mesh.total_mass() == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(st.x.back() - st.x.front() == doctest::Approx(2.0).epsilon(1e-14));
  for (double p : st.p) CHECK(p == 4.0);
  CHECK_THROWS_AS(init_rest_state(mesh, 0.0), InvalidConfig);
}

TEST_CASE("rest state is a fixed point of the potential residuals") {
  const auto mesh = build_uniform_mass_mesh(20, 0.1, 0.01);
  const auto rest = init_rest_state(mesh, 1.3, 0.4);
  const auto& L = rest.history.layers;
  const auto& T = rest.history.times;
  const auto lin = BottomProfile::linear(0.0, 0.7);
  for (std::size_t m = 1; m + 1 < mesh.nodes(); ++m) {
    const auto st = gather_stencil(mesh.s, L[0], L[1], L[2], T[0], T[1], T[2], m);
    CHECK(std::abs(residual_inv3(st)) < 1e-12);
    CHECK(std::abs(residual_inv3(st, 1e-4)) < 1e-12);
    CHECK(std::abs(residual_bottom_energy(st, BottomProfile::flat())) < 1e-12);
    CHECK(std::abs(residual_bottom_momentum(st, BottomProfile::flat())) < 1e-12);
    CHECK(std::abs(residual_bottom_momentum(st, lin)) < 1e-12);
  }
}

TEST_CASE("snapshot of a rest state") {
  const auto mesh = build_uniform_mass_mesh(10, 0.3, 0.01);
  const auto rest = init_rest_state(mesh, 1.5);
  for (const auto& snap : {to_eulerian_snapshot(rest.history, mesh),
                           to_eulerian_snapshot(rest.state, mesh)}) {
    REQUIRE(snap.rows() == mesh.cells());
    for (std::size_t k = 0; k < snap.rows(); ++k) {
      CHECK(snap.u[k] == 0.0);
      CHECK(snap.rho[k] == doctest::Approx(1.5).epsilon(1e-14));
      CHECK(snap.p[k] == doctest::Approx(2.25).epsilon(1e-14));
      CHECK(snap.s[k] == mesh.s[k]);
    }
  }
}

TEST_CASE("snapshot of a travelling wave") {
  const auto mesh = build_uniform_mass_mesh(12, 0.25, 0.05);
  const double alpha = 0.7;
  PotentialHistory h;
  h.times = {-0.05, 0.0, 0.05};
  for (int k = 0; k < 3; ++k) {
    h.layers[k].resize(mesh.nodes());
    for (std::size_t m = 0; m < mesh.nodes(); ++m)
      h.layers[k][m] = mesh.s[m] - alpha * h.times[k];
  }
  const auto snap = to_eulerian_snapshot(h, mesh);
  for (std::size_t k = 0; k < snap.rows(); ++k) {
    CHECK(snap.u[k] == doctest::Approx(-alpha).epsilon(1e-12));
    CHECK(snap.rho[k] == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("non-monotone positions abort with the step index") {
  const auto mesh = build_uniform_mass_mesh(5, 1.0, 1.0);
  std::vector<double> x{0.0, 1.0, 0.5, 3.0, 4.0, 5.0};
  try {
    check_monotone(x, mesh, 17);
    FAIL("expected mesh tangling");
  } catch (const MeshTangling& e) {
    CHECK(e.step == 17);
  }
  auto st = init_rest_state(mesh, 1.0).state;
  st.x = x;
  CHECK_THROWS_AS(to_eulerian_snapshot(st, mesh, 3), MeshTangling);
  PotentialHistory h = init_rest_state(mesh, 1.0).history;
  h.layers[1] = x;
  CHECK_THROWS_AS(to_eulerian_snapshot(h, mesh, 3), MeshTangling);
}

TEST_CASE("potential history advance shifts layers") {
  PotentialHistory h;
  h.layers = {std::vector<double>{0.0}, std::vector<double>{1.0},
              std::vector<double>{2.0}};
  h.times = {0.0, 0.5, 1.0};
  h.advance({3.0}, 1.25);
  CHECK(h.older()[0] == 1.0);
  CHECK(h.current()[0] == 2.0);
  CHECK(h.newer()[0] == 3.0);
  CHECK(h.t() == 1.0);
  CHECK(h.tau_minus() == 0.5);
  CHECK(h.tau_plus() == 0.25);
}

TEST_CASE("bottom profiles") {
  const auto flat = BottomProfile::flat();
  CHECK(flat.value(3.7) == 0.0);
  CHECK(flat.slope(-2.0) == 0.0);
  const auto lin = BottomProfile::linear(0.4, -1.0);
  CHECK(lin.value(2.0) == doctest::Approx(-0.2));
  CHECK(lin.slope(9.0) == 0.4);

  // cubic Hermite reproduces a cubic exactly
  auto f = [](double x) { return x * x * x - 2.0 * x + 1.0; };
  auto df = [](double x) { return 3.0 * x * x - 2.0; };
  std::vector<double> xs{0.0, 0.5, 1.3, 2.0}, hs, ds;
  for (double x : xs) {
    hs.push_back(f(x));
    ds.push_back(df(x));
  }
  const auto tab = BottomProfile::tabulated(xs, hs, ds);
  for (double x : {0.1, 0.7, 1.29, 1.8}) {
    CHECK(tab.value(x) == doctest::Approx(f(x)).epsilon(1e-12));
    CHECK(tab.slope(x) == doctest::Approx(df(x)).epsilon(1e-12));
  }
  // linear extension outside the table
  CHECK(tab.value(3.0) == doctest::Approx(f(2.0) + df(2.0)).epsilon(1e-12));
  CHECK(tab.slope(-1.0) == doctest::Approx(df(0.0)).epsilon(1e-12));
  CHECK_THROWS_AS(BottomProfile::tabulated({0.0, 0.0}, {1.0, 1.0}, {0.0, 0.0}),
                  InvalidConfig);
}

TEST_CASE("scheme names round trip") {
  for (SchemeId id :
       {SchemeId::inv3, SchemeId::inv3_viscous, SchemeId::inv2,
        SchemeId::inv3_mass, SchemeId::explicit_scheme, SchemeId::sampop,
        SchemeId::yelenin, SchemeId::korobitsyn, SchemeId::inv_bottom_energy,
        SchemeId::inv_bottom_momentum})
    CHECK(parse_scheme_id(scheme_name(id)) == id);
  CHECK(is_potential_scheme(SchemeId::inv3));
  CHECK(is_potential_scheme(SchemeId::inv_bottom_energy));
  CHECK_FALSE(is_potential_scheme(SchemeId::inv2));
  CHECK_FALSE(is_potential_scheme(SchemeId::inv3_mass));
  CHECK_THROWS_AS(parse_scheme_id("lax_wendroff"), InvalidConfig);
}

TEST_CASE("snapshot density is the inverse of x_s on random layers") {
  std::mt19937_64 rng(7);
  const auto mesh = build_uniform_mass_mesh(9, 0.2, 0.05);
  for (int i = 0; i < 50; ++i) {
    const auto h = testing::random_history(rng, mesh);
    const auto snap = to_eulerian_snapshot(h, mesh);
    for (std::size_t k = 0; k < snap.rows(); ++k) {
      const double xs = (h.current()[k + 1] - h.current()[k]) / mesh.step(k);
      CHECK(snap.rho[k] * xs == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(snap.p[k] == doctest::Approx(snap.rho[k] * snap.rho[k]).epsilon(1e-13));
      CHECK(snap.u[k] == doctest::Approx((h.current()[k] - h.older()[k]) /
                                         h.tau_minus()).epsilon(1e-13));
    }
  }
}
