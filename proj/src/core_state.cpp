#include "swlag/core_state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "swlag/errors.hpp"

namespace swlag {

MassMesh build_uniform_mass_mesh(std::size_t cells, double h, double tau,
                                 double s0) {
  if (cells < 3) throw InvalidConfig("mass mesh needs at least 3 cells");
  if (!(h > 0.0) || !std::isfinite(h))
    throw InvalidConfig("mass step must be positive and finite");
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw InvalidConfig("time step must be positive and finite");
  MassMesh mesh;
  mesh.s.resize(cells + 1);
  for (std::size_t m = 0; m <= cells; ++m)
    mesh.s[m] = s0 + h * static_cast<double>(m);
  mesh.h = h;
  mesh.tau = tau;
  mesh.kind = MeshKind::uniform;
  mesh.ratio = 1.0;
  return mesh;
}

MassMesh build_geometric_mass_mesh(std::size_t cells, double s0, double ratio,
                                   double tau) {
  if (cells < 3) throw InvalidConfig("mass mesh needs at least 3 cells");
  if (!(s0 > 0.0) || !std::isfinite(s0))
    throw InvalidConfig("geometric lattice needs s0 > 0");
  if (!(ratio > 0.0) || ratio == 1.0 || !std::isfinite(ratio))
    throw InvalidConfig("geometric ratio must be positive and differ from 1");
  if (tau == 0.0 || !std::isfinite(tau))
    throw InvalidConfig("time step must be nonzero and finite");
  MassMesh mesh;
  mesh.s.resize(cells + 1);
  mesh.s[0] = s0;
  for (std::size_t m = 1; m <= cells; ++m) mesh.s[m] = mesh.s[m - 1] * ratio;
  mesh.h = mesh.s[1] - mesh.s[0];
  mesh.tau = tau;
  mesh.kind = MeshKind::geometric;
  mesh.ratio = ratio;
  return mesh;
}

void PotentialHistory::advance(std::vector<double> layer, double t_new) {
  layers[0] = std::move(layers[1]);
  layers[1] = std::move(layers[2]);
  layers[2] = std::move(layer);
  times[0] = times[1];
  times[1] = times[2];
  times[2] = t_new;
}

BottomProfile BottomProfile::flat() { return BottomProfile{}; }

BottomProfile BottomProfile::linear(double c1, double c2) {
  BottomProfile b;
  b.kind_ = Kind::linear;
  b.c1_ = c1;
  b.c2_ = c2;
  return b;
}

BottomProfile BottomProfile::tabulated(std::vector<double> x,
                                       std::vector<double> h,
                                       std::vector<double> dh) {
  if (x.size() < 2 || h.size() != x.size() || dh.size() != x.size())
    throw InvalidConfig("tabulated bottom needs matching tables of size >= 2");
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1]))
      throw InvalidConfig("tabulated bottom abscissae must increase");
  BottomProfile b;
  b.kind_ = Kind::tabulated;
  b.tx_ = std::move(x);
  b.th_ = std::move(h);
  b.tdh_ = std::move(dh);
  return b;
}

std::size_t BottomProfile::segment(double x) const {
  auto it = std::upper_bound(tx_.begin(), tx_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - tx_.begin());
  if (i == 0) return 0;
  return std::min(i - 1, tx_.size() - 2);
}

double BottomProfile::value(double x) const {
  switch (kind_) {
    case Kind::flat:
      return 0.0;
    case Kind::linear:
      return c1_ * x + c2_;
    case Kind::tabulated: {
      if (x <= tx_.front()) return th_.front() + tdh_.front() * (x - tx_.front());
      if (x >= tx_.back()) return th_.back() + tdh_.back() * (x - tx_.back());
      const std::size_t i = segment(x);
      const double d = tx_[i + 1] - tx_[i];
      const double r = (x - tx_[i]) / d;
      const double h00 = (1 + 2 * r) * (1 - r) * (1 - r);
      const double h10 = r * (1 - r) * (1 - r);
      const double h01 = r * r * (3 - 2 * r);
      const double h11 = r * r * (r - 1);
      return h00 * th_[i] + h10 * d * tdh_[i] + h01 * th_[i + 1] +
             h11 * d * tdh_[i + 1];
    }
  }
  return 0.0;
}

double BottomProfile::slope(double x) const {
  switch (kind_) {
    case Kind::flat:
      return 0.0;
    case Kind::linear:
      return c1_;
    case Kind::tabulated: {
      if (x <= tx_.front()) return tdh_.front();
      if (x >= tx_.back()) return tdh_.back();
      const std::size_t i = segment(x);
      const double d = tx_[i + 1] - tx_[i];
      const double r = (x - tx_[i]) / d;
      const double d00 = 6 * r * (r - 1) / d;
      const double d10 = (1 - r) * (1 - 3 * r);
      const double d01 = -6 * r * (r - 1) / d;
      const double d11 = r * (3 * r - 2);
      return d00 * th_[i] + d10 * tdh_[i] + d01 * th_[i + 1] +
             d11 * tdh_[i + 1];
    }
  }
  return 0.0;
}

namespace {
struct SchemeName {
  SchemeId id;
  const char* name;
};
constexpr SchemeName kSchemeNames[] = {
    {SchemeId::inv3, "inv3"},
    {SchemeId::inv3_viscous, "inv3_viscous"},
    {SchemeId::inv2, "inv2"},
    {SchemeId::inv3_mass, "inv3_mass"},
    {SchemeId::explicit_scheme, "explicit"},
    {SchemeId::sampop, "sampop"},
    {SchemeId::yelenin, "yelenin"},
    {SchemeId::korobitsyn, "korobitsyn"},
    {SchemeId::inv_bottom_energy, "inv_bottom_energy"},
    {SchemeId::inv_bottom_momentum, "inv_bottom_momentum"},
};
}  // namespace

SchemeId parse_scheme_id(std::string_view name) {
  for (const auto& e : kSchemeNames)
    if (name == e.name) return e.id;
  throw InvalidConfig("unknown scheme '" + std::string(name) + "'");
}

std::string scheme_name(SchemeId id) {
  for (const auto& e : kSchemeNames)
    if (e.id == id) return e.name;
  return "?";
}

bool is_potential_scheme(SchemeId id) {
  return id == SchemeId::inv3 || id == SchemeId::inv3_viscous ||
         id == SchemeId::inv_bottom_energy ||
         id == SchemeId::inv_bottom_momentum;
}

RestState init_rest_state(const MassMesh& mesh, double rho0, double x_left) {
  if (!(rho0 > 0.0)) throw InvalidConfig("rest density must be positive");
  const std::size_t nn = mesh.nodes();
  const std::size_t nc = mesh.cells();
  std::vector<double> x(nn);
  for (std::size_t m = 0; m < nn; ++m)
    x[m] = x_left + (mesh.s[m] - mesh.s[0]) / rho0;

  RestState r;
  r.history.layers = {x, x, x};
  r.history.times = {-mesh.tau, 0.0, mesh.tau};

  MassState& st = r.state;
  st.t = 0.0;
  st.x = x;
  st.u.assign(nn, 0.0);
  st.rho.assign(nc, rho0);
  st.p.assign(nc, rho0 * rho0);
  st.q = st.p;
  return r;
}

void check_monotone(const std::vector<double>& x, const MassMesh& mesh,
                    long step) {
  for (std::size_t m = 0; m + 1 < x.size(); ++m) {
    const double xs = (x[m + 1] - x[m]) / mesh.step(m);
    if (!(xs > 0.0)) {
      std::ostringstream os;
      os << "mesh tangling at cell " << m << " (x_s = " << xs << ")";
      if (step >= 0) os << " on step " << step;
      throw MeshTangling(os.str(), step);
    }
  }
}

Snapshot to_eulerian_snapshot(const PotentialHistory& h, const MassMesh& mesh,
                              long step) {
  const auto& x = h.current();
  const auto& xo = h.older();
  check_monotone(x, mesh, step);
  const double tm = h.tau_minus();
  Snapshot snap;
  snap.t = h.t();
  const std::size_t nc = mesh.cells();
  snap.s.resize(nc);
  snap.x.resize(nc);
  snap.u.resize(nc);
  snap.rho.resize(nc);
  snap.p.resize(nc);
  for (std::size_t m = 0; m < nc; ++m) {
    snap.s[m] = mesh.s[m];
    snap.x[m] = x[m];
    snap.u[m] = (x[m] - xo[m]) / tm;
    snap.rho[m] = mesh.step(m) / (x[m + 1] - x[m]);
    snap.p[m] = snap.rho[m] * snap.rho[m];
  }
  return snap;
}

Snapshot to_eulerian_snapshot(const MassState& st, const MassMesh& mesh,
                              long step) {
  check_monotone(st.x, mesh, step);
  Snapshot snap;
  snap.t = st.t;
  const std::size_t nc = mesh.cells();
  snap.s.assign(mesh.s.begin(), mesh.s.begin() + static_cast<long>(nc));
  snap.x.assign(st.x.begin(), st.x.begin() + static_cast<long>(nc));
  snap.u.assign(st.u.begin(), st.u.begin() + static_cast<long>(nc));
  snap.rho = st.rho;
  snap.p = st.p;
  for (std::size_t m = 0; m < nc; ++m)
    if (!(st.rho[m] > 0.0)) {
      std::ostringstream os;
      os << "non-positive density at cell " << m;
      if (step >= 0) os << " on step " << step;
      throw MeshTangling(os.str(), step);
    }
  return snap;
}

}  // namespace swlag
