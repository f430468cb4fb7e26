#include "swlag/exact_solutions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "swlag/errors.hpp"
#include "swlag/invariant_schemes.hpp"

namespace swlag {

TravellingWave travelling_wave(const MassMesh& mesh, double alpha, double t0) {
  TravellingWave tw;
  const double tau = mesh.tau;
  const double ratio = mesh.h / tau;
  if (std::abs(alpha - ratio) > 1e-12 * std::max(1.0, std::abs(ratio))) {
    tw.matched = false;
    std::ostringstream os;
    os << "travelling wave speed " << alpha << " differs from h/tau = " << ratio
       << "; x = s - alpha t solves the equation but not the reduced scheme";
    tw.warning = os.str();
  }
  for (int k = 0; k < 3; ++k) {
    const double t = t0 + (k - 1) * tau;
    tw.history.times[k] = t;
    auto& L = tw.history.layers[k];
    L.resize(mesh.nodes());
    for (std::size_t m = 0; m < mesh.nodes(); ++m) L[m] = mesh.s[m] - alpha * t;
  }
  return tw;
}

double dilation_exact(double s, double t) {
  if (!(s > 0.0 && t > 0.0))
    throw InvalidConfig("dilation solution needs s > 0 and t > 0");
  return std::cbrt(54.0 * s * t * t);
}

double dilation_velocity(double s, double t, double mu) {
  const double mu2 = mu * mu, mu3 = mu2 * mu;
  const double factor = mu == 1.0 ? 2.0 / 3.0 : (1.0 - mu2) / (1.0 - mu3);
  return factor * std::cbrt(54.0 * s / t);
}

double dilation_density(double s, double t, double kappa) {
  const double r = std::cbrt(s / t);
  return (kappa * kappa + kappa + 1.0) / std::cbrt(54.0) * r * r;
}

double kappa_residual(double k, double delta) {
  const double k2 = k * k;
  return (k2 + k + 1.0) * (k2 + 1.0) * (k + 1.0) - (12.0 - delta) * k2 * k2;
}

double mu_constraint_residual(double mu, double delta) {
  const double q = mu * mu + mu + 1.0;
  return 54.0 * mu * mu * mu * (mu + 1.0) - (12.0 - delta) * q * q;
}

double coupling_residual(double k, double mu) {
  const double k2 = k * k;
  const double q = mu * mu + mu + 1.0;
  return (k2 + k + 1.0) * (k2 + 1.0) * (k + 1.0) / (k2 * k2) -
         54.0 * mu * mu * mu * (mu + 1.0) / (q * q);
}

namespace {

double bisect(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a);
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    if (b - a <= 1e-14 * std::max(1.0, std::abs(m))) return m;
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fa < 0.0) == (fm < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

std::vector<double> scan_roots(const std::function<double(double)>& f) {
  // Log grid over [1e-3, 1e3]; 1 is an exact grid point.
  const int per_decade = 2000;
  std::vector<double> grid;
  for (int i = -3 * per_decade; i <= 3 * per_decade; ++i)
    grid.push_back(i == 0 ? 1.0 : std::pow(10.0, double(i) / per_decade));
  std::vector<double> roots;
  double prev = f(grid[0]);
  if (prev == 0.0) roots.push_back(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double cur = f(grid[i]);
    if (cur == 0.0) {
      roots.push_back(grid[i]);
    } else if (prev != 0.0 && (prev < 0.0) != (cur < 0.0)) {
      roots.push_back(bisect(f, grid[i - 1], grid[i]));
    }
    prev = cur;
  }
  return roots;
}

double nearest_to_one(const std::vector<double>& roots, const char* what) {
  double best = std::numeric_limits<double>::quiet_NaN();
  for (double r : roots) {
    if (r == 1.0) continue;
    if (std::isnan(best) || std::abs(r - 1.0) < std::abs(best - 1.0)) best = r;
  }
  if (std::isnan(best))
    throw InvalidConfig(std::string("no usable root for ") + what);
  return best;
}

}  // namespace

std::vector<double> solve_kappa(double delta) {
  return scan_roots([delta](double k) { return kappa_residual(k, delta); });
}

std::vector<double> solve_mu(double delta) {
  return scan_roots([delta](double m) { return mu_constraint_residual(m, delta); });
}

DilationMeshParams make_dilation_params(double delta, double s0, double t0) {
  DilationMeshParams p;
  p.delta = delta;
  p.s0 = s0;
  p.t0 = t0;
  p.kappa = nearest_to_one(solve_kappa(delta), "kappa");
  p.mu = nearest_to_one(solve_mu(delta), "mu");
  return p;
}

DilationCheck check_dilation_lattice(const DilationMeshParams& p, int count) {
  using L = long double;
  if (count < 3) throw InvalidConfig("dilation lattice needs at least 3 points");
  // Refine the roots in extended precision before building the lattice.
  auto refine = [](auto f, L x) {
    for (int i = 0; i < 8; ++i) {
      const L hstep = x * 1e-7L;
      const L d = (f(x + hstep) - f(x - hstep)) / (2 * hstep);
      if (d == 0) break;
      x -= f(x) / d;
    }
    return x;
  };
  const L delta = p.delta;
  const L k = refine(
      [delta](L k) {
        return (k * k + k + 1) * (k * k + 1) * (k + 1) - (12 - delta) * k * k * k * k;
      },
      L(p.kappa));
  const L mu = refine(
      [delta](L m) {
        const L q = m * m + m + 1;
        return 54 * m * m * m * (m + 1) - (12 - delta) * q * q;
      },
      L(p.mu));
  const L sr = 1 / (k * k * k), tr = mu * mu * mu;
  std::vector<L> s(count), t(count), psi(count);
  for (int i = 0; i < count; ++i) {
    s[i] = L(p.s0) * std::pow(sr, L(i));
    t[i] = L(p.t0) * std::pow(tr, L(i));
    psi[i] = std::cbrt(54 * t[i] * t[i]);
  }
  DilationCheck out;
  for (int n = 1; n + 1 < count; ++n) {
    for (int m = 1; m + 1 < count; ++m) {
      L scale = 0;
      const L r = reduced_scheme_residual<L>(psi[n - 1], psi[n], psi[n + 1],
                                             t[n - 1], t[n], t[n + 1], s[m - 1],
                                             s[m], s[m + 1], &scale);
      out.max_relative_residual =
          std::max(out.max_relative_residual, double(std::abs(r) / scale));

      Stencil9T<L> st;
      st.t = {t[n - 1], t[n], t[n + 1]};
      st.s = {s[m - 1], s[m], s[m + 1]};
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          st.x[a][b] = std::cbrt(54 * st.s[b] * st.t[a] * st.t[a]);
      const L A = st.xs(2) * st.xs(0), B = st.xsb(2) * st.xsb(0);
      const L fs = std::abs(st.xtt()) + (std::abs(1 / A) + std::abs(1 / B)) /
                                            std::abs(st.h_minus());
      const L f = residual_inv3<L>(st);
      out.max_relative_full_residual =
          std::max(out.max_relative_full_residual, double(std::abs(f) / fs));
      ++out.nodes;
    }
  }
  return out;
}

double psi_ode_step(double psi_prev, double psi, double K, double tau) {
  // psi_prev y^2 + psi_prev (psi_prev - 2 psi) y - K tau^2 = 0
  const double a = psi_prev;
  const double b = psi_prev * (psi_prev - 2.0 * psi);
  const double c = -K * tau * tau;
  if (a == 0.0) throw NonPhysicalState("psi step: zero previous value");
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) throw NonPhysicalState("psi step: no real branch");
  const double sq = std::sqrt(disc);
  // stable pair of roots
  const double qq = -0.5 * (b + std::copysign(sq, b));
  double r1 = qq / a;
  double r2 = qq != 0.0 ? c / qq : r1;
  const double target = 2.0 * psi - psi_prev;
  double r = std::abs(r1 - target) <= std::abs(r2 - target) ? r1 : r2;
  if (!(r > 0.0)) {
    r = r1 > 0.0 ? r1 : r2;
    if (!(r > 0.0)) throw NonPhysicalState("psi step: no positive branch");
  }
  return r;
}

double psi_first_integral(double psi, double psi_next, double K, double tau) {
  const double pt = (psi_next - psi) / tau;
  return pt * pt + K * (1.0 / psi_next + 1.0 / psi);
}

double psi_cauchy_residual(double psi, double psi0, double K, double C1,
                           double t) {
  const double d = psi - psi0;
  return d * d + t * t * K * (1.0 / psi + 1.0 / psi0) - t * t * C1;
}

double psi_cauchy_solve(double psi0, double K, double C1, double t,
                        double guess) {
  auto f = [&](double y) { return psi_cauchy_residual(y, psi0, K, C1, t); };
  if (f(guess) == 0.0) return guess;
  // expand a bracket geometrically around the guess, staying positive
  for (double w = 1e-6 * std::max(1.0, std::abs(guess)); w < 1e6; w *= 2.0) {
    const double lo = std::max(guess - w, guess * 1e-6);
    const double hi = guess + w;
    const double flo = f(lo), fhi = f(hi);
    if ((f(guess) < 0.0) != (fhi < 0.0)) return bisect(f, guess, hi);
    if ((flo < 0.0) != (f(guess) < 0.0)) return bisect(f, lo, guess);
  }
  throw NonConvergence("Cauchy relation: no root bracketed near the guess",
                       std::abs(f(guess)), 0);
}

EulerPoint rarefaction_oracle(double U, double rho0, double t, double x,
                              double x0) {
  if (U > 0.0) throw InvalidConfig("rarefaction oracle needs U <= 0");
  if (!(rho0 > 0.0)) throw InvalidConfig("rarefaction oracle needs rho0 > 0");
  const double c0 = std::sqrt(2.0 * rho0);
  if (-U >= 2.0 * c0)
    throw NonPhysicalState("piston speed forms a vacuum (|U| >= 2 c0)");
  if (U == 0.0 || t <= 0.0) return {0.0, rho0};
  const double xi = (x - x0) / t;
  const double cp = c0 + 0.5 * U;
  if (xi >= c0) return {0.0, rho0};
  if (xi <= U + cp) return {U, 0.5 * cp * cp};
  const double c = (xi + 2.0 * c0) / 3.0;
  return {2.0 * c - 2.0 * c0, 0.5 * c * c};
}

std::pair<double, double> rarefaction_fan_edges(double U, double rho0,
                                                double t, double x0) {
  const double c0 = std::sqrt(2.0 * rho0);
  const double cp = c0 + 0.5 * U;
  return {x0 + (U + cp) * t, x0 + c0 * t};
}

ShockState shock_state_oracle(double U, double rho0) {
  if (!(U > 0.0)) throw InvalidConfig("shock oracle needs a compressive U > 0");
  if (!(rho0 > 0.0)) throw InvalidConfig("shock oracle needs rho0 > 0");
  auto f = [&](double r) {
    return (r * r - rho0 * rho0) * (r - rho0) / r - rho0 * U * U;
  };
  double hi = 2.0 * rho0;
  while (f(hi) < 0.0) hi *= 2.0;
  ShockState st;
  st.rho1 = bisect(f, rho0, hi);
  st.W = (st.rho1 * st.rho1 - rho0 * rho0) / U;
  return st;
}

}  // namespace swlag
