#include "swlag/symmetry.hpp"

#include <cmath>

#include "swlag/errors.hpp"

namespace swlag {

InvariantVector difference_invariants(const Stencil9& st) {
  const double tm = st.tau_minus(), tp = st.tau_plus();
  const double hm = st.h_minus(), hp = st.h_plus();
  if (!(tm > 0.0 && tp > 0.0 && hm > 0.0 && hp > 0.0))
    throw SingularStencil("difference invariants need positive steps");
  InvariantVector iv;
  const double w = std::cbrt(tm * tm * hm);
  iv.omega = w;
  const auto& x = st.x;
  const double X = x[1][1];
  const double back = tp * (X - x[0][1]);
  iv.I[0] = hp / hm;
  iv.I[1] = tp / tm;
  iv.I[2] = (X - x[1][0]) / w;
  iv.I[3] = (x[1][2] - X) / w;
  iv.I[4] = (x[0][2] - x[0][1]) / w;
  iv.I[5] = (x[0][1] - x[0][0]) / w;
  iv.I[6] = (back + tm * (X - x[2][1])) / (w * tm);
  iv.I[7] = (back + tm * (X - x[2][2])) / (w * tm);
  iv.I[8] = (back + tm * (X - x[2][0])) / (w * tm);
  return iv;
}

namespace {

double pure_part(const InvariantVector& iv) {
  const double i1 = iv[1], i2 = iv[2], i5 = iv[5], i6 = iv[6], i7 = iv[7],
               i8 = iv[8], i9 = iv[9];
  const double d1 = i2 * i6 * (i7 - i9);
  const double d2 = i5 * (i7 - i8);
  if (d1 == 0.0 || d2 == 0.0)
    throw SingularStencil("invariant representation: vanishing denominator");
  return (i2 - i6 * i7 * (i7 - i9)) / d1 + i1 * i1 / d2;
}

}  // namespace

double residual_via_invariants(const InvariantVector& iv) {
  return pure_part(iv);
}

double residual_via_invariants(const InvariantVector& iv, double mu,
                               double alpha) {
  const double visc =
      0.5 * mu * alpha * alpha *
      ((iv[5] + iv[7] - iv[8]) / iv[1] + iv[7] - iv[9] - iv[6]);
  return pure_part(iv) + visc;
}

double scaled_residual(const Stencil9& st, double mu) {
  const double tm = st.tau_minus(), hm = st.h_minus();
  return std::pow(tm, 4.0 / 3.0) / std::cbrt(hm) * residual_inv3(st, mu);
}

namespace {

struct PointMap {
  GroupElement g;
  double a = 0.0, b = 0.0;  // e^{k eps} factors for X5/X6

  explicit PointMap(const GroupElement& ge) : g(ge) {
    if (g.generator < 1 || g.generator > 6)
      throw InvalidConfig("group generator index must lie in 1..6");
    if (g.generator == 5) {
      a = std::exp(3.0 * g.eps);
      b = std::exp(2.0 * g.eps);
    } else if (g.generator == 6) {
      a = std::exp(3.0 * g.eps);
      b = std::exp(g.eps);
    }
  }
  double t(double t0) const {
    if (g.generator == 1) return t0 + g.eps;
    if (g.generator == 5) return a * t0;
    return t0;
  }
  double s(double s0) const {
    if (g.generator == 2) return s0 + g.eps;
    if (g.generator == 6) return a * s0;
    return s0;
  }
  double x(double t0, double x0) const {
    switch (g.generator) {
      case 3:
        return x0 + g.eps;
      case 4:
        return x0 + g.eps * t0;
      case 5:
      case 6:
        return b * x0;
      default:
        return x0;
    }
  }
};

}  // namespace

Stencil9 group_transform(const GroupElement& g, const Stencil9& st) {
  const PointMap f(g);
  Stencil9 out;
  for (int k = 0; k < 3; ++k) {
    out.t[k] = f.t(st.t[k]);
    out.s[k] = f.s(st.s[k]);
    for (int j = 0; j < 3; ++j) out.x[k][j] = f.x(st.t[k], st.x[k][j]);
  }
  return out;
}

Lattice group_transform(const GroupElement& g, const Lattice& lat) {
  const PointMap f(g);
  Lattice out;
  out.t.reserve(lat.t.size());
  out.s.reserve(lat.s.size());
  for (double t : lat.t) out.t.push_back(f.t(t));
  for (double s : lat.s) out.s.push_back(f.s(s));
  out.x.resize(lat.x.size());
  for (std::size_t n = 0; n < lat.x.size(); ++n) {
    out.x[n].reserve(lat.x[n].size());
    for (double x : lat.x[n]) out.x[n].push_back(f.x(lat.t[n], x));
  }
  return out;
}

double residual_equivariance_weight(const GroupElement& g) {
  if (g.generator == 5) return std::exp(-4.0 * g.eps);
  if (g.generator == 6) return std::exp(g.eps);
  return 1.0;
}

double invariance_defect(const GroupElement& g, const Stencil9& st) {
  return std::abs(scaled_residual(group_transform(g, st)) - scaled_residual(st));
}

Stencil9 random_monotone_stencil(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  auto in = [&](double a, double b) { return a + (b - a) * U(rng); };
  Stencil9 st;
  const double tau = in(0.01, 0.5), h = in(0.01, 0.5);
  st.t[0] = in(0.1, 2.0);
  st.t[1] = st.t[0] + tau * in(0.5, 2.0);
  st.t[2] = st.t[1] + tau * in(0.5, 2.0);
  st.s[0] = in(-1.0, 1.0);
  st.s[1] = st.s[0] + h * in(0.5, 2.0);
  st.s[2] = st.s[1] + h * in(0.5, 2.0);
  const double x0 = in(-1.0, 1.0);
  for (int k = 0; k < 3; ++k) {
    st.x[k][0] = x0 + tau * in(-1.0, 1.0) * k;
    for (int j = 1; j < 3; ++j)
      st.x[k][j] = st.x[k][j - 1] + (st.s[j] - st.s[j - 1]) * in(0.5, 1.5);
  }
  return st;
}

}  // namespace swlag
