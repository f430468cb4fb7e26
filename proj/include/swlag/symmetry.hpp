#pragma once

#include <array>
#include <random>
#include <vector>

#include "swlag/invariant_schemes.hpp"

namespace swlag {

// Nine difference invariants of the six-parameter group, omega^3 = tau_-^2 h_-.
struct InvariantVector {
  std::array<double, 9> I{};
  double omega = 0.0;
  double operator[](int k) const { return I[k - 1]; }  // 1-based
};

InvariantVector difference_invariants(const Stencil9& st);

// Pure scheme in invariant form.
double residual_via_invariants(const InvariantVector& iv);

// Viscous form; alpha = tau_-/h_-.
double residual_via_invariants(const InvariantVector& iv, double mu,
                               double alpha);

// W = tau_-^{4/3} h_-^{-1/3} residual_inv3(st, mu).
double scaled_residual(const Stencil9& st, double mu = 0.0);

// Finite transformations of the generators
//   X1 = d_t, X2 = d_s, X3 = d_x, X4 = t d_x, X5 = 3t d_t + 2x d_x,
//   X6 = 3s d_s + x d_x.
struct GroupElement {
  int generator = 1;  // 1..6
  double eps = 0.0;
};

struct Lattice {
  std::vector<double> t;               // time levels
  std::vector<double> s;               // mass nodes
  std::vector<std::vector<double>> x;  // x[n][m]
};

Stencil9 group_transform(const GroupElement& g, const Stencil9& st);
Lattice group_transform(const GroupElement& g, const Lattice& lat);

// Factor by which the bare residual scales under g: e^{-4 eps} for X5,
// e^{eps} for X6, 1 otherwise.
double residual_equivariance_weight(const GroupElement& g);

// |W(g st) - W(st)|
double invariance_defect(const GroupElement& g, const Stencil9& st);

// Random stencil with positive steps and increasing x on every layer.
Stencil9 random_monotone_stencil(std::mt19937_64& rng);

}  // namespace swlag
