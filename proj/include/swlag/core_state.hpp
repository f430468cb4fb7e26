#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace swlag {

// Lagrangian mass lattice. Nodes s_0..s_M, cells [s_m, s_{m+1}] are indexed
// by their left node.
enum class MeshKind { uniform, geometric };

struct MassMesh {
  std::vector<double> s;
  double h = 0.0;      // uniform step, or first step s_1 - s_0
  double tau = 0.0;    // time step
  MeshKind kind = MeshKind::uniform;
  double ratio = 1.0;  // s_{m+1}/s_m on geometric lattices

  std::size_t cells() const { return s.empty() ? 0 : s.size() - 1; }
  std::size_t nodes() const { return s.size(); }
  double step(std::size_t m) const { return s[m + 1] - s[m]; }
  double total_mass() const { return s.back() - s.front(); }
};

MassMesh build_uniform_mass_mesh(std::size_t cells, double h, double tau,
                                 double s0 = 0.0);
MassMesh build_geometric_mass_mesh(std::size_t cells, double s0, double ratio,
                                   double tau);

// Three potential layers x^{n-1}, x^n, x^{n+1}. The centre layer is the
// current level t_n.
struct PotentialHistory {
  std::array<std::vector<double>, 3> layers;
  std::array<double, 3> times{};

  double t() const { return times[1]; }
  double tau_minus() const { return times[1] - times[0]; }
  double tau_plus() const { return times[2] - times[1]; }
  const std::vector<double>& older() const { return layers[0]; }
  const std::vector<double>& current() const { return layers[1]; }
  const std::vector<double>& newer() const { return layers[2]; }
  void advance(std::vector<double> layer, double t_new);
};

// Mass-coordinate layer. Optional vectors are empty when a scheme does not
// use them.
struct MassState {
  double t = 0.0;
  std::vector<double> x;    // nodes
  std::vector<double> u;    // nodes
  std::vector<double> rho;  // cells
  std::vector<double> p;    // cells, thermodynamic pressure
  std::vector<double> q;    // cells, pressure used in the last momentum flux
  std::vector<double> internal_energy;  // cells (Samarskiy-Popov)
  std::vector<double> potential;        // cells (Yelenin-Krylov P)
};

// Bottom profile H(x). Tabulated profiles use cubic Hermite interpolation on
// supplied values and slopes, with linear extension outside the table.
class BottomProfile {
 public:
  enum class Kind { flat, linear, tabulated };

  static BottomProfile flat();
  static BottomProfile linear(double c1, double c2);
  static BottomProfile tabulated(std::vector<double> x, std::vector<double> h,
                                 std::vector<double> dh);

  Kind kind() const { return kind_; }
  double value(double x) const;
  double slope(double x) const;
  double linear_c1() const { return c1_; }
  double linear_c2() const { return c2_; }

 private:
  Kind kind_ = Kind::flat;
  double c1_ = 0.0, c2_ = 0.0;
  std::vector<double> tx_, th_, tdh_;
  std::size_t segment(double x) const;
};

enum class SchemeId {
  inv3,
  inv3_viscous,
  inv2,
  inv3_mass,
  explicit_scheme,
  sampop,
  yelenin,
  korobitsyn,
  inv_bottom_energy,
  inv_bottom_momentum
};

SchemeId parse_scheme_id(std::string_view name);
std::string scheme_name(SchemeId id);
bool is_potential_scheme(SchemeId id);

struct ViscosityParams {
  double nu = 0.0;
  double kappa = 0.0;
  double gamma = 2.0;
  bool compression_only = true;
  // Quadratic term length (kappa h / pi)^2; false uses kappa h / pi.
  bool squared_length = true;
  bool active() const { return nu != 0.0 || kappa != 0.0; }
};

struct SchemeConfig {
  SchemeId scheme = SchemeId::inv2;
  double eps_iter = 1e-3;
  int max_iter = 200;
  double damping = 1.0;
  ViscosityParams viscosity{};
  double mu_visc = 0.0;
  double q_korob = 1.0;
};

struct RestState {
  PotentialHistory history;
  MassState state;
};

// Uniform rest state: x_m = x_left + (s_m - s_0)/rho0, u = 0, rho = rho0,
// p = rho0^2. The potential history holds the same positions on all three
// layers at times -tau, 0, tau.
RestState init_rest_state(const MassMesh& mesh, double rho0,
                          double x_left = 0.0);

struct Snapshot {
  double t = 0.0;
  std::vector<double> s, x, u, rho, p;
  std::size_t rows() const { return s.size(); }
};

// One row per cell (left node). Potential layers give u by backward time
// difference and rho by forward space difference.
Snapshot to_eulerian_snapshot(const PotentialHistory& h, const MassMesh& mesh,
                              long step = -1);
Snapshot to_eulerian_snapshot(const MassState& st, const MassMesh& mesh,
                              long step = -1);

// Throws MeshTangling unless x_s > 0 on every cell.
void check_monotone(const std::vector<double>& x, const MassMesh& mesh,
                    long step);

}  // namespace swlag
