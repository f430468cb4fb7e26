#include "swlag/implicit_solver.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "swlag/errors.hpp"

namespace swlag {

namespace {

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double a : v) m = std::max(m, std::abs(a));
  return m;
}

void require_finite(std::span<const double> v, int iter, const char* what) {
  for (double a : v)
    if (!std::isfinite(a)) {
      std::ostringstream os;
      os << "non-finite " << what << " at iteration " << iter;
      throw NumericalBlowup(os.str());
    }
}

bool stalled(const std::vector<double>& upd, const SolverOptions& opt) {
  const int w = opt.stall_window;
  if (w <= 0 || static_cast<int>(upd.size()) < w + 1) return false;
  for (int k = 0; k < w; ++k) {
    const std::size_t i = upd.size() - 1 - static_cast<std::size_t>(k);
    if (!(upd[i] > opt.stall_ratio * upd[i - 1])) return false;
  }
  return true;
}

// Newton direction from a finite-difference Jacobian of R at z.
std::vector<double> newton_direction(const ResidualMap& residual,
                                     const std::vector<double>& z,
                                     const std::vector<double>& r,
                                     int half_bw) {
  const std::size_t n = z.size();
  const bool banded = half_bw >= 0 && static_cast<std::size_t>(2 * half_bw + 1) < n;
  const std::size_t colors = banded ? static_cast<std::size_t>(2 * half_bw + 1) : n;

  std::vector<double> zp(z), rp(n);
  std::vector<Eigen::Triplet<double>> trip;
  Eigen::MatrixXd dense;
  if (!banded) dense.setZero(static_cast<long>(n), static_cast<long>(n));

  for (std::size_t c = 0; c < colors; ++c) {
    zp = z;
    for (std::size_t j = c; j < n; j += colors)
      zp[j] += 1e-7 * std::max(1.0, std::abs(z[j]));
    residual(zp, rp);
    for (std::size_t j = c; j < n; j += colors) {
      const double dj = zp[j] - z[j];
      if (banded) {
        const std::size_t lo = j >= static_cast<std::size_t>(half_bw) ? j - half_bw : 0;
        const std::size_t hi = std::min(n - 1, j + static_cast<std::size_t>(half_bw));
        for (std::size_t i = lo; i <= hi; ++i)
          trip.emplace_back(static_cast<int>(i), static_cast<int>(j),
                            (rp[i] - r[i]) / dj);
      } else {
        for (std::size_t i = 0; i < n; ++i)
          dense(static_cast<long>(i), static_cast<long>(j)) = (rp[i] - r[i]) / dj;
      }
    }
  }

  Eigen::VectorXd rhs(static_cast<long>(n));
  for (std::size_t i = 0; i < n; ++i) rhs[static_cast<long>(i)] = -r[i];
  Eigen::VectorXd dz;
  if (banded) {
    Eigen::SparseMatrix<double> J(static_cast<long>(n), static_cast<long>(n));
    J.setFromTriplets(trip.begin(), trip.end());
    J.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(J);
    if (lu.info() != Eigen::Success)
      throw NonConvergence("singular Jacobian in Newton fallback", max_abs(r), 0);
    dz = lu.solve(rhs);
  } else {
    dz = dense.partialPivLu().solve(rhs);
  }
  return std::vector<double>(dz.data(), dz.data() + n);
}

}  // namespace

SolveResult fixed_point_solve(const ResidualMap& residual,
                              std::vector<double> guess,
                              const SolverOptions& opt) {
  if (!(opt.eps > 0.0)) throw InvalidConfig("solver tolerance must be positive");
  if (opt.max_iter < 1) throw InvalidConfig("solver max_iter must be >= 1");
  if (!(opt.damping > 0.0)) throw InvalidConfig("solver damping must be positive");

  SolveResult out;
  out.z = std::move(guess);
  auto& z = out.z;
  auto& rep = out.report;
  const std::size_t n = z.size();
  std::vector<double> r(n);
  require_finite(z, 0, "initial guess");

  if (n == 0) {
    rep.converged = true;
    return out;
  }

  std::vector<double> history;
  bool newton = false;
  while (rep.iterations < opt.max_iter) {
    residual(z, r);
    require_finite(r, rep.iterations, "residual");
    double du = 0.0;
    if (!newton && rep.iterations > 0) {
      // the pending update is d R(z); stop before applying a negligible one
      const double pending = opt.damping * max_abs(r) / std::max(1.0, max_abs(z));
      if (pending <= opt.eps) {
        rep.final_defect = pending;
        rep.converged = true;
        break;
      }
    }
    if (!newton) {
      for (std::size_t i = 0; i < n; ++i) {
        const double d = opt.damping * r[i];
        z[i] -= d;
        du = std::max(du, std::abs(d));
      }
    } else {
      rep.newton_used = true;
      const auto dz = newton_direction(residual, z, r, opt.half_bandwidth);
      const double r0 = max_abs(r);
      std::vector<double> trial(n), rt(n);
      double lambda = 1.0;
      for (int k = 0; k < 12; ++k) {
        for (std::size_t i = 0; i < n; ++i) trial[i] = z[i] + lambda * dz[i];
        residual(trial, rt);
        bool ok = true;
        for (double a : rt) ok = ok && std::isfinite(a);
        if (ok && max_abs(rt) < r0) break;
        lambda *= 0.5;
      }
      for (std::size_t i = 0; i < n; ++i) {
        du = std::max(du, std::abs(trial[i] - z[i]));
        z[i] = trial[i];
      }
    }
    ++rep.iterations;
    require_finite(z, rep.iterations, "iterate");
    const double rel = du / std::max(1.0, max_abs(z));
    rep.final_defect = rel;
    if (rel <= opt.eps) {
      rep.converged = true;
      break;
    }
    history.push_back(rel);
    if (!newton && stalled(history, opt)) newton = true;
  }

  residual(z, r);
  require_finite(r, rep.iterations, "residual");
  rep.final_residual = max_abs(r);
  if (!rep.converged && opt.throw_on_failure) {
    std::ostringstream os;
    os << "fixed-point solve did not converge in " << rep.iterations
       << " iterations (last relative update " << rep.final_defect << ")";
    throw NonConvergence(os.str(), rep.final_defect, rep.iterations);
  }
  return out;
}

}  // namespace swlag
