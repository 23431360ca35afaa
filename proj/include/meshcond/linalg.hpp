// SPDX-License-Identifier: MIT
//
// Sparse symmetric solvers and spectrum estimators.
//
// Conjugate Gradient is unpreconditioned on purpose: the whole point of
// the experiment is the conditioning of the raw matrices, and any
// preconditioner would change what is being measured. Extreme eigenvalues
// come from power iteration (largest) and inverse power iteration with an
// inner CG solve (smallest); a dense cyclic-Jacobi eigendecomposition
// serves as the oracle for small systems. Start vectors are produced by a
// fixed linear congruential generator so every estimate is reproducible
// bit-for-bit.

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "meshcond/sparse.hpp"

namespace meshcond {

struct SolveReport {
  std::vector<double> solution;
  std::vector<double> residuals; // relative residual per iteration, [0] = start
  int iterations = 0;
  bool converged = false;
};

struct SpectrumReport {
  double lambda_min = 0;
  double lambda_max = 0;
  double cond = 0;
  std::string method; // "power+inverse" or "dense"
};

// Thrown when an eigenvalue iteration runs out of budget; carries the
// best estimate so callers can report diagnostics.
struct EigenIterationError : std::runtime_error {
  double best_estimate;
  int iterations;
  EigenIterationError(const std::string& msg, double estimate, int iters)
      : std::runtime_error(msg), best_estimate(estimate), iterations(iters) {}
};

namespace detail {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

// Deterministic unit start vector for the eigenvalue iterations.
inline std::vector<double> seeded_unit_vector(int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  std::uint64_t state = 0x9e3779b97f4a7c15ull;
  for (auto& x : v) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    x = static_cast<double>(state >> 11) / 9007199254740992.0 - 0.5;
  }
  const double nv = norm(v);
  for (auto& x : v) x /= nv;
  return v;
}

// CG core on an arbitrary right-hand side. Stops on relative Euclidean
// residual (recurrence residual); records the full history.
inline SolveReport cg_core(const SparseSystem& a, const std::vector<double>& b, double tol,
                           int maxit) {
  if (!(tol >= 0.0)) throw std::invalid_argument("cg: tolerance must be non-negative");
  const std::size_t n = b.size();
  SolveReport rep;
  rep.solution.assign(n, 0.0);
  const double bnorm = norm(b);
  if (bnorm == 0.0) {
    rep.residuals.push_back(0.0);
    rep.converged = true;
    return rep;
  }
  std::vector<double> r = b;
  std::vector<double> p = r;
  std::vector<double> q(n);
  double rr = dot(r, r);
  rep.residuals.push_back(std::sqrt(rr) / bnorm);
  if (rep.residuals.back() <= tol) {
    rep.converged = true;
    return rep;
  }
  while (rep.iterations < maxit) {
    apply(a, p.data(), q.data());
    const double pq = dot(p, q);
    if (!(pq > 0.0))
      throw std::runtime_error("cg: matrix not positive definite (p'Ap <= 0 at iteration " +
                               std::to_string(rep.iterations + 1) + ")");
    const double alpha = rr / pq;
    for (std::size_t i = 0; i < n; ++i) rep.solution[i] += alpha * p[i];
    for (std::size_t i = 0; i < n; ++i) r[i] -= alpha * q[i];
    const double rr_next = dot(r, r);
    ++rep.iterations;
    rep.residuals.push_back(std::sqrt(rr_next) / bnorm);
    if (rep.residuals.back() <= tol) {
      rep.converged = true;
      return rep;
    }
    const double beta = rr_next / rr;
    rr = rr_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
  }
  return rep;
}

} // namespace detail

inline SolveReport cg_solve(const SparseSystem& a, double tol, int maxit) {
  return detail::cg_core(a, a.rhs, tol, maxit);
}

// Power iteration; Rayleigh-quotient estimate, stops when its relative
// change drops below tol.
inline double largest_eigenvalue(const SparseSystem& a, double tol, int maxit) {
  std::vector<double> v = detail::seeded_unit_vector(a.dof);
  std::vector<double> w(v.size());
  double rho_prev = 0.0;
  for (int k = 1; k <= maxit; ++k) {
    apply(a, v.data(), w.data());
    const double rho = detail::dot(v, w); // v is a unit vector
    const double wn = detail::norm(w);
    if (wn == 0.0) throw std::runtime_error("largest_eigenvalue: zero matrix");
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = w[i] / wn;
    if (k > 1 && std::abs(rho - rho_prev) <= tol * std::abs(rho)) return rho;
    rho_prev = rho;
  }
  throw EigenIterationError("largest_eigenvalue: no convergence within " +
                                std::to_string(maxit) + " iterations",
                            rho_prev, maxit);
}

// Inverse power iteration; every application of the inverse is an inner
// CG solve at 1e-12 relative residual.
inline double smallest_eigenvalue(const SparseSystem& a, double tol, int maxit,
                                  double inner_tol = 1e-12) {
  std::vector<double> v = detail::seeded_unit_vector(a.dof);
  std::vector<double> av(v.size());
  const int inner_maxit = std::max(20 * a.dof, 2000);
  double rho_prev = 0.0;
  for (int k = 1; k <= maxit; ++k) {
    SolveReport inner = detail::cg_core(a, v, inner_tol, inner_maxit);
    if (!inner.converged)
      throw std::runtime_error(
          "smallest_eigenvalue: inner CG stalled at outer iteration " + std::to_string(k) +
          " (relative residual " + std::to_string(inner.residuals.back()) + " after " +
          std::to_string(inner.iterations) + " iterations)");
    const double wn = detail::norm(inner.solution);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = inner.solution[i] / wn;
    apply(a, v.data(), av.data());
    const double rho = detail::dot(v, av);
    if (k > 1 && std::abs(rho - rho_prev) <= tol * std::abs(rho)) return rho;
    rho_prev = rho;
  }
  throw EigenIterationError("smallest_eigenvalue: no convergence within " +
                                std::to_string(maxit) + " iterations",
                            rho_prev, maxit);
}

inline SpectrumReport condition_number(const SparseSystem& a, double tol = 1e-8,
                                       int maxit = 200000) {
  SpectrumReport rep;
  rep.lambda_max = largest_eigenvalue(a, tol, maxit);
  rep.lambda_min = smallest_eigenvalue(a, tol, maxit);
  rep.cond = rep.lambda_max / rep.lambda_min;
  rep.method = "power+inverse";
  return rep;
}

// Full symmetric eigendecomposition of a dense copy by cyclic Jacobi
// rotations; oracle for the iterative estimators. Guarded to small
// systems on purpose.
inline std::vector<double> dense_spectrum(const SparseSystem& a) {
  if (a.dof > 400) throw std::invalid_argument("dense_spectrum: dof > 400");
  const int n = a.dof;
  std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int k = a.row_ptr[static_cast<std::size_t>(i)];
         k < a.row_ptr[static_cast<std::size_t>(i) + 1]; ++k)
      m[static_cast<std::size_t>(i) * n + a.col_idx[static_cast<std::size_t>(k)]] =
          a.values[static_cast<std::size_t>(k)];

  double frob = 0.0;
  for (double x : m) frob += x * x;
  frob = std::sqrt(frob);
  const double target = 1e-12 * frob;

  auto off_norm = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) s += m[static_cast<std::size_t>(i) * n + j] * m[static_cast<std::size_t>(i) * n + j];
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 100 && off_norm() > target; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = m[static_cast<std::size_t>(p) * n + q];
        if (apq == 0.0) continue;
        const double app = m[static_cast<std::size_t>(p) * n + p];
        const double aqq = m[static_cast<std::size_t>(q) * n + q];
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double mkp = m[static_cast<std::size_t>(k) * n + p];
          const double mkq = m[static_cast<std::size_t>(k) * n + q];
          m[static_cast<std::size_t>(k) * n + p] = c * mkp - s * mkq;
          m[static_cast<std::size_t>(k) * n + q] = s * mkp + c * mkq;
        }
        for (int k = 0; k < n; ++k) {
          const double mpk = m[static_cast<std::size_t>(p) * n + k];
          const double mqk = m[static_cast<std::size_t>(q) * n + k];
          m[static_cast<std::size_t>(p) * n + k] = c * mpk - s * mqk;
          m[static_cast<std::size_t>(q) * n + k] = s * mpk + c * mqk;
        }
      }
    }
  }
  if (off_norm() > target)
    throw std::runtime_error("dense_spectrum: Jacobi sweeps did not converge");

  std::vector<double> eig(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = m[static_cast<std::size_t>(i) * n + i];
  std::sort(eig.begin(), eig.end());
  return eig;
}

inline SpectrumReport spectrum_from_dense(const SparseSystem& a) {
  const auto eig = dense_spectrum(a);
  SpectrumReport rep;
  rep.lambda_min = eig.front();
  rep.lambda_max = eig.back();
  rep.cond = rep.lambda_max / rep.lambda_min;
  rep.method = "dense";
  return rep;
}

} // namespace meshcond
