// SPDX-License-Identifier: MIT
//
// Two-point flux approximation of -div(K grad p) = f with Dirichlet data.
//
// Every face carries a transmissibility
//   interior:  T = area / (dl/K_left + dr/K_right)
//   boundary:  T = area / (dl/K_cell)
// i.e. distance-weighted harmonic permeability averaging. The matrix is in
// flux-balance scaling (no division by cell volume), which makes it
// symmetric: an interior face adds T to both diagonals and -T to both
// off-diagonals; a boundary face adds T to the diagonal and T * pD(face
// midpoint) to the right-hand side. Hanging faces (one per fine neighbor)
// use the same two-point formula with the coarse cell's full
// center-to-face distance, preserving symmetry and the M-matrix pattern.

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "meshcond/mesh.hpp"
#include "meshcond/problem.hpp"
#include "meshcond/sparse.hpp"

namespace meshcond {

inline double face_transmissibility(const Face& f, double k_left, double k_right) {
  if (!(k_left > 0.0)) throw std::domain_error("face_transmissibility: K must be positive");
  if (f.kind == Face::Kind::boundary) return f.area / (f.dl / k_left);
  if (!(k_right > 0.0)) throw std::domain_error("face_transmissibility: K must be positive");
  return f.area / (f.dl / k_left + f.dr / k_right);
}

inline SparseSystem assemble(const Mesh& mesh, const FlowProblem& problem) {
  const int n = static_cast<int>(mesh.cells.size());
  std::vector<double> diag(static_cast<std::size_t>(n), 0.0);
  std::vector<double> rhs(static_cast<std::size_t>(n), 0.0);
  std::vector<std::vector<std::pair<int, double>>> off(static_cast<std::size_t>(n));

  SparseSystem sys;
  sys.face_trans.resize(mesh.faces.size(), 0.0);
  sys.face_dirichlet.resize(mesh.faces.size(), 0.0);

  std::vector<double> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    perm[static_cast<std::size_t>(i)] = problem.permeability(mesh.cells[static_cast<std::size_t>(i)].cx,
                                                             mesh.cells[static_cast<std::size_t>(i)].cy);

  for (std::size_t fi = 0; fi < mesh.faces.size(); ++fi) {
    const Face& f = mesh.faces[fi];
    if (f.kind == Face::Kind::interior) {
      const double t = face_transmissibility(f, perm[static_cast<std::size_t>(f.left)],
                                             perm[static_cast<std::size_t>(f.right)]);
      sys.face_trans[fi] = t;
      diag[static_cast<std::size_t>(f.left)] += t;
      diag[static_cast<std::size_t>(f.right)] += t;
      off[static_cast<std::size_t>(f.left)].emplace_back(f.right, -t);
      off[static_cast<std::size_t>(f.right)].emplace_back(f.left, -t);
    } else {
      const double t = face_transmissibility(f, perm[static_cast<std::size_t>(f.left)], 1.0);
      const double pd = problem.dirichlet(f.mx, f.my);
      sys.face_trans[fi] = t;
      sys.face_dirichlet[fi] = pd;
      diag[static_cast<std::size_t>(f.left)] += t;
      rhs[static_cast<std::size_t>(f.left)] += t * pd;
    }
  }

  for (int i = 0; i < n; ++i) {
    const Cell& c = mesh.cells[static_cast<std::size_t>(i)];
    rhs[static_cast<std::size_t>(i)] += problem.source(c.cx, c.cy) * (4.0 * c.hx * c.hy);
  }

  sys.dof = n;
  sys.rhs = std::move(rhs);
  sys.row_ptr.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 0; i < n; ++i)
    sys.row_ptr[static_cast<std::size_t>(i) + 1] =
        sys.row_ptr[static_cast<std::size_t>(i)] + 1 + static_cast<int>(off[static_cast<std::size_t>(i)].size());
  sys.col_idx.reserve(static_cast<std::size_t>(sys.row_ptr.back()));
  sys.values.reserve(static_cast<std::size_t>(sys.row_ptr.back()));
  for (int i = 0; i < n; ++i) {
    auto& row = off[static_cast<std::size_t>(i)];
    row.emplace_back(i, diag[static_cast<std::size_t>(i)]);
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [col, val] : row) {
      sys.col_idx.push_back(col);
      sys.values.push_back(val);
    }
    if (!(diag[static_cast<std::size_t>(i)] > 0.0))
      throw std::runtime_error("assemble: non-positive diagonal (degenerate cell?)");
  }
  return sys;
}

inline SparseSystem assemble(const Mesh& mesh, const ProblemSpec& spec) {
  return assemble(mesh, make_kellogg_problem(spec));
}

// Per-cell flux magnitude sum: mu_i = sum over the faces of cell i of
// |T_f * dp_f|, where dp_f is the pressure drop across the face (boundary
// faces use the recorded Dirichlet value). The adaptive loop tries to
// equidistribute this quantity.
inline std::vector<double> cell_flux_indicator(const Mesh& mesh, const SparseSystem& sys,
                                               const std::vector<double>& pressure) {
  if (static_cast<int>(pressure.size()) != sys.dof ||
      sys.dof != static_cast<int>(mesh.cells.size()) ||
      sys.face_trans.size() != mesh.faces.size())
    throw std::invalid_argument("cell_flux_indicator: dimension mismatch");
  std::vector<double> mu(pressure.size(), 0.0);
  for (std::size_t fi = 0; fi < mesh.faces.size(); ++fi) {
    const Face& f = mesh.faces[fi];
    if (f.kind == Face::Kind::interior) {
      const double flux = std::abs(sys.face_trans[fi] *
                                   (pressure[static_cast<std::size_t>(f.left)] -
                                    pressure[static_cast<std::size_t>(f.right)]));
      mu[static_cast<std::size_t>(f.left)] += flux;
      mu[static_cast<std::size_t>(f.right)] += flux;
    } else {
      mu[static_cast<std::size_t>(f.left)] +=
          std::abs(sys.face_trans[fi] *
                   (sys.face_dirichlet[fi] - pressure[static_cast<std::size_t>(f.left)]));
    }
  }
  return mu;
}

// Cell-area-weighted l2 distance between a cell-center vector and the
// reference solution.
inline double discrete_l2_error(const Mesh& mesh, const std::vector<double>& solution,
                                const FlowProblem& problem) {
  if (solution.size() != mesh.cells.size())
    throw std::invalid_argument("discrete_l2_error: dimension mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < mesh.cells.size(); ++i) {
    const Cell& c = mesh.cells[i];
    const double d = solution[i] - problem.exact(c.cx, c.cy);
    acc += (4.0 * c.hx * c.hy) * d * d;
  }
  return std::sqrt(acc);
}

inline double discrete_l2_error(const Mesh& mesh, const std::vector<double>& solution,
                                const ProblemSpec& spec) {
  return discrete_l2_error(mesh, solution, make_kellogg_problem(spec));
}

} // namespace meshcond
