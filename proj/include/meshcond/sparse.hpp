// SPDX-License-Identifier: MIT
//
// Symmetric positive definite system in compressed sparse row layout, one
// row per cell, plus the right-hand side. Assembly also records per-face
// transmissibilities and boundary data so flux functionals can be
// evaluated from the system without re-touching the coefficient field.

#pragma once

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace meshcond {

struct SparseSystem {
  int dof = 0;
  std::vector<int> row_ptr;  // size dof+1
  std::vector<int> col_idx;  // column indices, ascending within a row
  std::vector<double> values;
  std::vector<double> rhs;

  // Assembly byproducts, parallel to Mesh::faces: the transmissibility of
  // every face and the Dirichlet value at boundary-face midpoints.
  std::vector<double> face_trans;
  std::vector<double> face_dirichlet;
};

inline void apply(const SparseSystem& a, const double* x, double* y) {
  for (int i = 0; i < a.dof; ++i) {
    double s = 0.0;
    for (int k = a.row_ptr[static_cast<std::size_t>(i)];
         k < a.row_ptr[static_cast<std::size_t>(i) + 1]; ++k)
      s += a.values[static_cast<std::size_t>(k)] * x[a.col_idx[static_cast<std::size_t>(k)]];
    y[i] = s;
  }
}

inline std::vector<double> apply(const SparseSystem& a, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != a.dof)
    throw std::invalid_argument("apply: dimension mismatch");
  std::vector<double> y(x.size());
  apply(a, x.data(), y.data());
  return y;
}

// Stored entry (i,j), 0 if absent from the pattern.
inline double csr_entry(const SparseSystem& a, int i, int j) {
  const auto b = a.col_idx.begin() + a.row_ptr[static_cast<std::size_t>(i)];
  const auto e = a.col_idx.begin() + a.row_ptr[static_cast<std::size_t>(i) + 1];
  const auto it = std::lower_bound(b, e, j);
  if (it == e || *it != j) return 0.0;
  return a.values[static_cast<std::size_t>(it - a.col_idx.begin())];
}

// Coordinate text export: one "row col value" triple per stored entry,
// row-major, 17 significant digits (value round-trips exactly).
inline void write_coordinate(std::ostream& os, const SparseSystem& a) {
  char buf[64];
  for (int i = 0; i < a.dof; ++i)
    for (int k = a.row_ptr[static_cast<std::size_t>(i)];
         k < a.row_ptr[static_cast<std::size_t>(i) + 1]; ++k) {
      std::snprintf(buf, sizeof buf, "%d %d %.17g\n", i, a.col_idx[static_cast<std::size_t>(k)],
                    a.values[static_cast<std::size_t>(k)]);
      os << buf;
    }
}

} // namespace meshcond
