// SPDX-License-Identifier: MIT
//
// Test-only oracles, deliberately independent of the library's iterative
// paths: a dense Cholesky direct solve, dense matrix extraction, and
// finite-difference derivative checks.

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "meshcond/sparse.hpp"

namespace oracles {

inline std::vector<double> dense_from(const meshcond::SparseSystem& a) {
  const int n = a.dof;
  std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
      m[static_cast<std::size_t>(i) * n + a.col_idx[k]] = a.values[k];
  return m;
}

// Plain Cholesky factorization solve of a dense SPD matrix.
inline std::vector<double> dense_solve(std::vector<double> m, std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  for (int j = 0; j < n; ++j) {
    double d = m[static_cast<std::size_t>(j) * n + j];
    for (int k = 0; k < j; ++k) d -= m[static_cast<std::size_t>(j) * n + k] * m[static_cast<std::size_t>(j) * n + k];
    if (!(d > 0.0)) throw std::runtime_error("dense_solve: matrix not positive definite");
    const double ljj = std::sqrt(d);
    m[static_cast<std::size_t>(j) * n + j] = ljj;
    for (int i = j + 1; i < n; ++i) {
      double s = m[static_cast<std::size_t>(i) * n + j];
      for (int k = 0; k < j; ++k) s -= m[static_cast<std::size_t>(i) * n + k] * m[static_cast<std::size_t>(j) * n + k];
      m[static_cast<std::size_t>(i) * n + j] = s / ljj;
    }
  }
  // forward then backward substitution
  for (int i = 0; i < n; ++i) {
    double s = b[static_cast<std::size_t>(i)];
    for (int k = 0; k < i; ++k) s -= m[static_cast<std::size_t>(i) * n + k] * b[static_cast<std::size_t>(k)];
    b[static_cast<std::size_t>(i)] = s / m[static_cast<std::size_t>(i) * n + i];
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = b[static_cast<std::size_t>(i)];
    for (int k = i + 1; k < n; ++k) s -= m[static_cast<std::size_t>(k) * n + i] * b[static_cast<std::size_t>(k)];
    b[static_cast<std::size_t>(i)] = s / m[static_cast<std::size_t>(i) * n + i];
  }
  return b;
}

inline std::vector<double> dense_solve(const meshcond::SparseSystem& a) {
  return dense_solve(dense_from(a), a.rhs);
}

// Builds a SparseSystem from a dense symmetric matrix (tests only).
inline meshcond::SparseSystem system_from_dense(const std::vector<double>& m,
                                                const std::vector<double>& rhs) {
  const int n = static_cast<int>(rhs.size());
  meshcond::SparseSystem a;
  a.dof = n;
  a.rhs = rhs;
  a.row_ptr.push_back(0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = m[static_cast<std::size_t>(i) * n + j];
      if (v != 0.0) {
        a.col_idx.push_back(j);
        a.values.push_back(v);
      }
    }
    a.row_ptr.push_back(static_cast<int>(a.col_idx.size()));
  }
  return a;
}

inline meshcond::SparseSystem diagonal_system(const std::vector<double>& d) {
  meshcond::SparseSystem a;
  a.dof = static_cast<int>(d.size());
  a.rhs.assign(d.size(), 0.0);
  a.row_ptr.push_back(0);
  for (int i = 0; i < a.dof; ++i) {
    a.col_idx.push_back(i);
    a.values.push_back(d[static_cast<std::size_t>(i)]);
    a.row_ptr.push_back(i + 1);
  }
  return a;
}

template <class F>
double central_difference(F&& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

template <class F>
double second_difference(F&& f, double x, double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

// Five-point Laplacian of a 2D field.
template <class F>
double laplacian_5pt(F&& f, double x, double y, double h) {
  return (f(x + h, y) + f(x - h, y) + f(x, y + h) + f(x, y - h) - 4.0 * f(x, y)) / (h * h);
}

} // namespace oracles
