// SPDX-License-Identifier: MIT
//
// Legacy-ASCII VTK writer (DataFile version 2.0, UNSTRUCTURED_GRID of
// VTK_QUAD cells). Corner points are deduplicated through the exact
// integer grid coordinates, so conforming and hanging corners coincide
// bit-for-bit.

#pragma once

#include <cstdint>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "meshcond/mesh.hpp"

namespace meshcond {

struct VtkCellArray {
  std::string name;
  std::vector<double> data; // one value per cell
  bool as_int = false;
};

inline void write_vtk_quads(std::ostream& os, const Mesh& mesh, const std::string& title,
                            const std::vector<VtkCellArray>& arrays) {
  const int lmax = detail::max_key_level(mesh.keys);
  std::map<std::pair<double, double>, int> point_ids;
  std::vector<std::pair<double, double>> points;
  std::vector<std::array<int, 4>> quads;
  quads.reserve(mesh.cells.size());

  auto point_id = [&](double x, double y) {
    const auto [it, inserted] = point_ids.try_emplace({x, y}, static_cast<int>(points.size()));
    if (inserted) points.emplace_back(x, y);
    return it->second;
  };

  for (std::size_t i = 0; i < mesh.keys.size(); ++i) {
    const auto& k = mesh.keys[i];
    const std::int64_t s = std::int64_t{1} << (lmax - k.level);
    const double xlo = detail::line_coord(mesh.grid_x, k.ix * s, lmax);
    const double xhi = detail::line_coord(mesh.grid_x, (k.ix + 1) * s, lmax);
    const double ylo = detail::line_coord(mesh.grid_y, k.iy * s, lmax);
    const double yhi = detail::line_coord(mesh.grid_y, (k.iy + 1) * s, lmax);
    quads.push_back({point_id(xlo, ylo), point_id(xhi, ylo), point_id(xhi, yhi),
                     point_id(xlo, yhi)});
  }

  char buf[96];
  os << "# vtk DataFile Version 2.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  os << "POINTS " << points.size() << " double\n";
  for (const auto& [x, y] : points) {
    std::snprintf(buf, sizeof buf, "%.12g %.12g 0\n", x, y);
    os << buf;
  }
  os << "CELLS " << quads.size() << " " << 5 * quads.size() << "\n";
  for (const auto& q : quads) os << "4 " << q[0] << " " << q[1] << " " << q[2] << " " << q[3] << "\n";
  os << "CELL_TYPES " << quads.size() << "\n";
  for (std::size_t i = 0; i < quads.size(); ++i) os << "9\n";

  if (!arrays.empty()) {
    os << "CELL_DATA " << quads.size() << "\n";
    for (const auto& arr : arrays) {
      os << "SCALARS " << arr.name << (arr.as_int ? " int 1\n" : " double 1\n");
      os << "LOOKUP_TABLE default\n";
      for (double v : arr.data) {
        if (arr.as_int) {
          os << static_cast<long long>(v) << "\n";
        } else {
          std::snprintf(buf, sizeof buf, "%.12g\n", v);
          os << buf;
        }
      }
    }
  }
}

} // namespace meshcond
