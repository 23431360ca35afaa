// SPDX-License-Identifier: MIT
//
// Quadtree meshes of [-1,1]^2 with hanging nodes.
//
// All four mesh families share one representation: a root tensor grid of
// grid lines per axis (which must include 0, so no cell ever straddles a
// coordinate axis) plus a set of leaf cells addressed by (level, ix, iy).
// A level-L cell splits root cell (ix>>L, iy>>L) into 2^L x 2^L congruent
// pieces. Tensor-product meshes are the unrefined level-0 case.
//
// All adjacency, balance and face-matching logic runs on the integer
// indices at the finest level, so meshes are reproducible bit-for-bit and
// hanging interfaces are detected exactly. Floating-point coordinates are
// derived from one canonical mapping of grid-line index to coordinate.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace meshcond {

enum class MeshFamily { uniform, graded, locally_refined, adaptive };

inline const char* family_name(MeshFamily f) {
  switch (f) {
    case MeshFamily::uniform: return "uniform";
    case MeshFamily::graded: return "graded";
    case MeshFamily::locally_refined: return "locally_refined";
    case MeshFamily::adaptive: return "adaptive";
  }
  return "unknown";
}

struct Cell {
  int id = 0;
  double cx = 0, cy = 0; // center
  double hx = 0, hy = 0; // halfwidths
  int level = 0;         // refinement depth below the root grid
  int quadrant = 0;      // 1..4, from the center
};

struct Face {
  enum class Kind { interior, boundary };
  Kind kind = Kind::interior;
  int left = -1;       // cell on the negative side of the face plane
  int right = -1;      // cell on the positive side, -1 on the boundary
  int axis = 0;        // 0: normal along x, 1: normal along y
  int orientation = 1; // outward normal sign for boundary faces; +1 inside
  double area = 0;     // face length (2D measure)
  double dl = 0, dr = 0; // center-to-face distances; dr = 0 on the boundary
  double mx = 0, my = 0; // face midpoint
};

struct Mesh {
  struct Key {
    int level;
    std::int64_t ix, iy;
    friend bool operator<(const Key& a, const Key& b) {
      if (a.level != b.level) return a.level < b.level;
      if (a.ix != b.ix) return a.ix < b.ix;
      return a.iy < b.iy;
    }
    friend bool operator==(const Key& a, const Key& b) {
      return a.level == b.level && a.ix == b.ix && a.iy == b.iy;
    }
  };

  MeshFamily family = MeshFamily::uniform;
  std::vector<double> grid_x, grid_y; // root grid lines, ascending, contain 0
  std::vector<Cell> cells;            // sorted by (center y, center x)
  std::vector<Face> faces;            // sorted by (axis, line, offset)
  std::vector<Key> keys;              // quadtree address per cell
  int max_level = 0;
};

struct MeshStats {
  int cell_count = 0;
  int face_count = 0;
  double min_side = 0;
  double max_side = 0;
  int max_level = 0;
};

namespace detail {

// Coordinate of fine grid line g on a root axis t subdivided 2^depth times.
// Computed one way only so coincident lines compare bit-equal.
inline double line_coord(const std::vector<double>& t, std::int64_t g, int depth) {
  const std::int64_t r = g >> depth;
  const std::int64_t m = g - (r << depth);
  if (m == 0) return t[static_cast<std::size_t>(r)];
  const double w = std::ldexp(t[static_cast<std::size_t>(r) + 1] - t[static_cast<std::size_t>(r)], -depth);
  return t[static_cast<std::size_t>(r)] + static_cast<double>(m) * w;
}

inline int max_key_level(const std::vector<Mesh::Key>& keys) {
  int lmax = 0;
  for (const auto& k : keys) lmax = std::max(lmax, k.level);
  return lmax;
}

struct EdgeSpan {
  std::int64_t lo, hi; // transverse extent at the finest scale
  int cell;
  int level;
};

// Visits every interior adjacency and every boundary edge, axis by axis,
// lines in ascending order, spans in ascending transverse order. Throws if
// the cells fail to tile the domain (gap or overlap across a line).
//
// pair_fn(axis, g, lo, hi, neg, pos): neg/pos index the cells on the
// negative/positive side of line g; [lo,hi) is the shared extent.
// boundary_fn(axis, g, lo, hi, cell, orientation).
template <class PairFn, class BoundaryFn>
void scan_adjacency(const std::vector<Mesh::Key>& keys, std::int64_t nx, std::int64_t ny,
                    int lmax, PairFn&& pair_fn, BoundaryFn&& boundary_fn) {
  for (int axis = 0; axis < 2; ++axis) {
    // neg_side[g]: cells whose high edge along this axis lies on line g.
    std::map<std::int64_t, std::vector<EdgeSpan>> neg_side, pos_side;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      const auto& k = keys[i];
      const std::int64_t s = std::int64_t{1} << (lmax - k.level);
      const std::int64_t main = (axis == 0 ? k.ix : k.iy);
      const std::int64_t tr = (axis == 0 ? k.iy : k.ix);
      const EdgeSpan span{tr * s, (tr + 1) * s, static_cast<int>(i), k.level};
      neg_side[(main + 1) * s].push_back(span);
      pos_side[main * s].push_back(span);
    }
    const std::int64_t gmax = (axis == 0 ? nx : ny) << lmax;

    std::set<std::int64_t> lines;
    for (const auto& [g, spans] : neg_side) lines.insert(g);
    for (const auto& [g, spans] : pos_side) lines.insert(g);

    const auto by_lo = [](const EdgeSpan& a, const EdgeSpan& b) { return a.lo < b.lo; };
    for (const std::int64_t g : lines) {
      auto neg_it = neg_side.find(g);
      auto pos_it = pos_side.find(g);
      if (g == 0) {
        auto& spans = pos_it->second;
        std::sort(spans.begin(), spans.end(), by_lo);
        for (const auto& sp : spans) boundary_fn(axis, g, sp.lo, sp.hi, sp.cell, -1);
        continue;
      }
      if (g == gmax) {
        auto& spans = neg_it->second;
        std::sort(spans.begin(), spans.end(), by_lo);
        for (const auto& sp : spans) boundary_fn(axis, g, sp.lo, sp.hi, sp.cell, +1);
        continue;
      }
      if (neg_it == neg_side.end() || pos_it == pos_side.end())
        throw std::runtime_error("mesh: cells do not tile the domain (one-sided interior line)");
      auto& neg = neg_it->second;
      auto& pos = pos_it->second;
      std::sort(neg.begin(), neg.end(), by_lo);
      std::sort(pos.begin(), pos.end(), by_lo);

      // Both lists cover the same transverse set; sweep matched pieces.
      std::size_t i = 0, j = 0;
      std::int64_t ipos = neg[0].lo, jpos = pos[0].lo;
      while (true) {
        if (i < neg.size() && ipos == neg[i].hi) {
          ++i;
          if (i < neg.size()) ipos = std::max(ipos, neg[i].lo);
          continue;
        }
        if (j < pos.size() && jpos == pos[j].hi) {
          ++j;
          if (j < pos.size()) jpos = std::max(jpos, pos[j].lo);
          continue;
        }
        if (i == neg.size() && j == pos.size()) break;
        if (i == neg.size() || j == pos.size() || ipos != jpos)
          throw std::runtime_error("mesh: cells do not tile the domain (misaligned interior line)");
        if (ipos < neg[i].lo || jpos < pos[j].lo)
          throw std::runtime_error("mesh: cells do not tile the domain (gap on interior line)");
        const std::int64_t hi = std::min(neg[i].hi, pos[j].hi);
        pair_fn(axis, g, ipos, hi, neg[i].cell, pos[j].cell);
        ipos = jpos = hi;
      }
    }
  }
}

// Splits the keys at the given positions into four children each, then
// closes the set under 2:1 face balance.
inline std::vector<Mesh::Key> split_and_balance(std::vector<Mesh::Key> keys,
                                                const std::set<int>& marked,
                                                std::int64_t nx, std::int64_t ny) {
  auto split = [](std::vector<Mesh::Key>& ks, const std::set<int>& sel) {
    std::vector<Mesh::Key> out;
    out.reserve(ks.size() + 3 * sel.size());
    for (std::size_t i = 0; i < ks.size(); ++i) {
      if (sel.count(static_cast<int>(i))) {
        const auto& k = ks[i];
        if (k.level >= 40) throw std::runtime_error("mesh: refinement level limit exceeded");
        for (int b = 0; b < 2; ++b)
          for (int a = 0; a < 2; ++a)
            out.push_back({k.level + 1, 2 * k.ix + a, 2 * k.iy + b});
      } else {
        out.push_back(ks[i]);
      }
    }
    return out;
  };

  keys = split(keys, marked);
  for (;;) {
    const int lmax = max_key_level(keys);
    std::set<int> unbalanced;
    scan_adjacency(
        keys, nx, ny, lmax,
        [&](int, std::int64_t, std::int64_t, std::int64_t, int neg, int pos) {
          const int dl = keys[neg].level - keys[pos].level;
          if (dl >= 2) unbalanced.insert(pos);
          if (dl <= -2) unbalanced.insert(neg);
        },
        [](int, std::int64_t, std::int64_t, std::int64_t, int, int) {});
    if (unbalanced.empty()) break;
    keys = split(keys, unbalanced);
  }
  return keys;
}

} // namespace detail

// Rebuilds the face list for the given cells; deterministic order
// (x-normal faces by line then offset, then y-normal likewise).
inline std::vector<Face> enumerate_faces(const Mesh& m) {
  const std::int64_t nx = static_cast<std::int64_t>(m.grid_x.size()) - 1;
  const std::int64_t ny = static_cast<std::int64_t>(m.grid_y.size()) - 1;
  const int lmax = detail::max_key_level(m.keys);
  std::vector<Face> faces;

  auto emit = [&](int axis, std::int64_t g, std::int64_t lo, std::int64_t hi, int neg, int pos,
                  int orientation) {
    const auto& tmain = (axis == 0 ? m.grid_x : m.grid_y);
    const auto& ttr = (axis == 0 ? m.grid_y : m.grid_x);
    Face f;
    f.axis = axis;
    f.orientation = orientation;
    const double line = detail::line_coord(tmain, g, lmax);
    const double tlo = detail::line_coord(ttr, lo, lmax);
    const double thi = detail::line_coord(ttr, hi, lmax);
    f.area = thi - tlo;
    const double tmid = 0.5 * (tlo + thi);
    f.mx = (axis == 0 ? line : tmid);
    f.my = (axis == 0 ? tmid : line);
    if (pos >= 0) {
      f.kind = Face::Kind::interior;
      f.left = neg;
      f.right = pos;
      f.dl = (axis == 0 ? m.cells[neg].hx : m.cells[neg].hy);
      f.dr = (axis == 0 ? m.cells[pos].hx : m.cells[pos].hy);
    } else {
      f.kind = Face::Kind::boundary;
      f.left = neg;
      f.right = -1;
      f.dl = (axis == 0 ? m.cells[neg].hx : m.cells[neg].hy);
      f.dr = 0.0;
    }
    faces.push_back(f);
  };

  detail::scan_adjacency(
      m.keys, nx, ny, lmax,
      [&](int axis, std::int64_t g, std::int64_t lo, std::int64_t hi, int neg, int pos) {
        if (std::abs(m.cells[neg].level - m.cells[pos].level) > 1)
          throw std::runtime_error("mesh: 2:1 balance violated across a face");
        emit(axis, g, lo, hi, neg, pos, +1);
      },
      [&](int axis, std::int64_t g, std::int64_t lo, std::int64_t hi, int cell, int orientation) {
        emit(axis, g, lo, hi, cell, -1, orientation);
      });
  return faces;
}

namespace detail {

inline Mesh finalize_mesh(MeshFamily family, std::vector<double> grid_x,
                          std::vector<double> grid_y, std::vector<Mesh::Key> keys) {
  Mesh m;
  m.family = family;
  m.grid_x = std::move(grid_x);
  m.grid_y = std::move(grid_y);
  const int lmax = max_key_level(keys);
  m.max_level = lmax;

  // Lexicographic cell order (by center y, then x) for reproducible
  // matrices regardless of construction history.
  struct Entry {
    double cx, cy, hx, hy;
    int level;
    Mesh::Key key;
  };
  std::vector<Entry> entries;
  entries.reserve(keys.size());
  for (const auto& k : keys) {
    const std::int64_t s = std::int64_t{1} << (lmax - k.level);
    const double xlo = line_coord(m.grid_x, k.ix * s, lmax);
    const double xhi = line_coord(m.grid_x, (k.ix + 1) * s, lmax);
    const double ylo = line_coord(m.grid_y, k.iy * s, lmax);
    const double yhi = line_coord(m.grid_y, (k.iy + 1) * s, lmax);
    entries.push_back({0.5 * (xlo + xhi), 0.5 * (ylo + yhi), 0.5 * (xhi - xlo),
                       0.5 * (yhi - ylo), k.level, k});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.cy != b.cy) return a.cy < b.cy;
    return a.cx < b.cx;
  });

  m.cells.reserve(entries.size());
  m.keys.clear();
  m.keys.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    Cell c;
    c.id = static_cast<int>(i);
    c.cx = e.cx;
    c.cy = e.cy;
    c.hx = e.hx;
    c.hy = e.hy;
    c.level = e.level;
    if (c.cx == 0.0 || c.cy == 0.0)
      throw std::runtime_error("mesh: cell center on a coordinate axis");
    c.quadrant = (c.cx > 0.0) ? (c.cy > 0.0 ? 1 : 4) : (c.cy > 0.0 ? 2 : 3);
    m.cells.push_back(c);
    m.keys.push_back(e.key);
  }
  m.faces = enumerate_faces(m);
  return m;
}

inline void check_root_count(int n, const char* who) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument(std::string(who) +
                                ": cells-per-axis must be even and >= 2 so that "
                                "0 is a grid line");
}

} // namespace detail

inline Mesh build_uniform(int n) {
  detail::check_root_count(n, "build_uniform");
  std::vector<double> lines(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) lines[static_cast<std::size_t>(j)] = (2.0 * j - n) / n;
  std::vector<Mesh::Key> keys;
  keys.reserve(static_cast<std::size_t>(n) * n);
  for (std::int64_t j = 0; j < n; ++j)
    for (std::int64_t i = 0; i < n; ++i) keys.push_back({0, i, j});
  return detail::finalize_mesh(MeshFamily::uniform, lines, lines, std::move(keys));
}

// Symmetric power grading: grid points +/- (j/(n/2))^beta cluster the cells
// at the origin; beta = 1 degenerates to the uniform grid.
inline Mesh build_graded(int n, double beta) {
  detail::check_root_count(n, "build_graded");
  if (!(beta >= 1.0)) throw std::invalid_argument("build_graded: beta must be >= 1");
  const int h = n / 2;
  std::vector<double> lines(static_cast<std::size_t>(n) + 1);
  lines[static_cast<std::size_t>(h)] = 0.0;
  for (int j = 1; j <= h; ++j) {
    const double v = std::pow(static_cast<double>(j) / h, beta);
    lines[static_cast<std::size_t>(h + j)] = v;
    lines[static_cast<std::size_t>(h - j)] = -v;
  }
  lines[0] = -1.0;
  lines[static_cast<std::size_t>(n)] = 1.0;
  std::vector<Mesh::Key> keys;
  keys.reserve(static_cast<std::size_t>(n) * n);
  for (std::int64_t j = 0; j < n; ++j)
    for (std::int64_t i = 0; i < n; ++i) keys.push_back({0, i, j});
  return detail::finalize_mesh(MeshFamily::graded, lines, lines, std::move(keys));
}

inline Mesh refine_cells(const Mesh& m, const std::vector<int>& marked) {
  std::set<int> sel;
  for (int id : marked) {
    if (id < 0 || id >= static_cast<int>(m.cells.size()))
      throw std::out_of_range("refine_cells: invalid cell id");
    sel.insert(id);
  }
  const std::int64_t nx = static_cast<std::int64_t>(m.grid_x.size()) - 1;
  const std::int64_t ny = static_cast<std::int64_t>(m.grid_y.size()) - 1;
  auto keys = detail::split_and_balance(m.keys, sel, nx, ny);
  return detail::finalize_mesh(m.family, m.grid_x, m.grid_y, std::move(keys));
}

// Geometric refinement toward the origin: at step k every cell overlapping
// the open square (-2^-k, 2^-k)^2 splits.
inline Mesh build_locally_refined(int n0, int levels) {
  if (levels < 0) throw std::invalid_argument("build_locally_refined: levels must be >= 0");
  Mesh m = build_uniform(n0);
  m.family = MeshFamily::locally_refined;
  for (int k = 1; k <= levels; ++k) {
    const double b = std::ldexp(1.0, -k);
    std::vector<int> marked;
    for (const auto& c : m.cells) {
      const bool overlap_x = (c.cx - c.hx < b) && (c.cx + c.hx > -b);
      const bool overlap_y = (c.cy - c.hy < b) && (c.cy + c.hy > -b);
      if (overlap_x && overlap_y) marked.push_back(c.id);
    }
    m = refine_cells(m, marked);
  }
  return m;
}

inline MeshStats mesh_stats(const Mesh& m) {
  MeshStats s;
  s.cell_count = static_cast<int>(m.cells.size());
  s.face_count = static_cast<int>(m.faces.size());
  s.max_level = 0;
  s.min_side = 4.0;
  s.max_side = 0.0;
  for (const auto& c : m.cells) {
    s.min_side = std::min({s.min_side, 2 * c.hx, 2 * c.hy});
    s.max_side = std::max({s.max_side, 2 * c.hx, 2 * c.hy});
    s.max_level = std::max(s.max_level, c.level);
  }
  return s;
}

} // namespace meshcond
