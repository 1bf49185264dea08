#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "fdlm/geometry.hpp"

namespace fdlm {

/// Diagonal direction of the structured split of each grid cell.
/// `right` cuts from lower-left to upper-right, `left` from lower-right to upper-left.
enum class Orientation { right, left };

/// Structured triangulation of an axis-aligned rectangle.
///
/// Vertices are numbered row-major on the (n+1) x (n+1) grid. For meshes built by
/// `uniform_mesh`, triangles are numbered cell-major (two per cell, the one below
/// the diagonal first). For meshes built by `midpoint_refine`, the four children of
/// parent triangle t are stored at 4t .. 4t+3. In both cases `cell_triangles` maps
/// every grid cell to its two triangles, which is what point location relies on.
class Triangulation {
 public:
  using TriangleIndices = std::array<int, 3>;

  [[nodiscard]] const std::vector<Vec2>& vertices() const { return vertices_; }
  [[nodiscard]] const std::vector<TriangleIndices>& triangles() const { return triangles_; }
  [[nodiscard]] const std::vector<bool>& boundary_vertex_flags() const { return boundary_; }
  [[nodiscard]] std::size_t n_vertices() const { return vertices_.size(); }
  [[nodiscard]] std::size_t n_triangles() const { return triangles_.size(); }
  [[nodiscard]] int n_cells_per_side() const { return n_; }
  [[nodiscard]] const Rect& domain() const { return domain_; }
  [[nodiscard]] Orientation orientation() const { return orientation_; }

  /// Grid spacing along x (the meshsize convention used throughout).
  [[nodiscard]] double spacing() const { return domain_.width() / n_; }

  /// Triangle index of the parent in the coarser mesh; empty unless built by refinement.
  [[nodiscard]] const std::vector<int>& parent_triangles() const { return parent_; }
  [[nodiscard]] int parent_cells_per_side() const { return parent_n_; }

  /// The two triangles covering grid cell (i, j).
  [[nodiscard]] const std::array<int, 2>& cell_triangles(int i, int j) const {
    return cells_[static_cast<std::size_t>(j) * n_ + i];
  }

  [[nodiscard]] Triangle triangle(std::size_t t) const {
    const auto& idx = triangles_.at(t);
    return {vertices_[idx[0]], vertices_[idx[1]], vertices_[idx[2]]};
  }

 private:
  friend Triangulation uniform_mesh(const Rect&, int, Orientation);
  friend Triangulation midpoint_refine(const Triangulation&);

  std::vector<Vec2> vertices_;
  std::vector<TriangleIndices> triangles_;
  std::vector<bool> boundary_;
  std::vector<std::array<int, 2>> cells_;
  std::vector<int> parent_;
  int parent_n_ = 0;
  int n_ = 0;
  Rect domain_{};
  Orientation orientation_ = Orientation::right;
};

/// n x n structured mesh of `domain`, 2n^2 triangles, spacing side / n.
Triangulation uniform_mesh(const Rect& domain, int n, Orientation orientation);

/// Splits every triangle into four through its edge midpoints.
Triangulation midpoint_refine(const Triangulation& mesh);

/// Map from the reference triangle onto triangle t.
AffineMap element_map(const Triangulation& mesh, std::size_t t);

/// Triangle containing x, or nullopt when x is outside the rectangle.
/// Points on shared edges or vertices resolve to the smallest containing index.
std::optional<int> locate_point(const Triangulation& mesh, const Vec2& x);

/// Inclusive range of grid cells overlapped by the box [lo, hi], clamped to the grid.
struct CellRange {
  int i0, i1, j0, j1;
};
CellRange cells_overlapping(const Triangulation& mesh, const Vec2& lo, const Vec2& hi);

/// Plain-text dump: `vertices N triangles M`, N lines `x y`, M lines `i j k`.
void write_mesh(std::ostream& os, const Triangulation& mesh);

}  // namespace fdlm
