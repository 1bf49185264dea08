#include "fdlm/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace fdlm {
namespace {

// Relative slack used by point location, in units of the grid spacing.
constexpr double kLocateTol = 1e-12;

Vec2 grid_point(const Rect& d, int n, int i, int j) {
  return {d.min.x() + d.width() * i / n, d.min.y() + d.height() * j / n};
}

void validate(const Rect& domain, int n) {
  if (n < 1) throw std::invalid_argument("uniform_mesh: n must be >= 1");
  if (!(domain.width() > 0.0) || !(domain.height() > 0.0))
    throw std::invalid_argument("uniform_mesh: degenerate rectangle");
}

}  // namespace

Triangulation uniform_mesh(const Rect& domain, int n, Orientation orientation) {
  validate(domain, n);
  Triangulation m;
  m.n_ = n;
  m.domain_ = domain;
  m.orientation_ = orientation;

  const int nv = n + 1;
  m.vertices_.reserve(static_cast<std::size_t>(nv) * nv);
  m.boundary_.reserve(static_cast<std::size_t>(nv) * nv);
  for (int j = 0; j < nv; ++j) {
    for (int i = 0; i < nv; ++i) {
      m.vertices_.push_back(grid_point(domain, n, i, j));
      m.boundary_.push_back(i == 0 || j == 0 || i == n || j == n);
    }
  }

  m.triangles_.reserve(2 * static_cast<std::size_t>(n) * n);
  m.cells_.reserve(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int v00 = j * nv + i;
      const int v10 = v00 + 1;
      const int v01 = v00 + nv;
      const int v11 = v01 + 1;
      const int t = static_cast<int>(m.triangles_.size());
      if (orientation == Orientation::right) {
        m.triangles_.push_back({v00, v10, v11});
        m.triangles_.push_back({v00, v11, v01});
      } else {
        m.triangles_.push_back({v00, v10, v01});
        m.triangles_.push_back({v10, v11, v01});
      }
      m.cells_.push_back({t, t + 1});
    }
  }
  return m;
}

Triangulation midpoint_refine(const Triangulation& mesh) {
  if (mesh.cells_.empty()) throw std::invalid_argument("midpoint_refine: mesh is not structured");
  const int n = mesh.n_;
  const int nc = 2 * n;
  const int nv_coarse = n + 1;
  const int nv = nc + 1;

  Triangulation r;
  r.n_ = nc;
  r.domain_ = mesh.domain_;
  r.orientation_ = mesh.orientation_;
  r.parent_n_ = n;

  r.vertices_.reserve(static_cast<std::size_t>(nv) * nv);
  r.boundary_.reserve(static_cast<std::size_t>(nv) * nv);
  for (int j = 0; j < nv; ++j) {
    for (int i = 0; i < nv; ++i) {
      r.vertices_.push_back(grid_point(r.domain_, nc, i, j));
      r.boundary_.push_back(i == 0 || j == 0 || i == nc || j == nc);
    }
  }

  // Coarse vertex (i, j) sits at fine grid position (2i, 2j); an edge midpoint at
  // the sum of its endpoints' coarse positions.
  auto coarse_ij = [&](int v) { return std::array<int, 2>{v % nv_coarse, v / nv_coarse}; };
  auto corner = [&](int v) {
    const auto [i, j] = coarse_ij(v);
    return 2 * j * nv + 2 * i;
  };
  auto midpoint = [&](int a, int b) {
    const auto [ia, ja] = coarse_ij(a);
    const auto [ib, jb] = coarse_ij(b);
    return (ja + jb) * nv + (ia + ib);
  };

  r.triangles_.reserve(4 * mesh.triangles_.size());
  r.parent_.reserve(4 * mesh.triangles_.size());
  for (std::size_t t = 0; t < mesh.triangles_.size(); ++t) {
    const auto [a, b, c] = mesh.triangles_[t];
    const int va = corner(a), vb = corner(b), vc = corner(c);
    const int mab = midpoint(a, b), mbc = midpoint(b, c), mca = midpoint(c, a);
    r.triangles_.push_back({va, mab, mca});
    r.triangles_.push_back({mab, vb, mbc});
    r.triangles_.push_back({mca, mbc, vc});
    r.triangles_.push_back({mab, mbc, mca});
    for (int k = 0; k < 4; ++k) r.parent_.push_back(static_cast<int>(t));
  }

  r.cells_.assign(static_cast<std::size_t>(nc) * nc, {-1, -1});
  const double hx = r.domain_.width() / nc;
  const double hy = r.domain_.height() / nc;
  for (std::size_t t = 0; t < r.triangles_.size(); ++t) {
    const Vec2 c = centroid(r.triangle(t));
    const int i = static_cast<int>(std::floor((c.x() - r.domain_.min.x()) / hx));
    const int j = static_cast<int>(std::floor((c.y() - r.domain_.min.y()) / hy));
    auto& slot = r.cells_[static_cast<std::size_t>(j) * nc + i];
    if (slot[0] < 0)
      slot[0] = static_cast<int>(t);
    else
      slot[1] = static_cast<int>(t);
  }
  return r;
}

AffineMap element_map(const Triangulation& mesh, std::size_t t) {
  if (t >= mesh.n_triangles())
    throw std::out_of_range(fmt::format("element_map: triangle {} out of range", t));
  return AffineMap::from_reference(mesh.triangle(t));
}

CellRange cells_overlapping(const Triangulation& mesh, const Vec2& lo, const Vec2& hi) {
  const Rect& d = mesh.domain();
  const int n = mesh.n_cells_per_side();
  const double hx = d.width() / n;
  const double hy = d.height() / n;
  auto clamp = [n](double v) { return std::clamp(static_cast<int>(std::floor(v)), 0, n - 1); };
  return {clamp((lo.x() - d.min.x()) / hx), clamp((hi.x() - d.min.x()) / hx),
          clamp((lo.y() - d.min.y()) / hy), clamp((hi.y() - d.min.y()) / hy)};
}

std::optional<int> locate_point(const Triangulation& mesh, const Vec2& x) {
  const Rect& d = mesh.domain();
  const int n = mesh.n_cells_per_side();
  const double hx = d.width() / n;
  const double hy = d.height() / n;
  if (!d.contains(x, kLocateTol * std::max(hx, hy))) return std::nullopt;

  const double fx = (x.x() - d.min.x()) / hx;
  const double fy = (x.y() - d.min.y()) / hy;
  const CellRange range{
      std::clamp(static_cast<int>(std::floor(fx - kLocateTol)), 0, n - 1),
      std::clamp(static_cast<int>(std::floor(fx + kLocateTol)), 0, n - 1),
      std::clamp(static_cast<int>(std::floor(fy - kLocateTol)), 0, n - 1),
      std::clamp(static_cast<int>(std::floor(fy + kLocateTol)), 0, n - 1)};

  int best = -1;
  for (int j = range.j0; j <= range.j1; ++j) {
    for (int i = range.i0; i <= range.i1; ++i) {
      for (const int t : mesh.cell_triangles(i, j)) {
        if (best >= 0 && t >= best) continue;
        const auto lam = barycentric(mesh.triangle(static_cast<std::size_t>(t)), x);
        if (lam[0] >= -kLocateTol && lam[1] >= -kLocateTol && lam[2] >= -kLocateTol) best = t;
      }
    }
  }
  if (best < 0) return std::nullopt;
  return best;
}

void write_mesh(std::ostream& os, const Triangulation& mesh) {
  os << fmt::format("vertices {} triangles {}\n", mesh.n_vertices(), mesh.n_triangles());
  for (const auto& v : mesh.vertices()) os << fmt::format("{:.17g} {:.17g}\n", v.x(), v.y());
  for (const auto& t : mesh.triangles()) os << fmt::format("{} {} {}\n", t[0], t[1], t[2]);
}

}  // namespace fdlm
