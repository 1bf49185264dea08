#include "fdlm/geom_intersect.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace fdlm {
namespace {

constexpr double kCollinearTol = 1e-12;  // relative to polygon diameter
constexpr double kSliverTol = 1e-14;     // relative to the solid element area

double diameter(const std::vector<Vec2>& pts) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, (pts[i] - pts[j]).norm());
  return d;
}

double polygon_signed_area(const std::vector<Vec2>& v) {
  double a = 0.0;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++)
    a += v[j].x() * v[i].y() - v[i].x() * v[j].y();
  return 0.5 * a;
}

void make_ccw(std::vector<Vec2>& v) {
  if (v.size() >= 3 && polygon_signed_area(v) < 0.0) std::reverse(v.begin(), v.end());
}

// Drops repeated and collinear vertices; anything left with < 3 vertices is empty.
void cleanup(std::vector<Vec2>& v, double eps) {
  bool changed = true;
  while (changed && v.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < v.size() && v.size() >= 3; ++i) {
      const Vec2& prev = v[(i + v.size() - 1) % v.size()];
      const Vec2& cur = v[i];
      const Vec2& next = v[(i + 1) % v.size()];
      const double base = (next - prev).norm();
      const bool duplicate = (cur - prev).norm() <= eps;
      const bool collinear = base > 0.0 && std::abs(orient2d(prev, cur, next)) / base <= eps;
      if (duplicate || collinear) {
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  if (v.size() < 3) v.clear();
}

}  // namespace

double ConvexPolygon::area() const {
  if (empty()) return 0.0;
  return std::abs(polygon_signed_area(vertices));
}

ConvexPolygon clip_convex(const ConvexPolygon& subject, const ConvexPolygon& clip) {
  if (subject.empty() || clip.empty()) return {};
  std::vector<Vec2> out = subject.vertices;
  std::vector<Vec2> clipper = clip.vertices;
  make_ccw(out);
  make_ccw(clipper);
  const double eps = kCollinearTol * std::max(diameter(out), diameter(clipper));

  std::vector<Vec2> in;
  for (std::size_t e = 0; e < clipper.size() && !out.empty(); ++e) {
    const Vec2& a = clipper[e];
    const Vec2& b = clipper[(e + 1) % clipper.size()];
    const double len = (b - a).norm();
    auto dist = [&](const Vec2& p) { return orient2d(a, b, p) / len; };

    in.swap(out);
    out.clear();
    for (std::size_t k = 0; k < in.size(); ++k) {
      const Vec2& p = in[k];
      const Vec2& q = in[(k + 1) % in.size()];
      const double dp = dist(p);
      const double dq = dist(q);
      const bool p_in = dp >= -eps;
      const bool q_in = dq >= -eps;
      if (p_in) out.push_back(p);
      if (p_in != q_in && std::abs(dp) > eps && std::abs(dq) > eps) {
        const double t = dp / (dp - dq);
        out.push_back(p + t * (q - p));
      }
    }
  }
  cleanup(out, eps);
  return {std::move(out)};
}

ConvexPolygon clip_triangle(const Triangle& subject, const Triangle& clip) {
  for (const Triangle* t : {&subject, &clip}) {
    const double d = diameter({(*t)[0], (*t)[1], (*t)[2]});
    if (!(d > 0.0) || std::abs(orient2d((*t)[0], (*t)[1], (*t)[2])) <= kCollinearTol * d * d)
      throw std::invalid_argument("clip_triangle: degenerate triangle");
  }
  return clip_convex({{subject[0], subject[1], subject[2]}}, {{clip[0], clip[1], clip[2]}});
}

std::vector<Triangle> fan_triangulate(const ConvexPolygon& p) {
  std::vector<Triangle> out;
  if (p.empty()) return out;
  const auto& v = p.vertices;
  out.reserve(v.size() - 2);
  for (std::size_t k = 1; k + 1 < v.size(); ++k) out.push_back({v[0], v[k], v[k + 1]});
  return out;
}

double CompositeQuadScheme::area() const {
  double a = 0.0;
  for (const auto& s : subcells) a += std::abs(signed_area(s.cell));
  return a;
}

CompositeQuadScheme build_composite_scheme(const Triangle& solid_tri, const AffineMap& xbar,
                                           const Triangulation& fluid_mesh,
                                           const QuadratureRule& rule) {
  const Triangle mapped = xbar(solid_tri);
  const Rect& dom = fluid_mesh.domain();
  const double tol = 1e-12 * std::max(dom.width(), dom.height());
  Vec2 lo = mapped[0], hi = mapped[0];
  for (const auto& p : mapped) {
    if (!dom.contains(p, tol))
      throw DomainViolation(fmt::format("mapped solid vertex ({}, {}) lies outside the fluid domain",
                                        p.x(), p.y()));
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }

  const AffineMap pullback = xbar.inverse();
  const double mapped_area = std::abs(signed_area(mapped));
  const ConvexPolygon subject{{mapped[0], mapped[1], mapped[2]}};

  CompositeQuadScheme scheme;
  scheme.rule = &rule;
  const CellRange cells = cells_overlapping(fluid_mesh, lo, hi);
  for (int j = cells.j0; j <= cells.j1; ++j) {
    for (int i = cells.i0; i <= cells.i1; ++i) {
      for (const int f : fluid_mesh.cell_triangles(i, j)) {
        const Triangle ft = fluid_mesh.triangle(static_cast<std::size_t>(f));
        const ConvexPolygon piece = clip_convex(subject, {{ft[0], ft[1], ft[2]}});
        if (piece.empty() || piece.area() < kSliverTol * mapped_area) continue;

        const bool untouched = piece.vertices.size() == 3 &&
                               std::is_permutation(piece.vertices.begin(), piece.vertices.end(),
                                                   subject.vertices.begin());
        if (untouched) {
          scheme.subcells.push_back({solid_tri, f});
          continue;
        }
        for (const Triangle& xt : fan_triangulate(piece)) {
          if (std::abs(signed_area(xt)) < kSliverTol * mapped_area) continue;
          Triangle st = pullback(xt);
          if (signed_area(st) < 0.0) std::swap(st[1], st[2]);
          scheme.subcells.push_back({st, f});
        }
      }
    }
  }
  return scheme;
}

}  // namespace fdlm
