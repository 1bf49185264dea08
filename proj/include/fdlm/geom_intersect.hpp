#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fdlm/geometry.hpp"
#include "fdlm/mesh.hpp"
#include "fdlm/quadrature.hpp"

namespace fdlm {

/// Raised when a mapped solid element leaves the fluid domain.
class DomainViolation : public std::runtime_error {
 public:
  explicit DomainViolation(const std::string& what) : std::runtime_error(what) {}
};

/// Counterclockwise convex polygon; 0-2 vertices encode an empty intersection.
struct ConvexPolygon {
  std::vector<Vec2> vertices;

  [[nodiscard]] bool empty() const { return vertices.size() < 3; }
  [[nodiscard]] double area() const;
};

/// Intersection of a convex subject polygon with a convex clip polygon
/// (successive half-plane clipping against each clip edge).
ConvexPolygon clip_convex(const ConvexPolygon& subject, const ConvexPolygon& clip);

/// Intersection of two triangles; at most six vertices.
ConvexPolygon clip_triangle(const Triangle& subject, const Triangle& clip);

/// Fan from vertex 0; empty for fewer than three vertices.
std::vector<Triangle> fan_triangulate(const ConvexPolygon& p);

/// One piece of a solid element lying inside a single fluid triangle.
struct Subcell {
  Triangle cell;     ///< solid reference (s) coordinates
  int fluid_triangle;
};

/// Composite rule on one solid element: apply `rule` on every subcell.
struct CompositeQuadScheme {
  std::vector<Subcell> subcells;
  const QuadratureRule* rule = nullptr;

  [[nodiscard]] double area() const;
};

/// Splits `solid_tri` (s coordinates) into the pieces whose images under `xbar`
/// fall inside single triangles of `fluid_mesh`. Clipping is done in x; the pieces
/// are pulled back to s. Throws DomainViolation if xbar(solid_tri) leaves the mesh.
CompositeQuadScheme build_composite_scheme(const Triangle& solid_tri, const AffineMap& xbar,
                                           const Triangulation& fluid_mesh,
                                           const QuadratureRule& rule);

}  // namespace fdlm
