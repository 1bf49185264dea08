#pragma once

#include <array>

#include <Eigen/Dense>

namespace fdlm {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Three vertices, counterclockwise for well-formed elements.
using Triangle = std::array<Vec2, 3>;

/// Axis-aligned rectangle [min.x, max.x] x [min.y, max.y].
struct Rect {
  Vec2 min;
  Vec2 max;

  [[nodiscard]] double width() const { return max.x() - min.x(); }
  [[nodiscard]] double height() const { return max.y() - min.y(); }
  [[nodiscard]] double area() const { return width() * height(); }
  [[nodiscard]] bool contains(const Vec2& p, double tol = 0.0) const {
    return p.x() >= min.x() - tol && p.x() <= max.x() + tol && p.y() >= min.y() - tol &&
           p.y() <= max.y() + tol;
  }
};

/// Twice the signed area of (a, b, c); positive when counterclockwise.
inline double orient2d(const Vec2& a, const Vec2& b, const Vec2& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

inline double signed_area(const Triangle& t) { return 0.5 * orient2d(t[0], t[1], t[2]); }

inline Vec2 centroid(const Triangle& t) { return (t[0] + t[1] + t[2]) / 3.0; }

/// Barycentric coordinates of p with respect to t (first entry belongs to t[0]).
inline std::array<double, 3> barycentric(const Triangle& t, const Vec2& p) {
  const double det = orient2d(t[0], t[1], t[2]);
  const double l1 = orient2d(t[0], p, t[2]) / det;
  const double l2 = orient2d(t[0], t[1], p) / det;
  return {1.0 - l1 - l2, l1, l2};
}

/// x = matrix * s + offset.
class AffineMap {
 public:
  AffineMap() : AffineMap(Mat2::Identity(), Vec2::Zero()) {}
  AffineMap(const Mat2& matrix, const Vec2& offset);

  /// Map sending the reference triangle {(0,0),(1,0),(0,1)} onto t.
  static AffineMap from_reference(const Triangle& t);
  /// Unique affine map sending the vertices of `from` onto those of `to`.
  static AffineMap between(const Triangle& from, const Triangle& to);

  [[nodiscard]] Vec2 operator()(const Vec2& s) const { return matrix_ * s + offset_; }
  [[nodiscard]] Triangle operator()(const Triangle& t) const {
    return {(*this)(t[0]), (*this)(t[1]), (*this)(t[2])};
  }

  [[nodiscard]] AffineMap inverse() const;
  /// (*this) o inner.
  [[nodiscard]] AffineMap compose(const AffineMap& inner) const;

  [[nodiscard]] const Mat2& matrix() const { return matrix_; }
  [[nodiscard]] const Vec2& offset() const { return offset_; }
  [[nodiscard]] double det() const { return det_; }

 private:
  Mat2 matrix_;
  Vec2 offset_;
  double det_;
};

}  // namespace fdlm
