#include "fdlm/geometry.hpp"

#include <stdexcept>

namespace fdlm {

AffineMap::AffineMap(const Mat2& matrix, const Vec2& offset)
    : matrix_(matrix), offset_(offset), det_(matrix.determinant()) {
  if (det_ == 0.0) throw std::invalid_argument("AffineMap: singular matrix");
}

AffineMap AffineMap::from_reference(const Triangle& t) {
  Mat2 m;
  m.col(0) = t[1] - t[0];
  m.col(1) = t[2] - t[0];
  return {m, t[0]};
}

AffineMap AffineMap::between(const Triangle& from, const Triangle& to) {
  return from_reference(to).compose(from_reference(from).inverse());
}

AffineMap AffineMap::inverse() const {
  const Mat2 inv = matrix_.inverse();
  return {inv, -(inv * offset_)};
}

AffineMap AffineMap::compose(const AffineMap& inner) const {
  return {matrix_ * inner.matrix_, matrix_ * inner.offset_ + offset_};
}

}  // namespace fdlm
