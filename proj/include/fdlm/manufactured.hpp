#pragma once

#include <functional>
#include <vector>

#include "fdlm/geometry.hpp"

namespace fdlm {

/// Polynomial in one variable, coefficients in increasing degree.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coefficients) : c_(std::move(coefficients)) {}

  [[nodiscard]] double operator()(double x) const;
  [[nodiscard]] Polynomial derivative() const;
  [[nodiscard]] Polynomial operator*(const Polynomial& other) const;

 private:
  std::vector<double> c_;
};

/// psi(x, y) = a(x) * b(y).
struct SeparablePotential {
  Polynomial a;
  Polynomial b;
};

/// Analytic 2-vector field with its Jacobian (row c = gradient of component c)
/// and componentwise Laplacian.
struct VectorField {
  std::function<Vec2(const Vec2&)> value;
  std::function<Mat2(const Vec2&)> gradient;
  std::function<Vec2(const Vec2&)> laplacian;
};

/// curl psi = (d psi / dy, -d psi / dx); divergence-free by construction.
VectorField curl_of_potential(const SeparablePotential& psi);

/// Exact fields of the immersed-solid test problem.
struct ManufacturedSolution {
  VectorField u;
  std::function<double(const Vec2&)> p;
  std::function<Vec2(const Vec2&)> grad_p;
  VectorField x;  ///< solid displacement X on the reference domain
  std::function<Vec2(const Vec2&)> lambda;
  std::function<Mat2(const Vec2&)> grad_lambda;
  AffineMap xbar;

  /// d(s) = u(xbar(s)) - X(s).
  [[nodiscard]] Vec2 d(const Vec2& s) const { return u.value(xbar(s)) - x.value(s); }
  [[nodiscard]] Mat2 grad_d(const Vec2& s) const {
    return u.gradient(xbar(s)) * xbar.matrix() - x.gradient(s);
  }
};

/// The square [0,1]^2 immersed in [-2,2]^2 by xbar(s) = (-0.62 + 2 s1, -0.62 + 2 s2), with
///   u = curl((4-x^2)^2 (4-y^2)^2),  p = 150 sin(x),
///   X = curl((4-s1^2)^2 (4-s2^2)^2), lambda = (e^s1, e^s2).
ManufacturedSolution immersed_square_solution();

/// All fields identically zero, with the given placement map.
ManufacturedSolution zero_solution(const AffineMap& xbar);

/// The placement map of immersed_square_solution.
AffineMap immersed_square_map();

}  // namespace fdlm
