#include "fdlm/manufactured.hpp"

#include <cmath>

namespace fdlm {

double Polynomial::operator()(double x) const {
  double v = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
  return v;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial({0.0});
  std::vector<double> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (c_.empty() || other.c_.empty()) return Polynomial({0.0});
  std::vector<double> r(c_.size() + other.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < other.c_.size(); ++j) r[i + j] += c_[i] * other.c_[j];
  return Polynomial(std::move(r));
}

VectorField curl_of_potential(const SeparablePotential& psi) {
  // u = (a b', -a' b)
  const Polynomial a0 = psi.a, a1 = a0.derivative(), a2 = a1.derivative(), a3 = a2.derivative();
  const Polynomial b0 = psi.b, b1 = b0.derivative(), b2 = b1.derivative(), b3 = b2.derivative();
  VectorField f;
  f.value = [=](const Vec2& p) {
    const double x = p.x(), y = p.y();
    return Vec2(a0(x) * b1(y), -a1(x) * b0(y));
  };
  f.gradient = [=](const Vec2& p) {
    const double x = p.x(), y = p.y();
    Mat2 g;
    g << a1(x) * b1(y), a0(x) * b2(y), -a2(x) * b0(y), -a1(x) * b1(y);
    return g;
  };
  f.laplacian = [=](const Vec2& p) {
    const double x = p.x(), y = p.y();
    return Vec2(a2(x) * b1(y) + a0(x) * b3(y), -a3(x) * b0(y) - a1(x) * b2(y));
  };
  return f;
}

AffineMap immersed_square_map() {
  return {Mat2::Identity() * 2.0, Vec2(-0.62, -0.62)};
}

ManufacturedSolution immersed_square_solution() {
  // (4 - t^2)^2 = 16 - 8 t^2 + t^4
  const Polynomial bump({16.0, 0.0, -8.0, 0.0, 1.0});
  const VectorField curl = curl_of_potential({bump, bump});

  ManufacturedSolution m;
  m.u = curl;
  m.x = curl;
  m.p = [](const Vec2& q) { return 150.0 * std::sin(q.x()); };
  m.grad_p = [](const Vec2& q) { return Vec2(150.0 * std::cos(q.x()), 0.0); };
  m.lambda = [](const Vec2& s) { return Vec2(std::exp(s.x()), std::exp(s.y())); };
  m.grad_lambda = [](const Vec2& s) {
    Mat2 g;
    g << std::exp(s.x()), 0.0, 0.0, std::exp(s.y());
    return g;
  };
  m.xbar = immersed_square_map();
  return m;
}

ManufacturedSolution zero_solution(const AffineMap& xbar) {
  const VectorField zero{[](const Vec2&) { return Vec2(Vec2::Zero()); },
                         [](const Vec2&) { return Mat2(Mat2::Zero()); },
                         [](const Vec2&) { return Vec2(Vec2::Zero()); }};
  ManufacturedSolution m;
  m.u = zero;
  m.x = zero;
  m.p = [](const Vec2&) { return 0.0; };
  m.grad_p = zero.value;
  m.lambda = zero.value;
  m.grad_lambda = zero.gradient;
  m.xbar = xbar;
  return m;
}

}  // namespace fdlm
