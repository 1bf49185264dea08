#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fdlm/manufactured.hpp"

using namespace fdlm;

namespace {

// central differences with step h, relative to the local scale of the field
template <class F>
Mat2 fd_jacobian(const F& f, const Vec2& p, double h = 1e-5) {
  Mat2 j;
  for (int d = 0; d < 2; ++d) {
    Vec2 e = Vec2::Zero();
    e[d] = h;
    j.col(d) = (f(p + e) - f(p - e)) / (2.0 * h);
  }
  return j;
}

}  // namespace

TEST(Manufactured, Polynomial) {
  const Polynomial p({1.0, -2.0, 3.0});  // 1 - 2x + 3x^2
  EXPECT_DOUBLE_EQ(p(2.0), 9.0);
  EXPECT_DOUBLE_EQ(p.derivative()(2.0), 10.0);
  EXPECT_DOUBLE_EQ((p * p)(2.0), 81.0);
  EXPECT_DOUBLE_EQ(Polynomial({5.0}).derivative()(3.0), 0.0);
}

TEST(Manufactured, CurlValues) {
  const auto ex = immersed_square_solution();
  const Vec2 u = ex.u.value(Vec2(1.0, 0.0));
  EXPECT_NEAR(u.x(), 0.0, 1e-14);
  EXPECT_NEAR(u.y(), 192.0, 1e-12);

  const auto xy = curl_of_potential({Polynomial({0.0, 1.0}), Polynomial({0.0, 1.0})});
  const Vec2 p(0.3, -1.7);
  EXPECT_LT((xy.value(p) - Vec2(0.3, 1.7)).norm(), 1e-15);
  EXPECT_LT(xy.laplacian(p).norm(), 1e-15);
}

TEST(Manufactured, DivergenceFreeAndBoundaryValues) {
  const auto ex = immersed_square_solution();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const Vec2 p(u(rng), u(rng));
    EXPECT_NEAR(ex.u.gradient(p).trace(), 0.0, 1e-10);
  }
  for (int i = 0; i < 200; ++i) {
    const double t = u(rng);
    for (const Vec2& b : {Vec2(-2.0, t), Vec2(2.0, t), Vec2(t, -2.0), Vec2(t, 2.0)})
      EXPECT_LT(ex.u.value(b).norm(), 1e-12);
  }
}

TEST(Manufactured, DerivativesMatchFiniteDifferences) {
  const auto ex = immersed_square_solution();
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.9, 1.9), s(0.05, 0.95);
  for (int i = 0; i < 50; ++i) {
    const Vec2 p(u(rng), u(rng));
    const Mat2 g = ex.u.gradient(p);
    EXPECT_LT((g - fd_jacobian(ex.u.value, p)).norm(), 1e-6 * std::max(1.0, g.norm()));

    // componentwise Laplacian from differences of the analytic gradient
    const double h = 1e-5;
    Vec2 lap = Vec2::Zero();
    for (int d = 0; d < 2; ++d) {
      Vec2 e = Vec2::Zero();
      e[d] = h;
      lap += (ex.u.gradient(p + e).col(d) - ex.u.gradient(p - e).col(d)) / (2.0 * h);
    }
    EXPECT_LT((ex.u.laplacian(p) - lap).norm(), 1e-6 * std::max(1.0, lap.norm()));

    const Vec2 gp = ex.grad_p(p);
    const double h2 = 1e-6;
    EXPECT_NEAR(gp.x(), (ex.p(p + Vec2(h2, 0)) - ex.p(p - Vec2(h2, 0))) / (2 * h2), 1e-6 * 150.0);
    EXPECT_NEAR(gp.y(), (ex.p(p + Vec2(0, h2)) - ex.p(p - Vec2(0, h2))) / (2 * h2), 1e-6 * 150.0);

    const Vec2 q(s(rng), s(rng));
    EXPECT_LT((ex.x.gradient(q) - fd_jacobian(ex.x.value, q)).norm(), 1e-6 * ex.x.gradient(q).norm());
    EXPECT_LT((ex.grad_lambda(q) - fd_jacobian(ex.lambda, q)).norm(), 1e-6 * ex.grad_lambda(q).norm());
    auto d = [&](const Vec2& r) { return ex.d(r); };
    EXPECT_LT((ex.grad_d(q) - fd_jacobian(d, q)).norm(), 1e-6 * std::max(1.0, ex.grad_d(q).norm()));
  }
}

TEST(Manufactured, PlacementAndKinematicData) {
  const auto ex = immersed_square_solution();
  EXPECT_LT((ex.xbar(Vec2(0, 0)) - Vec2(-0.62, -0.62)).norm(), 1e-15);
  EXPECT_LT((ex.xbar(Vec2(1, 1)) - Vec2(1.38, 1.38)).norm(), 1e-15);
  const Vec2 s(0.25, 0.75);
  EXPECT_LT((ex.d(s) - (ex.u.value(ex.xbar(s)) - ex.x.value(s))).norm(), 1e-12);
  EXPECT_LT((ex.lambda(s) - Vec2(std::exp(0.25), std::exp(0.75))).norm(), 1e-15);

  const auto zero = zero_solution(ex.xbar);
  EXPECT_EQ(zero.u.value(s).norm(), 0.0);
  EXPECT_EQ(zero.p(s), 0.0);
  EXPECT_EQ(zero.lambda(s).norm(), 0.0);
  EXPECT_EQ(zero.d(s).norm(), 0.0);
}
