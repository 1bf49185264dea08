#include "fdlm/fespace.hpp"

#include <stdexcept>

#include <fmt/format.h>

#include "fdlm/geom_intersect.hpp"

namespace fdlm {

FiniteElementSpace::FiniteElementSpace(std::shared_ptr<const Triangulation> mesh, int value_dim,
                                       bool dirichlet_on_boundary)
    : mesh_(std::move(mesh)), value_dim_(value_dim) {
  if (!mesh_) throw std::invalid_argument("FiniteElementSpace: null mesh");
  if (value_dim_ != 1 && value_dim_ != 2)
    throw std::invalid_argument("FiniteElementSpace: value_dim must be 1 or 2");
  const auto& boundary = mesh_->boundary_vertex_flags();
  dirichlet_mask_.reserve(value_dim_ * boundary.size());
  for (int c = 0; c < value_dim_; ++c)
    for (const bool b : boundary) dirichlet_mask_.push_back(dirichlet_on_boundary && b);
}

FiniteElementSpace velocity_space(std::shared_ptr<const Triangulation> refined_fluid) {
  return {std::move(refined_fluid), 2, true};
}

FiniteElementSpace pressure_space(std::shared_ptr<const Triangulation> coarse_fluid) {
  return {std::move(coarse_fluid), 1, false};
}

FiniteElementSpace solid_space(std::shared_ptr<const Triangulation> solid) {
  return {std::move(solid), 2, false};
}

Eigen::Matrix<double, 3, 2> basis_gradients(const Triangle& t) {
  Mat2 jac;
  jac.col(0) = t[1] - t[0];
  jac.col(1) = t[2] - t[0];
  const Mat2 inv_t = jac.inverse().transpose();
  Eigen::Matrix<double, 3, 2> g;
  g.row(1) = inv_t.col(0).transpose();
  g.row(2) = inv_t.col(1).transpose();
  g.row(0) = -(g.row(1) + g.row(2));
  return g;
}

FEFunction::FEFunction(std::shared_ptr<const FiniteElementSpace> s, Eigen::VectorXd c)
    : space(std::move(s)), coefficients(std::move(c)) {
  if (!space) throw std::invalid_argument("FEFunction: null space");
  if (static_cast<std::size_t>(coefficients.size()) != space->n_dofs())
    throw std::invalid_argument(fmt::format("FEFunction: {} coefficients for {} dofs",
                                            coefficients.size(), space->n_dofs()));
}

FEFunction::FEFunction(std::shared_ptr<const FiniteElementSpace> s)
    : FEFunction(s, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(s ? s->n_dofs() : 0))) {}

Vec2 eval(const FEFunction& f, std::size_t t, const Vec2& x) {
  const auto& sp = *f.space;
  const auto& mesh = sp.mesh();
  const auto lam = barycentric(mesh.triangle(t), x);
  constexpr double tol = 1e-10;
  if (lam[0] < -tol || lam[1] < -tol || lam[2] < -tol)
    throw std::invalid_argument(
        fmt::format("eval: point ({}, {}) outside triangle {}", x.x(), x.y(), t));
  const auto& idx = mesh.triangles()[t];
  Vec2 out = Vec2::Zero();
  for (int c = 0; c < sp.value_dim(); ++c)
    for (int k = 0; k < 3; ++k) out[c] += lam[k] * f.coefficients[sp.dof(c, idx[k])];
  return out;
}

Mat2 eval_grad(const FEFunction& f, std::size_t t) {
  const auto& sp = *f.space;
  const auto& mesh = sp.mesh();
  if (t >= mesh.n_triangles())
    throw std::out_of_range(fmt::format("eval_grad: triangle {} out of range", t));
  const auto g = basis_gradients(mesh.triangle(t));
  const auto& idx = mesh.triangles()[t];
  Mat2 out = Mat2::Zero();
  for (int c = 0; c < sp.value_dim(); ++c)
    for (int k = 0; k < 3; ++k) out.row(c) += f.coefficients[sp.dof(c, idx[k])] * g.row(k);
  return out;
}

FEFunction interpolate(std::shared_ptr<const FiniteElementSpace> space,
                       const std::function<Vec2(const Vec2&)>& g) {
  FEFunction f(space);
  const auto& verts = space->mesh().vertices();
  for (std::size_t v = 0; v < verts.size(); ++v) {
    const Vec2 val = g(verts[v]);
    for (int c = 0; c < space->value_dim(); ++c)
      f.coefficients[space->dof(c, static_cast<int>(v))] = val[c];
  }
  return f;
}

Vec2 composed_velocity_eval(const FEFunction& v, const AffineMap& xbar, const Vec2& s) {
  const Vec2 x = xbar(s);
  const auto t = locate_point(v.space->mesh(), x);
  if (!t)
    throw DomainViolation(fmt::format("composed_velocity_eval: X({}, {}) = ({}, {}) is outside",
                                      s.x(), s.y(), x.x(), x.y()));
  return eval(v, static_cast<std::size_t>(*t), x);
}

}  // namespace fdlm
