#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "fdlm/geometry.hpp"
#include "fdlm/mesh.hpp"

namespace fdlm {

/// Continuous piecewise-linear Lagrange space, scalar or 2-vector valued.
///
/// Dofs are blocked by component: dof c * n_vertices + v is component c at vertex v.
class FiniteElementSpace {
 public:
  FiniteElementSpace(std::shared_ptr<const Triangulation> mesh, int value_dim,
                     bool dirichlet_on_boundary = false);

  [[nodiscard]] const Triangulation& mesh() const { return *mesh_; }
  [[nodiscard]] const std::shared_ptr<const Triangulation>& mesh_ptr() const { return mesh_; }
  [[nodiscard]] int value_dim() const { return value_dim_; }
  [[nodiscard]] std::size_t n_dofs() const { return dirichlet_mask_.size(); }
  [[nodiscard]] std::size_t n_vertices() const { return mesh_->n_vertices(); }
  [[nodiscard]] const std::vector<bool>& dirichlet_mask() const { return dirichlet_mask_; }
  [[nodiscard]] const Vec2& dof_coord(std::size_t dof) const {
    return mesh_->vertices()[dof % n_vertices()];
  }
  [[nodiscard]] int dof(int component, int vertex) const {
    return component * static_cast<int>(n_vertices()) + vertex;
  }

 private:
  std::shared_ptr<const Triangulation> mesh_;
  int value_dim_;
  std::vector<bool> dirichlet_mask_;
};

/// Velocity space: vector P1 on the refined fluid mesh, zero on the boundary.
FiniteElementSpace velocity_space(std::shared_ptr<const Triangulation> refined_fluid);
/// Pressure space: scalar P1 on the coarse fluid mesh.
FiniteElementSpace pressure_space(std::shared_ptr<const Triangulation> coarse_fluid);
/// Solid displacement / multiplier space: vector P1 on the solid mesh.
FiniteElementSpace solid_space(std::shared_ptr<const Triangulation> solid);

/// Gradients of the three barycentric basis functions on triangle t (rows).
Eigen::Matrix<double, 3, 2> basis_gradients(const Triangle& t);

struct FEFunction {
  std::shared_ptr<const FiniteElementSpace> space;
  Eigen::VectorXd coefficients;

  FEFunction(std::shared_ptr<const FiniteElementSpace> s, Eigen::VectorXd c);
  explicit FEFunction(std::shared_ptr<const FiniteElementSpace> s);
};

/// Value on triangle t at x; scalar functions return (value, 0).
/// Throws if x lies outside t by more than 1e-10 in barycentric terms.
Vec2 eval(const FEFunction& f, std::size_t t, const Vec2& x);

/// Constant gradient on t; row c holds the gradient of component c.
/// Scalar functions fill row 0 only.
Mat2 eval_grad(const FEFunction& f, std::size_t t);

/// Nodal interpolant of g; for scalar spaces only g(x)[0] is used.
FEFunction interpolate(std::shared_ptr<const FiniteElementSpace> space,
                       const std::function<Vec2(const Vec2&)>& g);

/// v(xbar(s)), locating xbar(s) in the velocity mesh.
/// Throws DomainViolation when xbar(s) lies outside it.
Vec2 composed_velocity_eval(const FEFunction& v, const AffineMap& xbar, const Vec2& s);

}  // namespace fdlm
