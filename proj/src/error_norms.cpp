#include "fdlm/error_norms.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "fdlm/parallel.hpp"
#include "fdlm/quadrature.hpp"

namespace fdlm {
namespace {

// Square root of the H1 norm^2 (or L2) of an analytic field, degree-6 quadrature.
double field_norm(const Triangulation& mesh, const std::function<Vec2(const Vec2&)>& f,
                  const std::function<Mat2(const Vec2&)>& grad, bool with_gradient) {
  const QuadratureRule& r6 = rule_for_degree(6);
  double sum = 0.0;
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t) {
    const Triangle tri = mesh.triangle(t);
    const double area = std::abs(signed_area(tri));
    for (std::size_t q = 0; q < r6.size(); ++q) {
      const Vec2 x = r6.node_on(tri, q);
      double v = f(x).squaredNorm();
      if (with_gradient) v += grad(x).squaredNorm();
      sum += area * r6.weights[q] * v;
    }
  }
  return std::sqrt(sum);
}

double safe_ratio(double a, double b) { return b > 0.0 ? a / b : 0.0; }

double dual_norm_from_load(const FiniteElementSpace& solid, const Eigen::VectorXd& load) {
  if (load.isZero(0.0)) return 0.0;
  const Eigen::SparseMatrix<double> a = to_eigen(assemble_vector_laplace(solid, 1.0, 1.0));
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> chol(a);
  if (chol.info() != Eigen::Success) throw std::runtime_error("dual_norm: factorization failed");
  const Eigen::VectorXd psi = chol.solve(load);
  // psi^T (K + M) psi = load^T psi
  return std::sqrt(std::max(0.0, load.dot(psi)));
}

}  // namespace

double error_norm(const FEFunction& discrete, const std::function<Vec2(const Vec2&)>& exact,
                  const std::function<Mat2(const Vec2&)>& exact_grad, bool with_gradient) {
  const auto& mesh = discrete.space->mesh();
  const QuadratureRule& r6 = rule_for_degree(6);
  const auto parts = parallel_entries(mesh.n_triangles(), [&](std::size_t first, std::size_t last,
                                                              std::vector<std::pair<int, double>>& out) {
    double sum = 0.0;
    for (std::size_t t = first; t < last; ++t) {
      const Triangle tri = mesh.triangle(t);
      const double area = std::abs(signed_area(tri));
      const Mat2 gh = with_gradient ? eval_grad(discrete, t) : Mat2::Zero();
      for (std::size_t q = 0; q < r6.size(); ++q) {
        const Vec2 x = r6.node_on(tri, q);
        double v = (exact(x) - eval(discrete, t, x)).squaredNorm();
        if (with_gradient) {
          Mat2 diff = exact_grad(x) - gh;
          if (discrete.space->value_dim() == 1) diff.row(1).setZero();
          v += diff.squaredNorm();
        }
        sum += area * r6.weights[q] * v;
      }
    }
    out.emplace_back(0, sum);
  });
  double total = 0.0;
  for (const auto& [i, v] : parts) total += v;
  return std::sqrt(total);
}

ErrorNorms error_norms(const DiscreteSolution& sol, const ManufacturedSolution& exact,
                       Coupling coupling) {
  ErrorNorms e;
  auto scalar_p = [&](const Vec2& x) { return Vec2(exact.p(x), 0.0); };
  auto no_grad = [](const Vec2&) { return Mat2(Mat2::Zero()); };

  e.err_u_h1 = error_norm(sol.u, exact.u.value, exact.u.gradient, true);
  e.err_p_l2 = error_norm(sol.p, scalar_p, no_grad, false);
  e.err_x_h1 = error_norm(sol.x, exact.x.value, exact.x.gradient, true);

  const auto& solid = *sol.lambda.space;
  const auto& smesh = solid.mesh();
  if (coupling == Coupling::h1) {
    e.err_lambda = error_norm(sol.lambda, exact.lambda, exact.grad_lambda, true);
    e.rel_lambda = safe_ratio(e.err_lambda, field_norm(smesh, exact.lambda, exact.grad_lambda, true));
  } else {
    const FEFunction& lh = sol.lambda;
    e.err_lambda = dual_norm(
        [&](std::size_t t, const Vec2& s) { return Vec2(exact.lambda(s) - eval(lh, t, s)); }, solid);
    const double ref = dual_norm([&](std::size_t, const Vec2& s) { return exact.lambda(s); }, solid);
    e.rel_lambda = safe_ratio(e.err_lambda, ref);
  }

  e.rel_u_h1 = safe_ratio(e.err_u_h1, field_norm(sol.u.space->mesh(), exact.u.value, exact.u.gradient, true));
  e.rel_p_l2 = safe_ratio(e.err_p_l2, field_norm(sol.p.space->mesh(), scalar_p, no_grad, false));
  e.rel_x_h1 = safe_ratio(e.err_x_h1, field_norm(smesh, exact.x.value, exact.x.gradient, true));
  return e;
}

double dual_norm(const ElementField& error, const FiniteElementSpace& solid) {
  if (solid.value_dim() != 2) throw std::invalid_argument("dual_norm: vector space expected");
  const auto& mesh = solid.mesh();
  const QuadratureRule& r6 = rule_for_degree(6);
  Eigen::VectorXd load = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(solid.n_dofs()));
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t) {
    const Triangle tri = mesh.triangle(t);
    const double area = std::abs(signed_area(tri));
    const auto& vv = mesh.triangles()[t];
    for (std::size_t q = 0; q < r6.size(); ++q) {
      const Vec2 s = r6.node_on(tri, q);
      const Vec2 e = error(t, s);
      const double w = area * r6.weights[q];
      const Vec2& r = r6.nodes[q];
      const double lam[3] = {1.0 - r.x() - r.y(), r.x(), r.y()};
      for (int c = 0; c < 2; ++c)
        for (int k = 0; k < 3; ++k) load[solid.dof(c, vv[k])] += w * e[c] * lam[k];
    }
  }
  return dual_norm_from_load(solid, load);
}

double dual_norm(const FEFunction& mu) {
  const auto& solid = *mu.space;
  const SparseMatrix mass = assemble_vector_laplace(solid, 1.0, 0.0);
  return dual_norm_from_load(solid, mass.multiply(mu.coefficients));
}

std::vector<InverseInequalitySample> inverse_inequality_check(
    const Rect& solid, int n0, int levels,
    const std::function<Eigen::VectorXd(const FiniteElementSpace&)>& make_mu) {
  if (levels < 1) throw std::invalid_argument("inverse_inequality_check: levels must be >= 1");
  std::vector<InverseInequalitySample> out;
  for (int k = 0; k < levels; ++k) {
    auto mesh = std::make_shared<const Triangulation>(uniform_mesh(solid, n0 << k, Orientation::left));
    auto space = std::make_shared<const FiniteElementSpace>(solid_space(mesh));
    FEFunction mu(space, make_mu(*space));
    if (mu.coefficients.isZero(0.0))
      throw std::invalid_argument("inverse_inequality_check: mu must be nonzero");
    const SparseMatrix mass = assemble_vector_laplace(*space, 1.0, 0.0);
    const double l2 = std::sqrt(mu.coefficients.dot(mass.multiply(mu.coefficients)));
    const double dn = dual_norm(mu);
    const double h = mesh->spacing();
    out.push_back({h, l2, dn, h * l2 / dn});
  }
  return out;
}

}  // namespace fdlm
