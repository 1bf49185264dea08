#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "fdlm/assembly.hpp"
#include "fdlm/fespace.hpp"
#include "fdlm/manufactured.hpp"
#include "fdlm/saddle_solver.hpp"

namespace fdlm {

struct ErrorNorms {
  double err_u_h1 = 0.0;
  double err_p_l2 = 0.0;
  double err_x_h1 = 0.0;
  /// H1(B) norm for the h1 coupling, dual (H1(B))' norm for l2.
  double err_lambda = 0.0;

  // Same quantities divided by the matching norm of the exact field.
  double rel_u_h1 = 0.0;
  double rel_p_l2 = 0.0;
  double rel_x_h1 = 0.0;
  double rel_lambda = 0.0;
};

/// Integrates |e|^2 (+ |grad e|^2 when with_gradient) with the degree-6 rule on every
/// element, where e = exact - discrete. Returns the square root.
double error_norm(const FEFunction& discrete, const std::function<Vec2(const Vec2&)>& exact,
                  const std::function<Mat2(const Vec2&)>& exact_grad, bool with_gradient);

ErrorNorms error_norms(const DiscreteSolution& sol, const ManufacturedSolution& exact,
                       Coupling coupling);

/// Error data on the solid mesh: element index and point in that element.
using ElementField = std::function<Vec2(std::size_t, const Vec2&)>;

/// Discrete (H1)' norm: solve (grad psi, grad phi) + (psi, phi) = (e, phi) on the solid
/// space (Neumann problem, degree-6 load) and return the H1 norm of psi.
double dual_norm(const ElementField& error, const FiniteElementSpace& solid);

/// Same for a discrete functional, with the load computed exactly as M * mu.
double dual_norm(const FEFunction& mu);

struct InverseInequalitySample {
  double h;
  double l2_norm;
  double dual_norm;
  double ratio;  ///< h * l2_norm / dual_norm
};

/// h_B ||mu||_0 / ||mu||_{-1} on `levels` successively doubled solid meshes starting
/// from n0 x n0. `make_mu` returns the nodal vector of mu for each space; it must be
/// nonzero.
std::vector<InverseInequalitySample> inverse_inequality_check(
    const Rect& solid, int n0, int levels,
    const std::function<Eigen::VectorXd(const FiniteElementSpace&)>& make_mu);

}  // namespace fdlm
