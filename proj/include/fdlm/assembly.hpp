#pragma once

#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "fdlm/fespace.hpp"
#include "fdlm/geometry.hpp"
#include "fdlm/manufactured.hpp"
#include "fdlm/sparse.hpp"

namespace fdlm {

/// l2: (mu, Y)_B.  h1: (grad mu, grad Y)_B + (mu, Y)_B.
enum class Coupling { l2, h1 };
/// exact: composite rule over the fluid/solid mesh intersection.
/// approx: single rule per solid element.
enum class AssemblyMode { exact, approx };

Coupling parse_coupling(std::string_view s);
AssemblyMode parse_assembly_mode(std::string_view s);
std::string_view to_string(Coupling c);
std::string_view to_string(AssemblyMode m);

/// Coefficients of a_f(u, v) = alpha (u, v) + nu (grad u, grad v) and
/// a_s(X, Y) = beta (X, Y) + kappa (grad X, grad Y).
struct FormParams {
  double alpha = 0.0;
  double nu = 1.0;
  double beta = 0.0;
  double kappa = 1.0;
  double gamma = 1.0;

  void validate() const;
};

/// Restriction of the solid placement map to each solid element.
using SolidMap = std::vector<AffineMap>;
SolidMap per_element_map(const Triangulation& solid, const AffineMap& global);

/// Vector mass/stiffness combination mass * (u, v) + stiffness * (grad u, grad v).
SparseMatrix assemble_vector_laplace(const FiniteElementSpace& space, double mass,
                                     double stiffness);

SparseMatrix assemble_af(const FiniteElementSpace& velocity, const FormParams& params);
SparseMatrix assemble_as(const FiniteElementSpace& solid, const FormParams& params);

/// Rows: pressure dofs; columns: velocity dofs; entry int div(phi_j) psi_i.
/// The velocity mesh must be the midpoint refinement of the pressure mesh.
SparseMatrix assemble_b(const FiniteElementSpace& velocity, const FiniteElementSpace& pressure);

/// Solid-side coupling matrix c(mu_i, Y_j); multiplier and solid spaces coincide.
SparseMatrix assemble_cs(const FiniteElementSpace& multiplier, const FiniteElementSpace& solid,
                         Coupling coupling);

/// c(mu_i, phi_j o xbar) integrated exactly over the mesh intersection.
SparseMatrix assemble_cf_exact(const FiniteElementSpace& multiplier,
                               const FiniteElementSpace& velocity, const SolidMap& xbar,
                               Coupling coupling);

/// c(mu_i, phi_j o xbar) with one rule per solid element: three edge-midpoint nodes
/// for the mass part, the centroid for the gradient part.
SparseMatrix assemble_cf_approx(const FiniteElementSpace& multiplier,
                                const FiniteElementSpace& velocity, const SolidMap& xbar,
                                Coupling coupling);

SparseMatrix assemble_cf(const FiniteElementSpace& multiplier, const FiniteElementSpace& velocity,
                         const SolidMap& xbar, Coupling coupling, AssemblyMode mode);

/// Quadrature error of the coupling block: matrix 1-norm of (C_f - C_f,h)^T, i.e. the
/// block as it enters the momentum equation (velocity rows, multiplier columns), so
/// each column sum runs over the velocity dofs seen by one multiplier basis function.
double coupling_quadrature_error(const SparseMatrix& cf_exact, const SparseMatrix& cf_approx);

/// m_i = int psi_i, the weights of the zero-mean pressure constraint.
Eigen::VectorXd pressure_mean_weights(const FiniteElementSpace& pressure);

struct RhsVectors {
  Eigen::VectorXd f;  ///< velocity
  Eigen::VectorXd g;  ///< solid displacement
  Eigen::VectorXd d;  ///< multiplier (kinematic constraint)
};

struct DiscreteSpaces {
  std::shared_ptr<const FiniteElementSpace> velocity;
  std::shared_ptr<const FiniteElementSpace> pressure;
  std::shared_ptr<const FiniteElementSpace> solid;
  std::shared_ptr<const FiniteElementSpace> multiplier;
};

/// Builds all four spaces from an n_fluid x n_fluid pressure mesh of `fluid` and an
/// n_solid x n_solid left-oriented mesh of `solid`.
DiscreteSpaces make_spaces(const Rect& fluid, int n_fluid, const Rect& solid, int n_solid);

/// Right-hand sides obtained by inserting the exact fields into the left-hand side:
///   F(v) = a_f(u, v) - (div v, p) + c(lambda, v o xbar)
///   G(Y) = a_s(X, Y) - c(lambda, Y)
///   D(mu) = c(mu, d)
/// Volume terms use the degree-6 rule. The coupling term in F uses the composite
/// scheme (exact) or the per-element rules of assemble_cf_approx (approx).
RhsVectors assemble_rhs(const DiscreteSpaces& spaces, const ManufacturedSolution& exact,
                        const SolidMap& xbar, Coupling coupling, AssemblyMode mode,
                        const FormParams& params);

}  // namespace fdlm
