#pragma once

#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fdlm/assembly.hpp"
#include "fdlm/fespace.hpp"
#include "fdlm/sparse.hpp"

namespace fdlm {

/// Raised when the direct factorization of the block system fails.
class SingularSystemError : public std::runtime_error {
 public:
  explicit SingularSystemError(const std::string& what) : std::runtime_error(what) {}
};

/// Blocks of the saddle-point operator
///
///   [ A_f   0    C_f^T  -B^T ] [u]   [f]
///   [ 0     A_s -C_s^T   0   ] [X] = [g]
///   [ C_f  -C_s  0       0   ] [l]   [d]
///   [ -B    0    0       0   ] [p]   [0]
///
/// bordered by the pressure mean row m^T p = 0 and its multiplier.
struct Blocks {
  SparseMatrix af;
  SparseMatrix as;
  SparseMatrix b;   ///< (div phi_j, psi_i)
  SparseMatrix cf;  ///< multiplier x velocity
  SparseMatrix cs;  ///< multiplier x solid
  Eigen::VectorXd mean_weights;
};

struct BlockSystem {
  SparseMatrix matrix;
  Eigen::VectorXd rhs;
  int offset_u = 0;
  int offset_x = 0;
  int offset_lambda = 0;
  int offset_p = 0;
  int offset_mean = 0;

  [[nodiscard]] int size() const { return matrix.n_rows(); }
};

/// Dirichlet velocity dofs are eliminated symmetrically (zero row and column, unit
/// diagonal, zero right-hand side).
BlockSystem build_system(const Blocks& blocks, const RhsVectors& rhs,
                         const std::vector<bool>& dirichlet_mask);

struct DiscreteSolution {
  FEFunction u;
  FEFunction p;
  FEFunction x;
  FEFunction lambda;
  double residual_norm = 0.0;
  double rhs_norm = 0.0;

  [[nodiscard]] double relative_residual() const {
    return rhs_norm > 0.0 ? residual_norm / rhs_norm : residual_norm;
  }
};

/// Sparse LU with partial pivoting; throws SingularSystemError on failure.
Eigen::VectorXd solve_system(const BlockSystem& system, double* residual_norm = nullptr);

DiscreteSolution solve(const BlockSystem& system, const DiscreteSpaces& spaces);

/// CSV `field,dof_index,value`.
void write_solution_csv(std::ostream& os, const DiscreteSolution& sol);

}  // namespace fdlm
