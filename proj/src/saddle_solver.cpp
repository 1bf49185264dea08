#include "fdlm/saddle_solver.hpp"

#include <ostream>

#include <Eigen/Sparse>
#include <Eigen/UmfPackSupport>
#include <fmt/format.h>

namespace fdlm {
namespace {

void expect_shape(const SparseMatrix& m, int rows, int cols, const char* name) {
  if (m.n_rows() != rows || m.n_cols() != cols)
    throw std::invalid_argument(
        fmt::format("build_system: {} is {}x{}, expected {}x{}", name, m.n_rows(), m.n_cols(), rows, cols));
}

}  // namespace

BlockSystem build_system(const Blocks& blocks, const RhsVectors& rhs,
                         const std::vector<bool>& dirichlet_mask) {
  const int nu = blocks.af.n_rows();
  const int nx = blocks.as.n_rows();
  const int nl = blocks.cs.n_rows();
  const int np = blocks.b.n_rows();
  expect_shape(blocks.af, nu, nu, "A_f");
  expect_shape(blocks.as, nx, nx, "A_s");
  expect_shape(blocks.b, np, nu, "B");
  expect_shape(blocks.cf, nl, nu, "C_f");
  expect_shape(blocks.cs, nl, nx, "C_s");
  if (blocks.mean_weights.size() != np || rhs.f.size() != nu || rhs.g.size() != nx ||
      rhs.d.size() != nl || static_cast<int>(dirichlet_mask.size()) != nu)
    throw std::invalid_argument("build_system: vector dimensions do not match the blocks");

  BlockSystem sys;
  sys.offset_u = 0;
  sys.offset_x = nu;
  sys.offset_lambda = nu + nx;
  sys.offset_p = nu + nx + nl;
  sys.offset_mean = nu + nx + nl + np;
  const int n = sys.offset_mean + 1;

  std::vector<Triplet> t;
  t.reserve(blocks.af.nnz() + blocks.as.nnz() + 2 * (blocks.b.nnz() + blocks.cf.nnz() + blocks.cs.nnz()) +
            2 * static_cast<std::size_t>(np) + nu);
  blocks.af.append_to(t, sys.offset_u, sys.offset_u);
  blocks.as.append_to(t, sys.offset_x, sys.offset_x);
  const SparseMatrix cft = blocks.cf.transpose();
  const SparseMatrix cst = blocks.cs.transpose();
  const SparseMatrix bt = blocks.b.transpose();
  cft.append_to(t, sys.offset_u, sys.offset_lambda);
  bt.append_to(t, sys.offset_u, sys.offset_p, -1.0);
  cst.append_to(t, sys.offset_x, sys.offset_lambda, -1.0);
  blocks.cf.append_to(t, sys.offset_lambda, sys.offset_u);
  blocks.cs.append_to(t, sys.offset_lambda, sys.offset_x, -1.0);
  blocks.b.append_to(t, sys.offset_p, sys.offset_u, -1.0);
  for (int i = 0; i < np; ++i) {
    t.push_back({sys.offset_p + i, sys.offset_mean, blocks.mean_weights[i]});
    t.push_back({sys.offset_mean, sys.offset_p + i, blocks.mean_weights[i]});
  }

  // symmetric elimination of the boundary velocity dofs
  std::erase_if(t, [&](const Triplet& e) {
    return (e.row < nu && dirichlet_mask[e.row]) || (e.col < nu && dirichlet_mask[e.col]);
  });
  for (int i = 0; i < nu; ++i)
    if (dirichlet_mask[i]) t.push_back({i, i, 1.0});
  sys.matrix = SparseMatrix::from_triplets(n, n, t);

  sys.rhs = Eigen::VectorXd::Zero(n);
  sys.rhs.segment(sys.offset_u, nu) = rhs.f;
  sys.rhs.segment(sys.offset_x, nx) = rhs.g;
  sys.rhs.segment(sys.offset_lambda, nl) = rhs.d;
  for (int i = 0; i < nu; ++i)
    if (dirichlet_mask[i]) sys.rhs[i] = 0.0;
  return sys;
}

Eigen::VectorXd solve_system(const BlockSystem& system, double* residual_norm) {
  const Eigen::SparseMatrix<double> a = to_eigen(system.matrix);
  Eigen::UmfPackLU<Eigen::SparseMatrix<double>> lu;
  // The matrix is symmetric with zero diagonal blocks. Nested dissection on A + A^T keeps
  // fill bounded for both fluid- and solid-dominated meshes; AMD does not.
  lu.umfpackControl()(UMFPACK_STRATEGY) = UMFPACK_STRATEGY_SYMMETRIC;
  lu.umfpackControl()(UMFPACK_ORDERING) = UMFPACK_ORDERING_METIS;
  lu.compute(a);
  if (lu.info() != Eigen::Success)
    throw SingularSystemError(fmt::format("factorization of the {}x{} block system failed",
                                          system.size(), system.size()));
  Eigen::VectorXd x = lu.solve(system.rhs);
  if (lu.info() != Eigen::Success || !x.allFinite())
    throw SingularSystemError("solve of the block system failed");
  if (residual_norm) *residual_norm = (system.matrix.multiply(x) - system.rhs).norm();
  return x;
}

DiscreteSolution solve(const BlockSystem& system, const DiscreteSpaces& spaces) {
  double res = 0.0;
  const Eigen::VectorXd x = solve_system(system, &res);
  auto segment = [&](int offset, const std::shared_ptr<const FiniteElementSpace>& s) {
    return FEFunction(s, x.segment(offset, static_cast<Eigen::Index>(s->n_dofs())));
  };
  DiscreteSolution sol{segment(system.offset_u, spaces.velocity),
                       segment(system.offset_p, spaces.pressure),
                       segment(system.offset_x, spaces.solid),
                       segment(system.offset_lambda, spaces.multiplier), res, system.rhs.norm()};
  return sol;
}

void write_solution_csv(std::ostream& os, const DiscreteSolution& sol) {
  os << "field,dof_index,value\n";
  auto dump = [&os](const char* name, const FEFunction& f) {
    for (Eigen::Index i = 0; i < f.coefficients.size(); ++i)
      os << fmt::format("{},{},{:.17g}\n", name, i, f.coefficients[i]);
  };
  dump("u", sol.u);
  dump("p", sol.p);
  dump("X", sol.x);
  dump("lambda", sol.lambda);
}

}  // namespace fdlm
