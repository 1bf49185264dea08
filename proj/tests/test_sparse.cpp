#include <random>
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "fdlm/parallel.hpp"
#include "fdlm/sparse.hpp"

using namespace fdlm;

namespace {

Eigen::MatrixXd dense(const SparseMatrix& a) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(a.n_rows(), a.n_cols());
  for (int r = 0; r < a.n_rows(); ++r)
    for (int k = a.row_offsets()[r]; k < a.row_offsets()[r + 1]; ++k) d(r, a.col_indices()[k]) += a.values()[k];
  return d;
}

SparseMatrix random_matrix(int rows, int cols, int entries, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> ri(0, rows - 1), ci(0, cols - 1);
  std::uniform_real_distribution<double> v(-1.0, 1.0);
  std::vector<Triplet> t;
  for (int k = 0; k < entries; ++k) t.push_back({ri(rng), ci(rng), v(rng)});
  return SparseMatrix::from_triplets(rows, cols, t);
}

}  // namespace

TEST(Sparse, DuplicatesAreSummed) {
  const auto a = SparseMatrix::from_triplets(2, 3, {{0, 2, 1.0}, {1, 0, 2.0}, {0, 2, 0.5}, {0, 0, -1.0}});
  EXPECT_EQ(a.nnz(), 3u);
  EXPECT_EQ(a.at(0, 2), 1.5);
  EXPECT_EQ(a.at(0, 0), -1.0);
  EXPECT_EQ(a.at(1, 1), 0.0);
  EXPECT_EQ(a.col_indices()[0], 0);
}

TEST(Sparse, ProductsAndTranspose) {
  const auto a = random_matrix(7, 5, 20, 1);
  const Eigen::MatrixXd d = dense(a);
  const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(5, -1.0, 2.0);
  const Eigen::VectorXd y = Eigen::VectorXd::LinSpaced(7, 0.5, 1.5);
  EXPECT_LT((a.multiply(x) - d * x).norm(), 1e-14);
  EXPECT_LT((a.multiply_transpose(y) - d.transpose() * y).norm(), 1e-14);
  EXPECT_LT((dense(a.transpose()) - d.transpose()).norm(), 1e-15);
  EXPECT_LT((dense(a.scaled(-2.0)) + 2.0 * d).norm(), 1e-15);
  EXPECT_LT((Eigen::MatrixXd(to_eigen(a)) - d).norm(), 1e-15);
}

TEST(Sparse, OneNormDifference) {
  const auto a = random_matrix(6, 9, 25, 2);
  const auto b = random_matrix(6, 9, 25, 3);
  const Eigen::MatrixXd diff = dense(a) - dense(b);
  EXPECT_NEAR(matrix_1norm_diff(a, b), diff.cwiseAbs().colwise().sum().maxCoeff(), 1e-14);
  EXPECT_EQ(matrix_1norm_diff(a, a), 0.0);
  EXPECT_THROW(matrix_1norm_diff(a, random_matrix(9, 6, 4, 4)), std::invalid_argument);
}

TEST(Sparse, AppendAndSymmetry) {
  const auto a = SparseMatrix::from_triplets(2, 2, {{0, 1, 1.0}, {1, 0, 3.0}});
  EXPECT_EQ(symmetry_defect(a), 2.0);
  std::vector<Triplet> out;
  a.append_to(out, 2, 1, -1.0);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].row, 2);
  EXPECT_EQ(out[0].col, 2);
  EXPECT_EQ(out[0].value, -1.0);
}

TEST(Sparse, CoordinateDump) {
  const auto a = SparseMatrix::from_triplets(2, 2, {{1, 0, 0.1}});
  std::ostringstream os;
  write_coordinate(os, a);
  EXPECT_EQ(os.str(), "1 0 0.10000000000000001\n");
}

TEST(Parallel, ChunkOrderIndependentOfWorkers) {
  auto body = [](std::size_t first, std::size_t last, std::vector<Triplet>& out) {
    for (std::size_t i = first; i < last; ++i) out.push_back({static_cast<int>(i % 13), 0, 1.0 / (1.0 + i)});
  };
  set_worker_count(1);
  const auto serial = parallel_triplets(20000, body);
  set_worker_count(4);
  const auto threaded = parallel_triplets(20000, body);
  set_worker_count(0);
  ASSERT_EQ(serial.size(), threaded.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].row, threaded[i].row);
    EXPECT_EQ(serial[i].value, threaded[i].value);
  }
}

TEST(Parallel, ExceptionsPropagate) {
  auto body = [](std::size_t first, std::size_t, std::vector<Triplet>&) {
    if (first > 0) throw std::runtime_error("boom");
  };
  EXPECT_THROW(parallel_triplets(10000, body), std::runtime_error);
}
