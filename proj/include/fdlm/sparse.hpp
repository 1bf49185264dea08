#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace fdlm {

struct Triplet {
  int row;
  int col;
  double value;
};

/// Compressed-row matrix with sorted, unique column indices per row.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int n_rows, int n_cols);

  /// Duplicates are summed in input order, so the result depends only on the
  /// sequence of triplets, not on how it was produced.
  static SparseMatrix from_triplets(int n_rows, int n_cols, const std::vector<Triplet>& triplets);

  [[nodiscard]] int n_rows() const { return n_rows_; }
  [[nodiscard]] int n_cols() const { return n_cols_; }
  [[nodiscard]] std::size_t nnz() const { return values_.size(); }
  [[nodiscard]] const std::vector<int>& row_offsets() const { return offsets_; }
  [[nodiscard]] const std::vector<int>& col_indices() const { return cols_; }
  [[nodiscard]] const std::vector<double>& values() const { return values_; }

  /// Stored value at (r, c), zero if absent.
  [[nodiscard]] double at(int r, int c) const;

  [[nodiscard]] Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;
  [[nodiscard]] Eigen::VectorXd multiply_transpose(const Eigen::VectorXd& x) const;
  [[nodiscard]] SparseMatrix transpose() const;
  [[nodiscard]] SparseMatrix scaled(double s) const;

  /// Appends every stored entry, shifted by the given offsets.
  void append_to(std::vector<Triplet>& out, int row_offset, int col_offset,
                 double scale = 1.0) const;

 private:
  int n_rows_ = 0;
  int n_cols_ = 0;
  std::vector<int> offsets_{0};
  std::vector<int> cols_;
  std::vector<double> values_;
};

/// Matrix 1-norm of a - b: maximum absolute column sum.
double matrix_1norm_diff(const SparseMatrix& a, const SparseMatrix& b);

/// Largest |a_ij - a_ji|; requires a square matrix.
double symmetry_defect(const SparseMatrix& a);

/// Copy into an Eigen column-major sparse matrix.
Eigen::SparseMatrix<double> to_eigen(const SparseMatrix& a);

/// Coordinate text dump, one `row col value` line per entry, 17 significant digits.
void write_coordinate(std::ostream& os, const SparseMatrix& a);

}  // namespace fdlm
