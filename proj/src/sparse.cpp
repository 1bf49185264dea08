#include "fdlm/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace fdlm {

SparseMatrix::SparseMatrix(int n_rows, int n_cols)
    : n_rows_(n_rows), n_cols_(n_cols), offsets_(static_cast<std::size_t>(n_rows) + 1, 0) {
  if (n_rows < 0 || n_cols < 0) throw std::invalid_argument("SparseMatrix: negative dimension");
}

SparseMatrix SparseMatrix::from_triplets(int n_rows, int n_cols,
                                         const std::vector<Triplet>& triplets) {
  SparseMatrix m(n_rows, n_cols);

  // Bucket by row (stable), then stable-sort each row by column.
  std::vector<int> count(static_cast<std::size_t>(n_rows) + 1, 0);
  for (const auto& t : triplets) {
    if (t.row < 0 || t.row >= n_rows || t.col < 0 || t.col >= n_cols)
      throw std::out_of_range(
          fmt::format("SparseMatrix: entry ({}, {}) outside {}x{}", t.row, t.col, n_rows, n_cols));
    ++count[static_cast<std::size_t>(t.row) + 1];
  }
  std::partial_sum(count.begin(), count.end(), count.begin());
  std::vector<std::pair<int, double>> bucket(triplets.size());
  {
    std::vector<int> fill(count.begin(), count.end() - 1);
    for (const auto& t : triplets) bucket[static_cast<std::size_t>(fill[t.row]++)] = {t.col, t.value};
  }

  m.cols_.reserve(triplets.size());
  m.values_.reserve(triplets.size());
  for (int r = 0; r < n_rows; ++r) {
    auto first = bucket.begin() + count[r];
    auto last = bucket.begin() + count[r + 1];
    std::stable_sort(first, last, [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto it = first; it != last; ++it) {
      if (!m.cols_.empty() && static_cast<int>(m.cols_.size()) > m.offsets_[r] &&
          m.cols_.back() == it->first) {
        m.values_.back() += it->second;
      } else {
        m.cols_.push_back(it->first);
        m.values_.push_back(it->second);
      }
    }
    m.offsets_[static_cast<std::size_t>(r) + 1] = static_cast<int>(m.cols_.size());
  }
  return m;
}

double SparseMatrix::at(int r, int c) const {
  const auto first = cols_.begin() + offsets_.at(r);
  const auto last = cols_.begin() + offsets_.at(static_cast<std::size_t>(r) + 1);
  const auto it = std::lower_bound(first, last, c);
  if (it == last || *it != c) return 0.0;
  return values_[static_cast<std::size_t>(it - cols_.begin())];
}

Eigen::VectorXd SparseMatrix::multiply(const Eigen::VectorXd& x) const {
  if (x.size() != n_cols_) throw std::invalid_argument("SparseMatrix::multiply: size mismatch");
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n_rows_);
  for (int r = 0; r < n_rows_; ++r) {
    double s = 0.0;
    for (int k = offsets_[r]; k < offsets_[r + 1]; ++k) s += values_[k] * x[cols_[k]];
    y[r] = s;
  }
  return y;
}

Eigen::VectorXd SparseMatrix::multiply_transpose(const Eigen::VectorXd& x) const {
  if (x.size() != n_rows_)
    throw std::invalid_argument("SparseMatrix::multiply_transpose: size mismatch");
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n_cols_);
  for (int r = 0; r < n_rows_; ++r)
    for (int k = offsets_[r]; k < offsets_[r + 1]; ++k) y[cols_[k]] += values_[k] * x[r];
  return y;
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<Triplet> t;
  t.reserve(nnz());
  for (int r = 0; r < n_rows_; ++r)
    for (int k = offsets_[r]; k < offsets_[r + 1]; ++k) t.push_back({cols_[k], r, values_[k]});
  return from_triplets(n_cols_, n_rows_, t);
}

SparseMatrix SparseMatrix::scaled(double s) const {
  SparseMatrix m = *this;
  for (double& v : m.values_) v *= s;
  return m;
}

void SparseMatrix::append_to(std::vector<Triplet>& out, int row_offset, int col_offset,
                             double scale) const {
  for (int r = 0; r < n_rows_; ++r)
    for (int k = offsets_[r]; k < offsets_[r + 1]; ++k)
      out.push_back({r + row_offset, cols_[k] + col_offset, scale * values_[k]});
}

double matrix_1norm_diff(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.n_rows() != b.n_rows() || a.n_cols() != b.n_cols())
    throw std::invalid_argument(fmt::format("matrix_1norm_diff: {}x{} vs {}x{}", a.n_rows(),
                                            a.n_cols(), b.n_rows(), b.n_cols()));
  std::vector<double> colsum(static_cast<std::size_t>(a.n_cols()), 0.0);
  const auto& ao = a.row_offsets();
  const auto& bo = b.row_offsets();
  for (int r = 0; r < a.n_rows(); ++r) {
    // merge the two sorted rows
    int i = ao[r], j = bo[r];
    while (i < ao[r + 1] || j < bo[r + 1]) {
      const int ca = i < ao[r + 1] ? a.col_indices()[i] : a.n_cols();
      const int cb = j < bo[r + 1] ? b.col_indices()[j] : b.n_cols();
      if (ca == cb) {
        colsum[ca] += std::abs(a.values()[i++] - b.values()[j++]);
      } else if (ca < cb) {
        colsum[ca] += std::abs(a.values()[i++]);
      } else {
        colsum[cb] += std::abs(b.values()[j++]);
      }
    }
  }
  return colsum.empty() ? 0.0 : *std::max_element(colsum.begin(), colsum.end());
}

double symmetry_defect(const SparseMatrix& a) {
  if (a.n_rows() != a.n_cols()) throw std::invalid_argument("symmetry_defect: non-square");
  double worst = 0.0;
  const auto& off = a.row_offsets();
  for (int r = 0; r < a.n_rows(); ++r)
    for (int k = off[r]; k < off[r + 1]; ++k)
      worst = std::max(worst, std::abs(a.values()[k] - a.at(a.col_indices()[k], r)));
  return worst;
}

Eigen::SparseMatrix<double> to_eigen(const SparseMatrix& a) {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(a.nnz());
  const auto& off = a.row_offsets();
  for (int r = 0; r < a.n_rows(); ++r)
    for (int k = off[r]; k < off[r + 1]; ++k) t.emplace_back(r, a.col_indices()[k], a.values()[k]);
  Eigen::SparseMatrix<double> m(a.n_rows(), a.n_cols());
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

void write_coordinate(std::ostream& os, const SparseMatrix& a) {
  const auto& off = a.row_offsets();
  for (int r = 0; r < a.n_rows(); ++r)
    for (int k = off[r]; k < off[r + 1]; ++k)
      os << fmt::format("{} {} {:.17g}\n", r, a.col_indices()[k], a.values()[k]);
}

}  // namespace fdlm
