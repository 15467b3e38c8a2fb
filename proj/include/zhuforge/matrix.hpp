#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zhuforge/errors.hpp"
#include "zhuforge/rational.hpp"
#include "zhuforge/sparse.hpp"

namespace zhuforge {

/// Dense exact matrix, row-major. Acts on column vectors.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Rational(1);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<Rational>>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw DimensionMismatch("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  /// Matrix whose columns are the given vectors.
  static Matrix from_columns(const std::vector<SparseVec>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].dim() != rows) throw DimensionMismatch("column has wrong length");
      for (const auto& [i, c] : cols[j]) m(i, j) = c;
    }
    return m;
  }

  /// Inverse of flatten(): rebuilds a rows x cols matrix from a row-major vector.
  static Matrix unflatten(const SparseVec& v, std::size_t rows, std::size_t cols) {
    if (v.dim() != rows * cols) throw DimensionMismatch("flattened length does not match shape");
    Matrix m(rows, cols);
    for (const auto& [k, c] : v) m.data_[k] = c;
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool is_square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  [[nodiscard]] bool is_zero() const {
    for (const auto& x : data_)
      if (!x.is_zero()) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const Rational& c) {
    for (auto& x : data_) x *= c;
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Rational& c, Matrix m) { return m *= c; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw DimensionMismatch("matrix product " + a.shape() + " * " + b.shape());
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const Rational& y = b(k, j);
          if (!y.is_zero()) out(i, j) += x * y;
        }
      }
    }
    return out;
  }

  [[nodiscard]] SparseVec apply(const SparseVec& v) const {
    if (v.dim() != cols_) throw DimensionMismatch("matrix " + shape() + " applied to vector of length " + std::to_string(v.dim()));
    SparseVec out(rows_);
    for (const auto& [j, c] : v)
      for (std::size_t i = 0; i < rows_; ++i) {
        const Rational& x = (*this)(i, j);
        if (!x.is_zero()) out.add(i, x * c);
      }
    return out;
  }

  [[nodiscard]] SparseVec column(std::size_t j) const {
    SparseVec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.add(i, (*this)(i, j));
    return v;
  }

  [[nodiscard]] Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Row-major flattening into a vector of length rows*cols.
  [[nodiscard]] SparseVec flatten() const {
    SparseVec v(data_.size());
    for (std::size_t k = 0; k < data_.size(); ++k) v.add(k, data_[k]);
    return v;
  }

  /// Kronecker product; index (i1*rows(b)+i2, j1*cols(b)+j2).
  friend Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (std::size_t i1 = 0; i1 < a.rows_; ++i1)
      for (std::size_t j1 = 0; j1 < a.cols_; ++j1) {
        const Rational& x = a(i1, j1);
        if (x.is_zero()) continue;
        for (std::size_t i2 = 0; i2 < b.rows_; ++i2)
          for (std::size_t j2 = 0; j2 < b.cols_; ++j2) out(i1 * b.rows_ + i2, j1 * b.cols_ + j2) = x * b(i2, j2);
      }
    return out;
  }

  /// Reduced row echelon form and pivot columns; pivots chosen at the lowest available column.
  [[nodiscard]] std::pair<Matrix, std::vector<std::size_t>> rref() const {
    Matrix m = *this;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
      std::size_t sel = row;
      while (sel < rows_ && m(sel, col).is_zero()) ++sel;
      if (sel == rows_) continue;
      if (sel != row)
        for (std::size_t j = 0; j < cols_; ++j) std::swap(m(sel, j), m(row, j));
      const Rational inv = Rational(1) / m(row, col);
      for (std::size_t j = col; j < cols_; ++j) m(row, j) *= inv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == row || m(i, col).is_zero()) continue;
        const Rational f = m(i, col);
        for (std::size_t j = col; j < cols_; ++j)
          if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
      }
      pivots.push_back(col);
      ++row;
    }
    return {std::move(m), std::move(pivots)};
  }

  [[nodiscard]] std::size_t rank() const { return rref().second.size(); }

  [[nodiscard]] Rational trace() const {
    if (!is_square()) throw DimensionMismatch("trace of non-square matrix " + shape());
    Rational t;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  /// Columns [first, first + count).
  [[nodiscard]] Matrix columns(std::size_t first, std::size_t count) const {
    Matrix out(rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, first + j);
    return out;
  }

  [[nodiscard]] Matrix rows_block(std::size_t first, std::size_t count) const {
    Matrix out(count, cols_);
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(first + i, j);
    return out;
  }

  /// Basis of {x : A x = 0}.
  [[nodiscard]] std::vector<SparseVec> kernel() const {
    const auto [r, pivots] = rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<SparseVec> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      SparseVec v(cols_);
      v.add(free, Rational(1));
      for (std::size_t k = 0; k < pivots.size(); ++k) v.add(pivots[k], -r(k, free));
      basis.push_back(std::move(v));
    }
    return basis;
  }

  [[nodiscard]] std::optional<Matrix> inverse() const {
    if (!is_square()) return std::nullopt;
    const std::size_t n = rows_;
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
      aug(i, n + i) = Rational(1);
    }
    const auto [r, pivots] = aug.rref();
    if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
    return inv;
  }

  [[nodiscard]] std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  [[nodiscard]] std::string str() const {
    std::string out = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      out += i ? "; " : "";
      for (std::size_t j = 0; j < cols_; ++j) out += (j ? " " : "") + (*this)(i, j).str();
    }
    return out + "]";
  }

 private:
  void require_same_shape(const Matrix& o) const {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw DimensionMismatch("shape " + shape() + " vs " + o.shape());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// X with a * X = b, when a has full column rank and a solution exists.
inline std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("solve: row counts differ");
  const std::size_t n = a.cols();
  Matrix aug(a.rows(), n + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) aug(i, n + j) = b(i, j);
  }
  const auto [r, pivots] = aug.rref();
  std::size_t lead = 0;
  while (lead < pivots.size() && pivots[lead] < n) ++lead;
  if (lead != n || pivots.size() != n) return std::nullopt;
  Matrix x(n, b.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) = r(i, n + j);
  return x;
}

/// Basis of {x : r . x = 0 for every row r of the reduced echelon space}.
inline std::vector<SparseVec> nullspace(const Subspace& rows) {
  const std::size_t n = rows.ambient_dim();
  std::vector<bool> is_pivot(n, false);
  for (auto p : rows.pivots()) is_pivot[p] = true;
  std::vector<SparseVec> out;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    SparseVec v = SparseVec::unit(n, f);
    for (std::size_t k = 0; k < rows.rank(); ++k) v.add(rows.pivots()[k], -rows.basis()[k].get(f));
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace zhuforge
