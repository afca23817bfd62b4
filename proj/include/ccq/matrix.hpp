#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ccq/multipoly.hpp"
#include "ccq/numeric.hpp"

namespace ccq {

/// Dense row-major matrix with exact entries.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using ZMatrix = Matrix<Integer>;
using PolyMatrix = Matrix<MultiPoly>;
using QVector = std::vector<Rational>;

/// Fraction-free (Bareiss) row echelon form of an integer matrix. Every intermediate
/// division is exact. `pivots[i]` is the pivot column of row i.
struct EchelonForm {
  ZMatrix reduced;
  std::vector<std::size_t> pivots;
  int sign = 1;  // parity of row swaps
};
EchelonForm bareiss_echelon(ZMatrix m);

/// Scales every row by the lcm of its denominators.
ZMatrix clear_denominators(const QMatrix& m);

std::size_t rank(const QMatrix& m);
Rational determinant(const QMatrix& m);
/// Basis of {x : m x = 0}; every returned vector is verified exactly and is primitive integral.
std::vector<QVector> kernel(const QMatrix& m);
/// Reduced row echelon form over Q.
QMatrix rref(QMatrix m, std::vector<std::size_t>* pivots = nullptr);

/// Solves A X = B column by column. Returns nullopt when some column is inconsistent. Free
/// variables are set to zero.
std::optional<QMatrix> solve(const QMatrix& a, const QMatrix& b);

/// Rank over F_p of an integer matrix (entries reduced mod p).
std::size_t rank_mod_p(const ZMatrix& m, std::uint64_t p);

/// Determinant of a matrix with polynomial entries by Bareiss elimination with exact
/// polynomial division.
MultiPoly determinant(const PolyMatrix& m, int nvars);

QVector multiply(const QMatrix& m, const QVector& v);

}  // namespace ccq
