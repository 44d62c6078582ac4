#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace tori {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;

// Dense row-major matrix of arbitrary-precision integers. Either dimension
// may be zero.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static IntMatrix diagonal(std::span<const Integer> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  IntVector row(std::size_t i) const;
  IntVector column(std::size_t j) const;

  IntMatrix transpose() const;
  // Rows of *this followed by rows of other; column counts must agree.
  IntMatrix stacked(const IntMatrix& other) const;
  IntMatrix select_rows(std::span<const std::size_t> indices) const;

  // Elementary operations used by the normal-form routines.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  // row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  // col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);

  bool is_zero() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  std::span<const Integer> data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator*(const Integer& s, const IntMatrix& a);
// Matrix times column vector.
IntVector operator*(const IntMatrix& a, std::span<const Integer> v);

// Determinant of a square matrix by fraction-free (Bareiss) elimination.
Integer determinant(const IntMatrix& m);

// Rank by fraction-free Gaussian elimination. Deliberately independent of
// the Smith normal form code so the two can check each other.
std::size_t rank_by_elimination(const IntMatrix& m);

// Inverse of a matrix with determinant +-1.
IntMatrix unimodular_inverse(const IntMatrix& m);

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

// Floor division and the matching nonnegative remainder.
Integer floor_div(const Integer& a, const Integer& b);
Integer mod_floor(const Integer& a, const Integer& b);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

}  // namespace tori
