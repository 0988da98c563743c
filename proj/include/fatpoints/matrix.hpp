#pragma once

#include <cstddef>
#include <vector>

#include "fatpoints/field.hpp"
#include "fatpoints/kernels.hpp"

namespace fatpoints {

/// Dense matrix of Scalars over a single field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const Field& field);

  /// Throws InvalidInput on ragged rows or entries from different fields.
  /// `field` is used when `rows` is empty and must match the entries otherwise.
  static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows, const Field& field);
  static Matrix identity(std::size_t n, const Field& field);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field& field() const { return field_; }

  const Scalar& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  /// Throws InvalidInput if v belongs to another field.
  void set(std::size_t i, std::size_t j, Scalar v);
  std::vector<Scalar> row(std::size_t i) const;

  Matrix transpose() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Field field_;
  std::vector<Scalar> entries_;
};

Matrix operator*(const Matrix& a, const Matrix& b);

std::size_t rank(const Matrix& m);
std::size_t nullspace_dim(const Matrix& m);
/// Reduced row echelon form with zero rows removed; canonical for the row space.
Matrix rref(const Matrix& m);
/// Basis of {x : m x = 0}, one vector per row.
Matrix nullspace_basis(const Matrix& m);
/// Inverse of a square matrix; throws InvalidInput if it is singular.
Matrix inverse(const Matrix& m);

namespace detail {

/// Rows rescaled to primitive integer vectors (rational mode only).
kernels::IntMatrix integer_rows(const Matrix& m);
/// Residues of a prime-mode matrix.
kernels::ModMatrix residue_rows(const Matrix& m);

}  // namespace detail

}  // namespace fatpoints
