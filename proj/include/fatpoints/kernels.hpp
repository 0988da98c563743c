#pragma once

// Dense exact elimination kernels.
//
// Two representations are used by the hot paths: ModMatrix (residues modulo an
// odd prime below 2^31, row-major uint32) and IntMatrix (mpz integers). Each
// mod-p kernel has a plain serial reference next to the OpenMP version; tests
// compare the two and bench/ times them.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "fatpoints/field.hpp"

namespace fatpoints::kernels {

class ModMatrix {
 public:
  ModMatrix() = default;
  ModMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint32_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::uint32_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<std::uint32_t> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const std::uint32_t> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  void swap_rows(std::size_t a, std::size_t b);
  ModMatrix transpose() const;
  /// Keeps the first n rows.
  void truncate_rows(std::size_t n);

  friend bool operator==(const ModMatrix&, const ModMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint32_t> data_;
};

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  mpz_class& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const mpz_class& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void swap_rows(std::size_t a, std::size_t b);
  ModMatrix reduce(const ModArith& ar) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> data_;
};

/// Outcome of an elimination: rank, pivot column per echelon row, and the
/// original index of the row that supplied each pivot.
struct Echelon {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
  std::vector<std::size_t> pivot_rows;
};

// Forward elimination only (row echelon form, not reduced).
std::size_t rank_mod_serial(ModMatrix a, const ModArith& ar);
std::size_t rank_mod(ModMatrix a, const ModArith& ar);

/// In-place reduced row echelon form; zero rows are left at the bottom.
Echelon rref_mod_serial(ModMatrix& a, const ModArith& ar);
Echelon rref_mod(ModMatrix& a, const ModArith& ar);

/// Basis of {x : a x = 0}, one vector per row.
ModMatrix nullspace_mod(const ModMatrix& a, const ModArith& ar);

/// Fraction-free (Bareiss) forward elimination in place. Entries of the
/// echelon rows are minors of the input; rows are permuted.
Echelon bareiss_forward(IntMatrix& a);
std::size_t rank_bareiss(IntMatrix a);

/// Solution of m * X = rhs for nonsingular square m, kept integral:
/// scaled = det * X where det is the last Bareiss pivot (det(m) up to sign).
struct FractionFreeSolution {
  mpz_class det;
  IntMatrix scaled;
};
FractionFreeSolution solve_fraction_free(IntMatrix m, IntMatrix rhs);

/// Reduced row echelon form over the rationals of an integer matrix.
/// Zero rows are dropped.
struct RationalRref {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<mpq_class> entries;
  std::vector<std::size_t> pivot_cols;
};
RationalRref rref_rational(IntMatrix a);

/// A matrix given column by column, for shapes too wide to store.
class ColumnSource {
 public:
  virtual ~ColumnSource() = default;
  virtual std::size_t rows() const = 0;
  virtual std::size_t cols() const = 0;
  virtual void column_mod(std::size_t j, const ModArith& ar, std::span<std::uint32_t> out) const = 0;
  virtual void column_int(std::size_t j, std::span<mpz_class> out) const = 0;
};

struct WideRank {
  std::size_t rank = 0;
  std::vector<std::size_t> basis_rows;  ///< independent rows, |basis_rows| = rank
  std::vector<std::size_t> basis_cols;  ///< independent columns, |basis_cols| = rank
};

/// Exact rank over F_p. Ranks a column sample, takes the sample's left
/// kernel and checks it against every other column; columns that break it
/// join the sample. Returns once the kernel annihilates all columns.
WideRank wide_rank_mod(const ColumnSource& src, const ModArith& ar);
WideRank wide_rank_mod_serial(const ColumnSource& src, const ModArith& ar);

/// Exact rank over Q. The mod-p rank is a lower bound; the matching upper
/// bound is certified with integer left-kernel vectors checked against
/// every column. Falls back to Bareiss on the full matrix if the
/// certificate fails (unlucky prime).
std::size_t wide_rank_rational(const ColumnSource& src);

/// Columns of a dense ModMatrix as a ColumnSource (testing and benchmarks).
class DenseModColumns : public ColumnSource {
 public:
  explicit DenseModColumns(ModMatrix m) : m_(std::move(m)) {}
  std::size_t rows() const override { return m_.rows(); }
  std::size_t cols() const override { return m_.cols(); }
  void column_mod(std::size_t j, const ModArith& ar, std::span<std::uint32_t> out) const override;
  void column_int(std::size_t j, std::span<mpz_class> out) const override;

 private:
  ModMatrix m_;
};

class DenseIntColumns : public ColumnSource {
 public:
  explicit DenseIntColumns(IntMatrix m) : m_(std::move(m)) {}
  std::size_t rows() const override { return m_.rows(); }
  std::size_t cols() const override { return m_.cols(); }
  void column_mod(std::size_t j, const ModArith& ar, std::span<std::uint32_t> out) const override;
  void column_int(std::size_t j, std::span<mpz_class> out) const override;

 private:
  IntMatrix m_;
};

}  // namespace fatpoints::kernels
