#include "fatpoints/matrix.hpp"

#include <utility>

#include "fatpoints/error.hpp"

namespace fatpoints {

Matrix::Matrix(std::size_t rows, std::size_t cols, const Field& field)
    : rows_(rows), cols_(cols), field_(field), entries_(rows * cols, Scalar::zero(field)) {}

Matrix Matrix::from_rows(const std::vector<std::vector<Scalar>>& rows, const Field& field) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(rows.size(), cols, field);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InvalidInput("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

Matrix Matrix::identity(std::size_t n, const Field& field) {
  Matrix m(n, n, field);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, Scalar::one(field));
  return m;
}

void Matrix::set(std::size_t i, std::size_t j, Scalar v) {
  if (!(v.field() == field_)) {
    throw InvalidInput("mixed field modes: " + v.field().describe() + " entry in a " +
                       field_.describe() + " matrix");
  }
  entries_[i * cols_ + j] = std::move(v);
}

std::vector<Scalar> Matrix::row(std::size_t i) const {
  return {entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_, field_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t.entries_[j * rows_ + i] = at(i, j);
  }
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw InvalidInput("matrix product shape mismatch");
  if (!(a.field() == b.field())) throw InvalidInput("mixed field modes in matrix product");
  Matrix c(a.rows(), b.cols(), a.field());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Scalar acc = Scalar::zero(a.field());
      for (std::size_t k = 0; k < a.cols(); ++k) acc += a.at(i, k) * b.at(k, j);
      c.set(i, j, std::move(acc));
    }
  }
  return c;
}

namespace detail {

kernels::IntMatrix integer_rows(const Matrix& m) {
  kernels::IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    mpz_class den = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), m.at(i, j).as_rational().get_den_mpz_t());
    }
    mpz_class g = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const mpq_class& q = m.at(i, j).as_rational();
      out(i, j) = q.get_num() * (den / q.get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out(i, j).get_mpz_t());
    }
    if (g > 1) {
      for (std::size_t j = 0; j < m.cols(); ++j) mpz_divexact(out(i, j).get_mpz_t(), out(i, j).get_mpz_t(), g.get_mpz_t());
    }
  }
  return out;
}

kernels::ModMatrix residue_rows(const Matrix& m) {
  kernels::ModMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = static_cast<std::uint32_t>(m.at(i, j).as_residue());
  }
  return out;
}

}  // namespace detail

std::size_t rank(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  if (m.field().is_rational()) return kernels::rank_bareiss(detail::integer_rows(m));
  const ModArith ar(static_cast<std::uint32_t>(m.field().modulus()));
  return kernels::rank_mod(detail::residue_rows(m), ar);
}

std::size_t nullspace_dim(const Matrix& m) { return m.cols() - rank(m); }

Matrix rref(const Matrix& m) {
  const Field& f = m.field();
  if (m.rows() == 0 || m.cols() == 0) return Matrix(0, m.cols(), f);
  if (f.is_rational()) {
    const kernels::RationalRref r = kernels::rref_rational(detail::integer_rows(m));
    Matrix out(r.rows, r.cols, f);
    for (std::size_t i = 0; i < r.rows; ++i) {
      for (std::size_t j = 0; j < r.cols; ++j) out.set(i, j, Scalar::rational(r.entries[i * r.cols + j]));
    }
    return out;
  }
  const ModArith ar(static_cast<std::uint32_t>(f.modulus()));
  kernels::ModMatrix a = detail::residue_rows(m);
  const kernels::Echelon ech = kernels::rref_mod(a, ar);
  Matrix out(ech.rank, m.cols(), f);
  for (std::size_t i = 0; i < ech.rank; ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out.set(i, j, Scalar::residue(a(i, j), f.modulus()));
  }
  return out;
}

Matrix nullspace_basis(const Matrix& m) {
  const Field& f = m.field();
  const Matrix r = rref(m);
  std::vector<std::size_t> pivots;
  for (std::size_t i = 0; i < r.rows(); ++i) {
    std::size_t j = 0;
    while (r.at(i, j).is_zero()) ++j;
    pivots.push_back(j);
  }
  std::vector<char> is_pivot(m.cols(), 0);
  for (std::size_t c : pivots) is_pivot[c] = 1;
  Matrix basis(m.cols() - pivots.size(), m.cols(), f);
  std::size_t k = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis.set(k, free, Scalar::one(f));
    for (std::size_t i = 0; i < pivots.size(); ++i) basis.set(k, pivots[i], -r.at(i, free));
    ++k;
  }
  return basis;
}

Matrix inverse(const Matrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw InvalidInput("inverse of a non-square matrix");
  const Field& f = m.field();
  Matrix aug(n, 2 * n, f);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.set(i, j, m.at(i, j));
    aug.set(i, n + i, Scalar::one(f));
  }
  const Matrix r = rref(aug);
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= r.rows() || !r.at(i, i).is_one()) throw InvalidInput("matrix is singular");
  }
  Matrix inv(n, n, f);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv.set(i, j, r.at(i, n + j));
  }
  return inv;
}

}  // namespace fatpoints
