#include "fatpoints/kernels.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include <omp.h>

#include "fatpoints/error.hpp"

namespace fatpoints::kernels {

void ModMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(data_.begin() + static_cast<std::ptrdiff_t>(a * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((a + 1) * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>(b * cols_));
}

ModMatrix ModMatrix::transpose() const {
  ModMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

void ModMatrix::truncate_rows(std::size_t n) {
  rows_ = std::min(rows_, n);
  data_.resize(rows_ * cols_);
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) swap((*this)(a, j), (*this)(b, j));
}

ModMatrix IntMatrix::reduce(const ModArith& ar) const {
  ModMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = ar.from_mpz((*this)(i, j));
  }
  return m;
}

// ---------------------------------------------------------------------------
// mod-p elimination

std::size_t rank_mod_serial(ModMatrix a, const ModArith& ar) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a(piv, col) == 0) ++piv;
    if (piv == rows) continue;
    a.swap_rows(piv, rank);
    const std::uint32_t inv = ar.inv(a(rank, col));
    for (std::size_t i = rank + 1; i < rows; ++i) {
      if (a(i, col) == 0) continue;
      const std::uint32_t f = ar.mul(a(i, col), inv);
      for (std::size_t j = col; j < cols; ++j) {
        a(i, j) = ar.sub(a(i, j), ar.mul(f, a(rank, j)));
      }
    }
    ++rank;
  }
  return rank;
}

namespace {

// Scales row r so that entry (r, col) becomes 1.
void normalize_row(ModMatrix& a, std::size_t r, std::size_t col, const ModArith& ar) {
  const std::uint32_t inv = ar.inv(a(r, col));
  auto row = a.row(r);
  for (std::size_t j = col; j < row.size(); ++j) row[j] = ar.mul(row[j], inv);
}

// target -= factor * pivot over [from, end), pivot row already normalized.
inline void eliminate(std::span<std::uint32_t> target, std::span<const std::uint32_t> pivot,
                      std::size_t from, std::uint32_t factor, const ModArith& ar) {
  const std::uint64_t nf = ar.neg(factor);
  const std::size_t n = target.size();
  for (std::size_t j = from; j < n; ++j) {
    target[j] = ar.reduce(target[j] + nf * pivot[j]);
  }
}

}  // namespace

std::size_t rank_mod(ModMatrix a, const ModArith& ar) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a(piv, col) == 0) ++piv;
    if (piv == rows) continue;
    a.swap_rows(piv, rank);
    normalize_row(a, rank, col, ar);
    const auto pivot = std::as_const(a).row(rank);
    const auto first = static_cast<std::ptrdiff_t>(rank + 1);
    const auto last = static_cast<std::ptrdiff_t>(rows);
#pragma omp parallel for schedule(static) if ((last - first) * static_cast<std::ptrdiff_t>(cols - col) > 65536)
    for (std::ptrdiff_t i = first; i < last; ++i) {
      const std::uint32_t f = a(static_cast<std::size_t>(i), col);
      if (f != 0) eliminate(a.row(static_cast<std::size_t>(i)), pivot, col, f, ar);
    }
    ++rank;
  }
  return rank;
}

Echelon rref_mod_serial(ModMatrix& a, const ModArith& ar) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  Echelon out;
  std::vector<std::size_t> origin(rows);
  std::iota(origin.begin(), origin.end(), 0);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a(piv, col) == 0) ++piv;
    if (piv == rows) continue;
    a.swap_rows(piv, rank);
    std::swap(origin[piv], origin[rank]);
    const std::uint32_t inv = ar.inv(a(rank, col));
    for (std::size_t j = col; j < cols; ++j) a(rank, j) = ar.mul(a(rank, j), inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || a(i, col) == 0) continue;
      const std::uint32_t f = a(i, col);
      for (std::size_t j = col; j < cols; ++j) {
        a(i, j) = ar.sub(a(i, j), ar.mul(f, a(rank, j)));
      }
    }
    out.pivot_cols.push_back(col);
    out.pivot_rows.push_back(origin[rank]);
    ++rank;
  }
  out.rank = rank;
  return out;
}

Echelon rref_mod(ModMatrix& a, const ModArith& ar) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  Echelon out;
  std::vector<std::size_t> origin(rows);
  std::iota(origin.begin(), origin.end(), 0);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a(piv, col) == 0) ++piv;
    if (piv == rows) continue;
    a.swap_rows(piv, rank);
    std::swap(origin[piv], origin[rank]);
    normalize_row(a, rank, col, ar);
    const auto pivot = std::as_const(a).row(rank);
    const auto nrows = static_cast<std::ptrdiff_t>(rows);
    const auto r = static_cast<std::ptrdiff_t>(rank);
#pragma omp parallel for schedule(static) if (nrows * static_cast<std::ptrdiff_t>(cols - col) > 65536)
    for (std::ptrdiff_t i = 0; i < nrows; ++i) {
      if (i == r) continue;
      const std::uint32_t f = a(static_cast<std::size_t>(i), col);
      if (f != 0) eliminate(a.row(static_cast<std::size_t>(i)), pivot, col, f, ar);
    }
    out.pivot_cols.push_back(col);
    out.pivot_rows.push_back(origin[rank]);
    ++rank;
  }
  out.rank = rank;
  return out;
}

namespace {

ModMatrix nullspace_from_rref(const ModMatrix& r, const Echelon& ech, const ModArith& ar) {
  const std::size_t cols = r.cols();
  std::vector<char> is_pivot(cols, 0);
  for (std::size_t c : ech.pivot_cols) is_pivot[c] = 1;
  ModMatrix basis(cols - ech.rank, cols);
  std::size_t k = 0;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    basis(k, f) = 1;
    for (std::size_t i = 0; i < ech.rank; ++i) basis(k, ech.pivot_cols[i]) = ar.neg(r(i, f));
    ++k;
  }
  return basis;
}

}  // namespace

ModMatrix nullspace_mod(const ModMatrix& a, const ModArith& ar) {
  ModMatrix r = a;
  const Echelon ech = rref_mod(r, ar);
  return nullspace_from_rref(r, ech, ar);
}

// ---------------------------------------------------------------------------
// fraction-free elimination over Z

Echelon bareiss_forward(IntMatrix& a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  Echelon out;
  std::vector<std::size_t> origin(rows);
  std::iota(origin.begin(), origin.end(), 0);
  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a(piv, col) == 0) ++piv;
    if (piv == rows) continue;
    a.swap_rows(piv, rank);
    std::swap(origin[piv], origin[rank]);
    const auto first = static_cast<std::ptrdiff_t>(rank + 1);
    const auto last = static_cast<std::ptrdiff_t>(rows);
#pragma omp parallel if ((last - first) * static_cast<std::ptrdiff_t>(cols - col) > 4096)
    {
      mpz_class t;
#pragma omp for schedule(dynamic, 4)
      for (std::ptrdiff_t ii = first; ii < last; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        for (std::size_t j = col + 1; j < cols; ++j) {
          mpz_mul(t.get_mpz_t(), a(rank, col).get_mpz_t(), a(i, j).get_mpz_t());
          mpz_submul(t.get_mpz_t(), a(i, col).get_mpz_t(), a(rank, j).get_mpz_t());
          mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        }
        a(i, col) = 0;
      }
    }
    prev = a(rank, col);
    out.pivot_cols.push_back(col);
    out.pivot_rows.push_back(origin[rank]);
    ++rank;
  }
  out.rank = rank;
  return out;
}

std::size_t rank_bareiss(IntMatrix a) { return bareiss_forward(a).rank; }

FractionFreeSolution solve_fraction_free(IntMatrix m, IntMatrix rhs) {
  const std::size_t n = m.rows();
  if (m.cols() != n || rhs.rows() != n) {
    throw InvalidInput("solve_fraction_free: shape mismatch");
  }
  const std::size_t k = rhs.cols();
  IntMatrix aug(n, n + k);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    for (std::size_t q = 0; q < k; ++q) aug(i, n + q) = rhs(i, q);
  }
  const Echelon ech = bareiss_forward(aug);
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= ech.rank || ech.pivot_cols[i] != i) throw InvalidInput("solve_fraction_free: singular system");
  }
  FractionFreeSolution sol;
  sol.det = n == 0 ? mpz_class(1) : aug(n - 1, n - 1);
  sol.scaled = IntMatrix(n, k);
  mpz_class acc;
  for (std::size_t q = 0; q < k; ++q) {
    for (std::size_t ii = n; ii-- > 0;) {
      acc = sol.det * aug(ii, n + q);
      for (std::size_t j = ii + 1; j < n; ++j) {
        mpz_submul(acc.get_mpz_t(), aug(ii, j).get_mpz_t(), sol.scaled(j, q).get_mpz_t());
      }
      mpz_divexact(sol.scaled(ii, q).get_mpz_t(), acc.get_mpz_t(), aug(ii, ii).get_mpz_t());
    }
  }
  return sol;
}

RationalRref rref_rational(IntMatrix a) {
  const Echelon ech = bareiss_forward(a);
  RationalRref out;
  out.rows = ech.rank;
  out.cols = a.cols();
  out.pivot_cols = ech.pivot_cols;
  out.entries.resize(out.rows * out.cols);
  auto at = [&](std::size_t i, std::size_t j) -> mpq_class& { return out.entries[i * out.cols + j]; };
  for (std::size_t i = 0; i < out.rows; ++i) {
    const mpz_class& piv = a(i, ech.pivot_cols[i]);
    for (std::size_t j = 0; j < out.cols; ++j) {
      at(i, j) = mpq_class(a(i, j), piv);
      at(i, j).canonicalize();
    }
  }
  for (std::size_t ii = out.rows; ii-- > 0;) {
    const std::size_t pc = ech.pivot_cols[ii];
    for (std::size_t r = 0; r < ii; ++r) {
      if (at(r, pc) == 0) continue;
      const mpq_class f = at(r, pc);
      for (std::size_t j = pc; j < out.cols; ++j) {
        if (at(ii, j) != 0) at(r, j) -= f * at(ii, j);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// wide rank

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31U);
}

// Deterministic sample of `count` distinct indices from [0, n), sorted.
std::vector<std::size_t> column_sample(std::size_t n, std::size_t count) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::uint64_t state = 0x5EEDULL ^ (static_cast<std::uint64_t>(n) << 20U) ^ count;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(splitmix64(state) % (n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::uint32_t dot_mod(std::span<const std::uint32_t> x, std::span<const std::uint32_t> y,
                      const ModArith& ar) {
  unsigned __int128 acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += static_cast<std::uint64_t>(x[i]) * y[i];
  const auto hi = static_cast<std::uint64_t>(acc >> 64U);
  const auto lo = static_cast<std::uint64_t>(acc);
  const std::uint64_t p = ar.modulus();
  // 2^64 mod p
  const std::uint64_t two64 = ((~0ULL) % p + 1) % p;
  return ar.reduce((hi % p) * two64 % p + lo % p);
}

}  // namespace

WideRank wide_rank_mod(const ColumnSource& src, const ModArith& ar) {
  const std::size_t e = src.rows();
  const std::size_t c = src.cols();
  WideRank out;
  if (e == 0 || c == 0) return out;
  constexpr std::size_t kSlack = 16;
  constexpr std::size_t kChunk = 1024;

  std::vector<std::size_t> sample;
  if (c <= e + kSlack) {
    sample.resize(c);
    std::iota(sample.begin(), sample.end(), 0);
  } else {
    sample = column_sample(c, e + kSlack);
  }

  for (;;) {
    // Row q of t is column sample[q] of the source.
    ModMatrix t(sample.size(), e);
    const auto ns = static_cast<std::ptrdiff_t>(sample.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t q = 0; q < ns; ++q) {
      src.column_mod(sample[static_cast<std::size_t>(q)], ar, t.row(static_cast<std::size_t>(q)));
    }
    const Echelon ech = rref_mod(t, ar);
    out.rank = ech.rank;
    out.basis_rows = ech.pivot_cols;
    std::sort(out.basis_rows.begin(), out.basis_rows.end());
    out.basis_cols.clear();
    for (std::size_t q : ech.pivot_rows) out.basis_cols.push_back(sample[q]);
    std::sort(out.basis_cols.begin(), out.basis_cols.end());
    if (ech.rank == e || sample.size() == c) return out;

    const ModMatrix kernel = nullspace_from_rref(t, ech, ar);
    std::vector<char> in_sample(c, 0);
    for (std::size_t j : sample) in_sample[j] = 1;
    std::vector<std::size_t> rest;
    rest.reserve(c - sample.size());
    for (std::size_t j = 0; j < c; ++j) {
      if (!in_sample[j]) rest.push_back(j);
    }

    const std::size_t cap = e + kSlack;
    std::vector<std::size_t> violators;
    for (std::size_t begin = 0; begin < rest.size() && violators.size() < cap; begin += kChunk) {
      const std::size_t end = std::min(rest.size(), begin + kChunk);
      std::vector<char> bad(end - begin, 0);
      const auto b = static_cast<std::ptrdiff_t>(begin);
      const auto en = static_cast<std::ptrdiff_t>(end);
#pragma omp parallel
      {
        std::vector<std::uint32_t> col(e);
#pragma omp for schedule(static)
        for (std::ptrdiff_t q = b; q < en; ++q) {
          src.column_mod(rest[static_cast<std::size_t>(q)], ar, col);
          for (std::size_t k = 0; k < kernel.rows(); ++k) {
            if (dot_mod(kernel.row(k), col, ar) != 0) {
              bad[static_cast<std::size_t>(q - b)] = 1;
              break;
            }
          }
        }
      }
      for (std::size_t q = begin; q < end; ++q) {
        if (bad[q - begin]) violators.push_back(rest[q]);
      }
    }
    if (violators.empty()) return out;
    if (violators.size() > cap) violators.resize(cap);
    sample.insert(sample.end(), violators.begin(), violators.end());
    std::sort(sample.begin(), sample.end());
  }
}

WideRank wide_rank_mod_serial(const ColumnSource& src, const ModArith& ar) {
  const std::size_t e = src.rows();
  const std::size_t c = src.cols();
  WideRank out;
  if (e == 0 || c == 0) return out;
  ModMatrix t(c, e);
  for (std::size_t j = 0; j < c; ++j) src.column_mod(j, ar, t.row(j));
  const Echelon ech = rref_mod_serial(t, ar);
  out.rank = ech.rank;
  out.basis_rows = ech.pivot_cols;
  out.basis_cols = ech.pivot_rows;
  std::sort(out.basis_rows.begin(), out.basis_rows.end());
  std::sort(out.basis_cols.begin(), out.basis_cols.end());
  return out;
}

namespace {

std::size_t full_bareiss_rank(const ColumnSource& src) {
  const std::size_t e = src.rows();
  const std::size_t c = src.cols();
  IntMatrix a(e, c);
  std::vector<mpz_class> col(e);
  for (std::size_t j = 0; j < c; ++j) {
    src.column_int(j, col);
    for (std::size_t i = 0; i < e; ++i) a(i, j) = col[i];
  }
  return rank_bareiss(std::move(a));
}

}  // namespace

std::size_t wide_rank_rational(const ColumnSource& src) {
  const std::size_t e = src.rows();
  const std::size_t c = src.cols();
  if (e == 0 || c == 0) return 0;
  const ModArith ar(static_cast<std::uint32_t>(kDefaultPrime));
  const WideRank lower = wide_rank_mod(src, ar);
  const std::size_t r = lower.rank;
  if (r == std::min(e, c)) return r;

  // Every row outside basis_rows should be a rational combination of the
  // basis rows. Solve for the combination on the basis columns, then check
  // the resulting integer relation on all columns.
  const auto& rows_r = lower.basis_rows;
  const auto& cols_c = lower.basis_cols;
  std::vector<char> is_basis_row(e, 0);
  for (std::size_t i : rows_r) is_basis_row[i] = 1;
  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < e; ++i) {
    if (!is_basis_row[i]) others.push_back(i);
  }

  IntMatrix minor(r, r);
  IntMatrix rhs(r, others.size());
  std::vector<mpz_class> col(e);
  for (std::size_t b = 0; b < r; ++b) {
    src.column_int(cols_c[b], col);
    for (std::size_t a = 0; a < r; ++a) minor(b, a) = col[rows_r[a]];
    for (std::size_t q = 0; q < others.size(); ++q) rhs(b, q) = col[others[q]];
  }
  const FractionFreeSolution sol = solve_fraction_free(std::move(minor), std::move(rhs));

  bool certified = true;
  const auto nc = static_cast<std::ptrdiff_t>(c);
#pragma omp parallel
  {
    std::vector<mpz_class> column(e);
    mpz_class acc;
#pragma omp for schedule(dynamic, 16)
    for (std::ptrdiff_t jj = 0; jj < nc; ++jj) {
      bool ok;
#pragma omp atomic read
      ok = certified;
      if (!ok) continue;
      src.column_int(static_cast<std::size_t>(jj), column);
      for (std::size_t q = 0; q < others.size() && ok; ++q) {
        acc = sol.det * column[others[q]];
        for (std::size_t a = 0; a < r; ++a) {
          mpz_submul(acc.get_mpz_t(), sol.scaled(a, q).get_mpz_t(), column[rows_r[a]].get_mpz_t());
        }
        if (acc != 0) ok = false;
      }
      if (!ok) {
#pragma omp atomic write
        certified = false;
      }
    }
  }
  if (certified) return r;
  return full_bareiss_rank(src);
}

// ---------------------------------------------------------------------------

void DenseModColumns::column_mod(std::size_t j, const ModArith& ar, std::span<std::uint32_t> out) const {
  for (std::size_t i = 0; i < m_.rows(); ++i) out[i] = ar.reduce(m_(i, j));
}

void DenseModColumns::column_int(std::size_t j, std::span<mpz_class> out) const {
  for (std::size_t i = 0; i < m_.rows(); ++i) out[i] = static_cast<unsigned long>(m_(i, j));
}

void DenseIntColumns::column_mod(std::size_t j, const ModArith& ar, std::span<std::uint32_t> out) const {
  for (std::size_t i = 0; i < m_.rows(); ++i) out[i] = ar.from_mpz(m_(i, j));
}

void DenseIntColumns::column_int(std::size_t j, std::span<mpz_class> out) const {
  for (std::size_t i = 0; i < m_.rows(); ++i) out[i] = m_(i, j);
}

}  // namespace fatpoints::kernels
