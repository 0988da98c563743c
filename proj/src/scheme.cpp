#include "fatpoints/scheme.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <string>

#include "fatpoints/error.hpp"
#include "fatpoints/random.hpp"
#include "fatpoints/segre.hpp"

namespace fatpoints {

FatPointScheme::FatPointScheme(std::vector<FatPoint> items) : items_(std::move(items)) {
  if (items_.empty()) throw InvalidInput("a fat point scheme needs at least one point");
  if (items_.front().point.n() == 0) throw InvalidInput("ambient dimension must be at least 1");
  const Field f = items_.front().point.field();
  for (const auto& it : items_) {
    if (it.m == 0) throw InvalidInput("multiplicities must be positive");
    if (!(it.point.field() == f)) throw InvalidInput("mixed field modes among scheme points");
  }
  require_distinct(points());
}

std::vector<ProjectivePoint> FatPointScheme::points() const {
  std::vector<ProjectivePoint> out;
  out.reserve(items_.size());
  for (const auto& it : items_) out.push_back(it.point);
  return out;
}

std::vector<unsigned> FatPointScheme::multiplicities() const {
  std::vector<unsigned> out;
  out.reserve(items_.size());
  for (const auto& it : items_) out.push_back(it.m);
  return out;
}

unsigned FatPointScheme::max_multiplicity() const {
  unsigned best = 0;
  for (const auto& it : items_) best = std::max(best, it.m);
  return best;
}

unsigned FatPointScheme::total_multiplicity() const {
  unsigned sum = 0;
  for (const auto& it : items_) sum += it.m;
  return sum;
}

FatPointScheme FatPointScheme::reduced_to(const Field& target) const {
  const Field f = field();
  if (f == target) return *this;
  if (!f.is_rational()) {
    throw InvalidInput("cannot move a scheme from " + f.describe() + " to " + target.describe());
  }
  std::vector<FatPoint> items;
  items.reserve(items_.size());
  for (const auto& it : items_) {
    std::vector<Scalar> coords;
    for (const Scalar& c : it.point.coords()) coords.push_back(Scalar::from_rational(c.as_rational(), target));
    items.push_back({ProjectivePoint(std::move(coords)), it.m});
  }
  return FatPointScheme(std::move(items));
}

namespace {

// Coordinates scaled to a primitive integer vector.
std::vector<mpz_class> integer_coords(const ProjectivePoint& p) {
  mpz_class den = 1;
  for (const Scalar& c : p.coords()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.as_rational().get_den_mpz_t());
  }
  std::vector<mpz_class> out;
  mpz_class g = 0;
  for (const Scalar& c : p.coords()) {
    const mpq_class& q = c.as_rational();
    out.push_back(q.get_num() * (den / q.get_den()));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  for (auto& v : out) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  return out;
}

void require_characteristic(const Field& f, unsigned t) {
  if (f.is_prime() && f.modulus() <= t) {
    throw UnsupportedCharacteristic("degree " + std::to_string(t) + " needs characteristic above " +
                                    std::to_string(t) + ", field is " + f.describe());
  }
}

}  // namespace

ConditionColumns::ConditionColumns(const FatPointScheme& z, unsigned t)
    : nvars_(z.n() + 1), t_(t), rational_(z.field().is_rational()) {
  const Field f = z.field();
  require_characteristic(f, t);
  modulus_ = static_cast<std::uint32_t>(rational_ ? kDefaultPrime : f.modulus());
  const ModArith ar(modulus_);
  monomials_ = monomials_of_degree(nvars_, t);

  falling_mod_.assign(t + 1, {});
  if (rational_) falling_int_.assign(t + 1, {});
  for (unsigned a = 0; a <= t; ++a) {
    mpz_class v = 1;
    for (unsigned b = 0; b <= a; ++b) {
      if (b > 0) v *= a - b + 1;
      falling_mod_[a].push_back(ar.from_mpz(v));
      if (rational_) falling_int_[a].push_back(v);
    }
  }

  for (const auto& item : z.items()) {
    Block block;
    const unsigned k = std::min(item.m - 1, t);
    block.orders = monomials_of_degree(nvars_, k);
    block.pow_mod.assign(nvars_, std::vector<std::uint32_t>(t + 1));
    if (rational_) {
      const auto coords = integer_coords(item.point);
      block.pow_int.assign(nvars_, std::vector<mpz_class>(t + 1));
      for (std::size_t l = 0; l < nvars_; ++l) {
        block.pow_int[l][0] = 1;
        for (unsigned e = 1; e <= t; ++e) block.pow_int[l][e] = block.pow_int[l][e - 1] * coords[l];
        for (unsigned e = 0; e <= t; ++e) block.pow_mod[l][e] = ar.from_mpz(block.pow_int[l][e]);
      }
    } else {
      for (std::size_t l = 0; l < nvars_; ++l) {
        const auto c = static_cast<std::uint32_t>(item.point[l].as_residue());
        block.pow_mod[l][0] = 1;
        for (unsigned e = 1; e <= t; ++e) block.pow_mod[l][e] = ar.mul(block.pow_mod[l][e - 1], c);
      }
    }
    block.k = k;
    for (const Monomial& alpha : block.orders) block.orders_flat.insert(block.orders_flat.end(), alpha.begin(), alpha.end());
    block.factor_mod.assign(nvars_ * (t + 1) * (k + 1), 0);
    for (std::size_t l = 0; l < nvars_; ++l) {
      for (unsigned nu = 0; nu <= t; ++nu) {
        for (unsigned a = 0; a <= std::min(nu, k); ++a) {
          block.factor_mod[(l * (t + 1) + nu) * (k + 1) + a] = ar.mul(falling_mod_[nu][a], block.pow_mod[l][nu - a]);
        }
      }
    }
    offsets_.push_back(rows_);
    rows_ += block.orders.size();
    blocks_.push_back(std::move(block));
  }
  offsets_.push_back(rows_);
}

void ConditionColumns::column_mod(std::size_t j, const ModArith& ar, std::span<std::uint32_t> out) const {
  if (ar.modulus() != modulus_) throw InternalInvariantViolation("condition columns requested modulo a foreign prime");
  const Monomial& nu = monomials_[j];
  const std::size_t stride = t_ + 1;
  std::size_t r = 0;
  for (const Block& block : blocks_) {
    const std::size_t kk = block.k + 1;
    const std::uint32_t* g = block.factor_mod.data();
    const unsigned* alpha = block.orders_flat.data();
    for (std::size_t q = 0; q < block.orders.size(); ++q, alpha += nvars_) {
      std::uint32_t v = g[nu[0] * kk + alpha[0]];
      for (std::size_t l = 1; l < nvars_ && v != 0; ++l) {
        v = ar.mul(v, g[(l * stride + nu[l]) * kk + alpha[l]]);
      }
      out[r++] = v;
    }
  }
}

void ConditionColumns::column_int(std::size_t j, std::span<mpz_class> out) const {
  if (!rational_) {
    // Prime mode: residues are the canonical integer lifts.
    const ModArith ar(modulus_);
    std::vector<std::uint32_t> tmp(rows_);
    column_mod(j, ar, tmp);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = static_cast<unsigned long>(tmp[i]);
    return;
  }
  const Monomial& nu = monomials_[j];
  std::size_t r = 0;
  for (const Block& block : blocks_) {
    for (const Monomial& alpha : block.orders) {
      mpz_class& v = out[r++];
      v = 1;
      for (std::size_t l = 0; l < nvars_; ++l) {
        if (alpha[l] > nu[l]) {
          v = 0;
          break;
        }
        if (alpha[l] > 0) v *= falling_int_[nu[l]][alpha[l]];
        if (nu[l] > alpha[l]) v *= block.pow_int[l][nu[l] - alpha[l]];
        if (v == 0) break;
      }
    }
  }
}

ConditionMatrix conditions_matrix(const FatPointScheme& z, unsigned t) {
  const ConditionColumns src(z, t);
  const Field f = z.field();
  ConditionMatrix out{t, Matrix(src.rows(), src.cols(), f), src.block_offsets()};
  if (f.is_rational()) {
    std::vector<mpz_class> col(src.rows());
    for (std::size_t j = 0; j < src.cols(); ++j) {
      src.column_int(j, col);
      for (std::size_t i = 0; i < src.rows(); ++i) out.matrix.set(i, j, Scalar::rational(mpq_class(col[i])));
    }
  } else {
    const ModArith ar(src.modulus());
    std::vector<std::uint32_t> col(src.rows());
    for (std::size_t j = 0; j < src.cols(); ++j) {
      src.column_mod(j, ar, col);
      for (std::size_t i = 0; i < src.rows(); ++i) out.matrix.set(i, j, Scalar::residue(col[i], f.modulus()));
    }
  }
  return out;
}

std::size_t condition_rank(const FatPointScheme& z, unsigned t) {
  const ConditionColumns src(z, t);
  if (z.field().is_rational()) return kernels::wide_rank_rational(src);
  return kernels::wide_rank_mod(src, ModArith(src.modulus())).rank;
}

std::uint64_t hilbert(const FatPointScheme& z, unsigned t) { return condition_rank(z, t); }

std::uint64_t ideal_dim(const FatPointScheme& z, unsigned t) {
  return binomial(t + z.n(), z.n()) - condition_rank(z, t);
}

std::uint64_t multiplicity(const FatPointScheme& z) {
  std::uint64_t e = 0;
  for (const auto& it : z.items()) e += binomial(it.m + z.n() - 1, z.n());
  return e;
}

unsigned regularity_index(const FatPointScheme& z, bool check_segre) {
  const std::uint64_t e = multiplicity(z);
  const unsigned start = z.max_multiplicity() - 1;
  const unsigned cap = z.total_multiplicity() - 1;
  // H(t) = e persists once reached, so probe upward with doubling steps and
  // then walk down. Full-rank degrees are cheap (the first column sample
  // already has rank e); deficient ones need a scan of every column.
  unsigned limit = cap;
  if (z.field().is_prime() && z.field().modulus() <= cap) limit = static_cast<unsigned>(z.field().modulus() - 1);
  const auto full = [&](unsigned t) { return hilbert(z, t) == e; };

  std::optional<unsigned> deficient;
  unsigned hi = start;
  for (unsigned step = 1;; step *= 2) {
    if (full(hi)) break;
    deficient = hi;
    if (hi == limit) {
      if (limit < cap) hilbert(z, limit + 1);  // throws UnsupportedCharacteristic
      throw InternalInvariantViolation("Hilbert function did not reach the multiplicity by degree " +
                                       std::to_string(cap));
    }
    hi = std::min(limit, start + step);
  }
  unsigned reg = hi;
  while (reg > start && (!deficient || reg - 1 > *deficient) && full(reg - 1)) --reg;

  if (check_segre) {
    const std::uint64_t bound = segre_bound(z).T;
    if (reg > bound) {
      throw InternalInvariantViolation("regularity index " + std::to_string(reg) + " exceeds the Segre bound " +
                                       std::to_string(bound));
    }
  }
  return reg;
}

HilbertProfile hilbert_profile(const FatPointScheme& z, unsigned t_max) {
  require_characteristic(z.field(), t_max);
  HilbertProfile out;
  out.n = z.n();
  out.t_max = t_max;
  out.e = multiplicity(z);
  out.hilbert.assign(t_max + 1, 0);
  out.ideal_dim.assign(t_max + 1, 0);
  std::exception_ptr failure;
  const auto last = static_cast<long long>(t_max);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long tt = 0; tt <= last; ++tt) {
    try {
      const auto t = static_cast<unsigned>(tt);
      out.hilbert[t] = hilbert(z, t);
    } catch (...) {
#pragma omp critical(fatpoints_profile_error)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  for (unsigned t = 0; t <= t_max; ++t) {
    out.ideal_dim[t] = binomial(t + z.n(), z.n()) - out.hilbert[t];
    if (!out.reg && out.hilbert[t] == out.e) out.reg = t;
  }
  return out;
}

FatPointScheme subscheme(const FatPointScheme& z, const std::vector<std::size_t>& indices) {
  if (indices.empty()) throw InvalidInput("subscheme needs at least one index");
  std::vector<char> seen(z.size(), 0);
  std::vector<FatPoint> items;
  for (std::size_t i : indices) {
    if (i >= z.size()) throw InvalidInput("subscheme index " + std::to_string(i) + " out of range");
    if (seen[i]) throw InvalidInput("subscheme index " + std::to_string(i) + " repeated");
    seen[i] = 1;
    items.push_back(z.items()[i]);
  }
  return FatPointScheme(std::move(items));
}

Matrix identity_embedding_map(std::size_t n, std::size_t target_n, const Field& field) {
  if (target_n < n) throw InvalidInput("target dimension is below the source dimension");
  Matrix map(target_n + 1, n + 1, field);
  for (std::size_t i = 0; i <= n; ++i) map.set(i, i, Scalar::one(field));
  return map;
}

Matrix random_embedding_map(std::size_t n, std::size_t target_n, std::uint64_t seed, const Field& field) {
  if (target_n < n) throw InvalidInput("target dimension is below the source dimension");
  Rng rng(seed);
  for (;;) {
    Matrix map(target_n + 1, n + 1, field);
    for (std::size_t i = 0; i <= target_n; ++i) {
      for (std::size_t j = 0; j <= n; ++j) map.set(i, j, Scalar::from_int(rng.uniform(-9, 9), field));
    }
    if (rank(map) == n + 1) return map;
  }
}

FatPointScheme embed(const FatPointScheme& z, std::size_t target_n, const Matrix& map) {
  if (target_n < z.n()) throw InvalidInput("target dimension is below the source dimension");
  if (map.rows() != target_n + 1 || map.cols() != z.n() + 1) throw InvalidInput("embedding map has the wrong shape");
  if (!(map.field() == z.field())) throw InvalidInput("embedding map and scheme use different fields");
  if (rank(map) != z.n() + 1) throw InvalidInput("embedding map is not of full column rank");
  std::vector<FatPoint> items;
  items.reserve(z.size());
  for (const auto& it : z.items()) items.push_back({apply(map, it.point), it.m});
  return FatPointScheme(std::move(items));
}

FatPointScheme embed(const FatPointScheme& z, std::size_t target_n) {
  return embed(z, target_n, identity_embedding_map(z.n(), target_n, z.field()));
}

FatPointScheme restrict_to_flat(const FatPointScheme& z, const Flat& f) {
  if (f.n != z.n()) throw InvalidInput("flat and scheme live in different ambient dimensions");
  if (f.dim() == 0) throw InvalidInput("cannot restrict to a single point");
  const Matrix& b = f.basis;
  std::vector<std::size_t> pivots;
  for (std::size_t i = 0; i < b.rows(); ++i) {
    std::size_t j = 0;
    while (b.at(i, j).is_zero()) ++j;
    pivots.push_back(j);
  }
  const Field field = z.field();
  std::vector<FatPoint> items;
  for (const auto& it : z.items()) {
    std::vector<Scalar> c;
    for (std::size_t pc : pivots) c.push_back(it.point[pc]);
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Scalar v = Scalar::zero(field);
      for (std::size_t i = 0; i < b.rows(); ++i) v += c[i] * b.at(i, j);
      if (!(v == it.point[j])) throw InvalidInput("point " + it.point.to_string() + " is not on the flat");
    }
    items.push_back({ProjectivePoint(std::move(c)), it.m});
  }
  return FatPointScheme(std::move(items));
}

FatPointScheme apply_projective_transform(const FatPointScheme& z, const Matrix& g) {
  if (g.rows() != z.n() + 1 || g.cols() != z.n() + 1) throw InvalidInput("coordinate change has the wrong shape");
  if (rank(g) != z.n() + 1) throw InvalidInput("coordinate change is singular");
  std::vector<FatPoint> items;
  for (const auto& it : z.items()) items.push_back({apply(g, it.point), it.m});
  return FatPointScheme(std::move(items));
}

namespace {

void require_off_support(const FatPointScheme& j, const ProjectivePoint& p) {
  if (p.n() != j.n()) throw InvalidInput("point and scheme live in different ambient dimensions");
  if (!(p.field() == j.field())) throw InvalidInput("point and scheme use different fields");
  for (const auto& it : j.items()) {
    if (it.point == p) throw InvalidInput("point " + p.to_string() + " lies in the support of J");
  }
}

// Rows spanning {f : conditions(f) = 0} in degree t, over F_p.
kernels::ModMatrix ideal_basis_mod(const FatPointScheme& z, unsigned t, const ModArith& ar) {
  const ConditionColumns src(z, t);
  kernels::ModMatrix a(src.rows(), src.cols());
  std::vector<std::uint32_t> col(src.rows());
  for (std::size_t j = 0; j < src.cols(); ++j) {
    src.column_mod(j, ar, col);
    for (std::size_t i = 0; i < src.rows(); ++i) a(i, j) = col[i];
  }
  return kernels::nullspace_mod(a, ar);
}

// Same over Q, each basis vector scaled to integers; appended as columns of out.
void append_ideal_basis_int(const FatPointScheme& z, unsigned t, std::vector<std::vector<mpz_class>>& out) {
  const ConditionColumns src(z, t);
  kernels::IntMatrix a(src.rows(), src.cols());
  std::vector<mpz_class> col(src.rows());
  for (std::size_t j = 0; j < src.cols(); ++j) {
    src.column_int(j, col);
    for (std::size_t i = 0; i < src.rows(); ++i) a(i, j) = col[i];
  }
  const kernels::RationalRref r = kernels::rref_rational(std::move(a));
  std::vector<char> is_pivot(r.cols, 0);
  for (std::size_t c : r.pivot_cols) is_pivot[c] = 1;
  for (std::size_t f = 0; f < r.cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<mpq_class> v(r.cols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < r.rows; ++i) v[r.pivot_cols[i]] = -r.entries[i * r.cols + f];
    mpz_class den = 1;
    for (const auto& q : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    std::vector<mpz_class> iv;
    iv.reserve(v.size());
    for (const auto& q : v) iv.push_back(q.get_num() * (den / q.get_den()));
    out.push_back(std::move(iv));
  }
}

FatPointScheme single_fat_point(const ProjectivePoint& p, unsigned a) {
  return FatPointScheme({FatPoint{p, a}});
}

}  // namespace

std::uint64_t sum_graded_dim(const FatPointScheme& j, const ProjectivePoint& p, unsigned a, unsigned t) {
  require_off_support(j, p);
  if (a == 0) throw InvalidInput("the power of the point ideal must be positive");
  const Field f = j.field();
  require_characteristic(f, t);
  const FatPointScheme ap = single_fat_point(p, a);
  const std::size_t c = static_cast<std::size_t>(binomial(t + j.n(), j.n()));
  if (f.is_prime()) {
    const ModArith ar(static_cast<std::uint32_t>(f.modulus()));
    const kernels::ModMatrix u = ideal_basis_mod(j, t, ar);
    const kernels::ModMatrix v = ideal_basis_mod(ap, t, ar);
    kernels::ModMatrix stacked(u.rows() + v.rows(), c);
    for (std::size_t i = 0; i < u.rows(); ++i) std::copy(u.row(i).begin(), u.row(i).end(), stacked.row(i).begin());
    for (std::size_t i = 0; i < v.rows(); ++i) {
      std::copy(v.row(i).begin(), v.row(i).end(), stacked.row(u.rows() + i).begin());
    }
    return kernels::rank_mod(std::move(stacked), ar);
  }
  std::vector<std::vector<mpz_class>> vectors;
  append_ideal_basis_int(j, t, vectors);
  append_ideal_basis_int(ap, t, vectors);
  if (vectors.empty()) return 0;
  // Spanning vectors as columns: few rows remain outside the span near the top degree.
  kernels::IntMatrix m(c, vectors.size());
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    for (std::size_t i = 0; i < c; ++i) m(i, k) = vectors[k][i];
  }
  return kernels::wide_rank_rational(kernels::DenseIntColumns(std::move(m)));
}

unsigned quotient_sum_reg(const FatPointScheme& j, const ProjectivePoint& p, unsigned a) {
  const unsigned cap = j.total_multiplicity() + a - 1;
  for (unsigned t = 0; t <= cap; ++t) {
    if (sum_graded_dim(j, p, a, t) == binomial(t + j.n(), j.n())) return t;
  }
  throw InternalInvariantViolation("(J + P^a)_t did not fill R_t by degree " + std::to_string(cap));
}

namespace {

void require_tail_monomial(unsigned b, const Monomial& m_tail, std::size_t n) {
  if (m_tail.size() != n) {
    throw InvalidInput("monomial must have " + std::to_string(n) + " exponents (X_1..X_n), got " +
                       std::to_string(m_tail.size()));
  }
  if (degree(m_tail) > b) throw InvalidInput("monomial degree exceeds the ambient degree b");
}

// Invertible g with g(1,0,...,0) = p: first column p, then the standard
// basis vectors except the one at p's leading coordinate.
Matrix moving_frame(const ProjectivePoint& p) {
  const std::size_t n = p.n();
  const Field f = p.field();
  std::size_t lead = 0;
  while (p[lead].is_zero()) ++lead;
  Matrix g(n + 1, n + 1, f);
  for (std::size_t i = 0; i <= n; ++i) g.set(i, 0, p[i]);
  std::size_t col = 1;
  for (std::size_t k = 0; k <= n; ++k) {
    if (k == lead) continue;
    g.set(k, col++, Scalar::one(f));
  }
  return g;
}

}  // namespace

bool monomial_in_power(unsigned b, unsigned i, const Monomial& m_tail, const ProjectivePoint& p) {
  require_tail_monomial(b, m_tail, p.n());
  return degree(m_tail) >= i + 1;
}

bool monomial_in_sum(unsigned b, unsigned i, const Monomial& m_tail, const FatPointScheme& j,
                     const ProjectivePoint& p) {
  require_tail_monomial(b, m_tail, j.n());
  require_off_support(j, p);
  require_characteristic(j.field(), b);
  if (degree(m_tail) >= i + 1) return true;

  const FatPointScheme moved = apply_projective_transform(j, inverse(moving_frame(p)));
  const Matrix basis = nullspace_basis(conditions_matrix(moved, b).matrix);

  const std::size_t nvars = j.n() + 1;
  const MonomialIndex index(nvars, b);
  Monomial target(nvars, 0);
  target[0] = b - degree(m_tail);
  std::copy(m_tail.begin(), m_tail.end(), target.begin() + 1);
  const std::size_t target_col = index.index(target);

  // Monomials of tail degree >= i+1 span P^{i+1}; drop those coordinates.
  std::vector<std::size_t> low;
  for (std::size_t c = 0; c < index.size(); ++c) {
    if (index[c][0] + i >= b) low.push_back(c);
  }
  const Field f = j.field();
  Matrix span(basis.rows(), low.size(), f);
  for (std::size_t r = 0; r < basis.rows(); ++r) {
    for (std::size_t k = 0; k < low.size(); ++k) span.set(r, k, basis.at(r, low[k]));
  }
  Matrix with_target(basis.rows() + 1, low.size(), f);
  for (std::size_t r = 0; r < basis.rows(); ++r) {
    for (std::size_t k = 0; k < low.size(); ++k) with_target.set(r, k, span.at(r, k));
  }
  for (std::size_t k = 0; k < low.size(); ++k) {
    if (low[k] == target_col) with_target.set(basis.rows(), k, Scalar::one(f));
  }
  return rank(with_target) == rank(span);
}

}  // namespace fatpoints
