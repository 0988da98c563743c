#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "fatpoints/field.hpp"
#include "fatpoints/kernels.hpp"
#include "fatpoints/matrix.hpp"
#include "fatpoints/monomial.hpp"
#include "fatpoints/projective.hpp"

namespace fatpoints {

struct FatPoint {
  ProjectivePoint point;
  unsigned m = 1;

  friend bool operator==(const FatPoint&, const FatPoint&) = default;
};

/// Z = m_1 P_1 + ... + m_s P_s in P^n, n >= 1.
class FatPointScheme {
 public:
  /// Throws InvalidInput for an empty list, n = 0, a zero multiplicity,
  /// mismatched dimensions or fields, or repeated points.
  explicit FatPointScheme(std::vector<FatPoint> items);

  std::size_t n() const { return items_.front().point.n(); }
  std::size_t size() const { return items_.size(); }
  Field field() const { return items_.front().point.field(); }

  const std::vector<FatPoint>& items() const { return items_; }
  const ProjectivePoint& point(std::size_t i) const { return items_[i].point; }
  unsigned m(std::size_t i) const { return items_[i].m; }

  std::vector<ProjectivePoint> points() const;
  std::vector<unsigned> multiplicities() const;
  unsigned max_multiplicity() const;
  unsigned total_multiplicity() const;

  /// The same points read in another field. Throws InvalidInput when a
  /// coordinate has no image there or two points collide.
  FatPointScheme reduced_to(const Field& field) const;

  friend bool operator==(const FatPointScheme&, const FatPointScheme&) = default;

 private:
  std::vector<FatPoint> items_;
};

/// Vanishing conditions of degree t, generated one column (monomial) at a
/// time. The block of point P_i holds the derivatives of order
/// min(m_i - 1, t); columns follow monomials_of_degree(n + 1, t).
class ConditionColumns : public kernels::ColumnSource {
 public:
  ConditionColumns(const FatPointScheme& z, unsigned t);

  std::size_t rows() const override { return rows_; }
  std::size_t cols() const override { return monomials_.size(); }
  void column_mod(std::size_t j, const ModArith& ar, std::span<std::uint32_t> out) const override;
  void column_int(std::size_t j, std::span<mpz_class> out) const override;

  /// Modulus that column_mod expects.
  std::uint32_t modulus() const { return modulus_; }
  const std::vector<std::size_t>& block_offsets() const { return offsets_; }

 private:
  struct Block {
    std::vector<std::vector<std::uint32_t>> pow_mod;  // [l][e]
    std::vector<std::vector<mpz_class>> pow_int;      // [l][e], rational mode only
    std::vector<Monomial> orders;                     // derivative multi-indices
    std::vector<unsigned> orders_flat;                // orders, row-major
    unsigned k = 0;
    // nu!/(nu-a)! * P_l^(nu-a), zero for a > nu; index (l * (t+1) + nu) * (k+1) + a
    std::vector<std::uint32_t> factor_mod;
  };

  std::size_t nvars_;
  unsigned t_;
  bool rational_;
  std::uint32_t modulus_;
  std::size_t rows_ = 0;
  std::vector<Monomial> monomials_;
  std::vector<Block> blocks_;
  std::vector<std::size_t> offsets_;
  std::vector<std::vector<std::uint32_t>> falling_mod_;  // a!/(a-b)!
  std::vector<std::vector<mpz_class>> falling_int_;
};

struct ConditionMatrix {
  unsigned t = 0;
  Matrix matrix;
  /// First row of each point's block, plus a final entry equal to rows.
  std::vector<std::size_t> block_offsets;
};

/// Throws UnsupportedCharacteristic in F_p when p <= t.
ConditionMatrix conditions_matrix(const FatPointScheme& z, unsigned t);
/// rank of conditions_matrix(z, t) without materializing it.
std::size_t condition_rank(const FatPointScheme& z, unsigned t);

std::uint64_t ideal_dim(const FatPointScheme& z, unsigned t);
std::uint64_t hilbert(const FatPointScheme& z, unsigned t);
std::uint64_t multiplicity(const FatPointScheme& z);

/// Least t with H(t) = e. With check_segre the result is also compared
/// against the Segre bound (InternalInvariantViolation if it exceeds it).
unsigned regularity_index(const FatPointScheme& z, bool check_segre = true);

struct HilbertProfile {
  std::size_t n = 0;
  unsigned t_max = 0;
  std::vector<std::uint64_t> hilbert;    // index t
  std::vector<std::uint64_t> ideal_dim;  // index t
  std::uint64_t e = 0;
  std::optional<unsigned> reg;
};

HilbertProfile hilbert_profile(const FatPointScheme& z, unsigned t_max);

/// Throws InvalidInput for empty, repeated or out-of-range indices.
FatPointScheme subscheme(const FatPointScheme& z, const std::vector<std::size_t>& indices);

/// (target_n+1) x (n+1) matrix with the identity on top and zeros below.
Matrix identity_embedding_map(std::size_t n, std::size_t target_n, const Field& field);
/// Seeded full-column-rank map with small integer entries.
Matrix random_embedding_map(std::size_t n, std::size_t target_n, std::uint64_t seed, const Field& field);
/// Throws InvalidInput if target_n < n or the map is not of full column rank.
FatPointScheme embed(const FatPointScheme& z, std::size_t target_n, const Matrix& map);
FatPointScheme embed(const FatPointScheme& z, std::size_t target_n);

/// The scheme in P^r, r = dim f, with each point written in f's basis.
/// Throws InvalidInput if a point is off f or dim f = 0.
FatPointScheme restrict_to_flat(const FatPointScheme& z, const Flat& f);

/// Applies one invertible (n+1) x (n+1) matrix to every point.
FatPointScheme apply_projective_transform(const FatPointScheme& z, const Matrix& g);

/// dim (J + P^a)_t as the rank of the stacked spanning sets of J_t and (P^a)_t.
std::uint64_t sum_graded_dim(const FatPointScheme& j, const ProjectivePoint& p, unsigned a, unsigned t);
/// Least t with (J + P^a)_t = R_t.
unsigned quotient_sum_reg(const FatPointScheme& j, const ProjectivePoint& p, unsigned a);

/// Whether X_0^{b - deg M} M lies in (J + P^{i+1})_b after the coordinate
/// change taking p to (1, 0, ..., 0). M has n entries (exponents of
/// X_1..X_n) and degree at most b.
bool monomial_in_sum(unsigned b, unsigned i, const Monomial& m_tail, const FatPointScheme& j,
                     const ProjectivePoint& p);
/// Same test against P^{i+1} alone.
bool monomial_in_power(unsigned b, unsigned i, const Monomial& m_tail, const ProjectivePoint& p);

}  // namespace fatpoints
