#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fatpoints/field.hpp"
#include "fatpoints/matrix.hpp"

namespace fatpoints {

/// Point of P^n, stored with its first nonzero coordinate equal to 1.
class ProjectivePoint {
 public:
  /// Throws InvalidInput for an empty or all-zero vector or mixed fields.
  explicit ProjectivePoint(std::vector<Scalar> coords);
  static ProjectivePoint from_ints(const std::vector<long long>& coords, const Field& field);

  std::size_t n() const { return coords_.size() - 1; }
  const std::vector<Scalar>& coords() const { return coords_; }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }
  Field field() const { return coords_.front().field(); }

  std::string to_string() const;

  friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;

 private:
  std::vector<Scalar> coords_;
};

/// Linear subspace of P^n spanned by the rows of `basis` (kept in rref).
struct Flat {
  std::size_t n = 0;
  Matrix basis;

  std::size_t dim() const { return basis.rows() - 1; }
  friend bool operator==(const Flat&, const Flat&) = default;
};

/// Flat spanned by some of the points, with every point that lies on it.
struct InducedFlat {
  Flat flat;
  std::vector<std::size_t> incident;
};

/// Rows are the points' coordinate vectors. Throws on an empty list or mixed n.
Matrix coordinate_matrix(const std::vector<ProjectivePoint>& points);

std::size_t span_dim(const std::vector<ProjectivePoint>& points);
Flat flat_from_points(const std::vector<ProjectivePoint>& points);
/// Flat spanned by the rows of a nonzero matrix with n+1 columns.
Flat flat_from_rows(const Matrix& rows);
Flat ambient_flat(std::size_t n, const Field& field);

bool contains(const Flat& f, const ProjectivePoint& p);

/// Total order on flats: by dimension, then entrywise on the bases.
bool flat_less(const Flat& a, const Flat& b);
std::string flat_key(const Flat& f);

/// Throws InvalidInput if two points coincide or the ambient dimensions differ.
void require_distinct(const std::vector<ProjectivePoint>& points);

/// Every flat spanned by a subset of the points, with its full incident set,
/// sorted by (dim, basis).
std::vector<InducedFlat> induced_flats(const std::vector<ProjectivePoint>& points);

bool is_collinear(const std::vector<ProjectivePoint>& points);
bool is_nondegenerate(const std::vector<ProjectivePoint>& points, std::size_t n);
/// No j+2 points on a j-flat for j < n, where n is the points' ambient dimension.
bool in_linearly_general_position(const std::vector<ProjectivePoint>& points);
/// Same test with the ambient space replaced by an r-dimensional space
/// (every subset of at most r+1 points is independent).
bool in_linearly_general_position(const std::vector<ProjectivePoint>& points, std::size_t r);

/// Image of p under the linear map g ((N+1) x (n+1)); throws if g p = 0.
ProjectivePoint apply(const Matrix& g, const ProjectivePoint& p);

}  // namespace fatpoints
