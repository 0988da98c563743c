#pragma once

// Independent reference computations used only by the tests.

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fatpoints/matrix.hpp"
#include "fatpoints/projective.hpp"
#include "fatpoints/scheme.hpp"

namespace oracle {

using fatpoints::FatPointScheme;
using fatpoints::Field;
using fatpoints::Matrix;
using fatpoints::ProjectivePoint;
using fatpoints::Scalar;

/// Rank as the size of the largest nonzero minor (tiny matrices only).
std::size_t minor_rank(const Matrix& m);

/// Conditions for f to lie in P^m in degree t, obtained by moving P to
/// (1,0,...,0) and asking every coefficient of tail degree < m to vanish.
Matrix substitution_conditions(const ProjectivePoint& p, unsigned m, unsigned t);
std::size_t substitution_rank(const FatPointScheme& z, unsigned t);

/// T_j by scanning every subset of the points.
std::vector<std::uint64_t> brute_force_t_j(const FatPointScheme& z);

/// (flat key, incident indices) for the span of every subset.
std::set<std::pair<std::string, std::vector<std::size_t>>> brute_force_flats(
    const std::vector<ProjectivePoint>& points);

/// Regularity index from t = 0 upward using substitution_rank.
unsigned substitution_regularity(const FatPointScheme& z);

/// Integer point helper.
ProjectivePoint pt(std::initializer_list<long long> coords, const Field& f = Field::rational());
FatPointScheme scheme(std::initializer_list<std::pair<std::initializer_list<long long>, unsigned>> items,
                      const Field& f = Field::rational());

}  // namespace oracle
