#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fatpoints/field.hpp"
#include "fatpoints/projective.hpp"
#include "fatpoints/scheme.hpp"

namespace fatpoints {

enum class Family {
  generic,                   // linearly general position
  nondegenerate,             // support spans P^n
  collinear,
  simplex,                   // the n+1 coordinate points
  rnc,                       // (1, t, ..., t^n) with distinct integers t
  on_flat_general_position,  // general position inside a random r-flat
  two_lines,                 // three points on l1, two on l2, one off every line through two others
  two_lines_lifted,          // two_lines in {X_3 = ... = X_n = 0}, P_4..P_{n+4} in general position
};

std::string to_string(Family f);
/// Accepts underscores or dashes ("two-lines"); throws InvalidInput otherwise.
Family parse_family(const std::string& name);
std::vector<Family> all_families();

struct GenSpec {
  Family family = Family::generic;
  std::size_t n = 2;
  /// Number of points; 0 picks the family's forced value (simplex n+1,
  /// two_lines 6, two_lines_lifted n+4).
  std::size_t s = 0;
  /// One entry per point; empty means every point gets m.
  std::vector<unsigned> multiplicities;
  unsigned m = 1;
  std::uint64_t seed = 0;
  /// Flat dimension for on_flat_general_position; 0 means max(1, n-1).
  std::size_t r = 0;
  long long coord_bound = 10000;
  Field field;
  /// Draws allowed before GenerationFailure.
  std::size_t max_tries = 200;
};

struct Generated {
  FatPointScheme scheme;
  std::size_t tries = 1;
  /// The carrying flat (on_flat_general_position only).
  std::optional<Flat> flat;
  /// Curve parameters (rnc only).
  std::vector<long long> rnc_params;
};

/// Throws InvalidInput for a bad spec and GenerationFailure when no draw
/// passes the family predicate within max_tries.
Generated generate_detailed(const GenSpec& spec);
FatPointScheme generate(const GenSpec& spec);

/// Draws generate(spec), then reseeded copies of it, and returns the first
/// scheme satisfying pred; tries counts the draws.
Generated resample_until(const std::function<bool(const FatPointScheme&)>& pred, const GenSpec& spec,
                         std::size_t max_tries);

/// The defining predicate of spec.family (used on every emitted scheme).
bool satisfies_family(const GenSpec& spec, const Generated& g);

/// Six points of P^2: P1, P2, P3 on a line l1, P4, P5 off l1 spanning l2
/// with P1..P3 off l2, and P6 off every line through two of P1..P5.
bool two_lines_pattern(const std::vector<ProjectivePoint>& points);

}  // namespace fatpoints
