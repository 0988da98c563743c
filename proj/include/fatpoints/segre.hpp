#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fatpoints/projective.hpp"
#include "fatpoints/scheme.hpp"

namespace fatpoints {

struct SegreWitness {
  Flat flat;
  std::vector<std::size_t> incident;
  std::uint64_t weight = 0;
};

struct SegreReport {
  std::vector<std::uint64_t> t_j;       // t_j[j - 1] = T_j
  std::vector<SegreWitness> witnesses;  // witnesses[j - 1] attains T_j
  std::uint64_t T = 0;
  std::size_t p_min = 0;  // least j with T_j = T
};

/// Sum of the multiplicities of the points on f.
std::uint64_t weight_on_flat(const FatPointScheme& z, const Flat& f);

/// max floor((w_F + j - 2) / j) over induced flats F with dim F <= j.
std::uint64_t segre_T_j(const FatPointScheme& z, std::size_t j);
SegreReport segre_bound(const FatPointScheme& z);
/// Same, reusing a precomputed induced_flats(z.points()).
SegreReport segre_bound(const FatPointScheme& z, const std::vector<InducedFlat>& flats);

enum class FormulaTag {
  davis_geramita,
  ctv_rnc,
  ctv_general_position,
  thien_s_plus_2,
  ts_general_on_flat,
  ts_equimultiple,
  equimultiple_small_s,
  nondegenerate_equimultiple,
};

std::string to_string(FormulaTag tag);
/// Accepts the tag names above; throws InvalidInput otherwise.
FormulaTag parse_formula_tag(const std::string& name);
std::vector<FormulaTag> all_formula_tags();

struct FormulaHypothesis {
  FormulaTag tag = FormulaTag::davis_geramita;
  /// ts_general_on_flat: the flat carrying the points (default: their span).
  std::optional<Flat> flat;
  /// ctv_rnc: curve parameter of each point, with nullopt for the point at
  /// infinity (0, ..., 0, 1). Default: read off the coordinates of the
  /// standard curve (1, t, ..., t^n).
  std::optional<std::vector<std::optional<Scalar>>> rnc_params;
};

/// Closed-form regularity index under the tagged hypothesis; no linear
/// algebra on condition matrices. Throws HypothesisViolated naming the
/// first failed condition.
std::uint64_t closed_form_reg(const FatPointScheme& z, const FormulaHypothesis& hyp);

/// Looks for an induced flat alpha of dimension r >= 1 with
/// floor((w - 2) / r) = T(Z) whose points, written in alpha's coordinates,
/// lie on a line or on the standard rational normal curve. The weight enters
/// as w - 2, not w + r - 2. Reported only, never asserted.
struct CurveFlatCheck {
  bool hypothesis_met = false;
  std::optional<SegreWitness> flat;
  std::uint64_t T = 0;
};
CurveFlatCheck curve_flat_check(const FatPointScheme& z);

/// Whether every point is (1, t, ..., t^n) for some t or is (0, ..., 0, 1).
bool on_standard_rnc(const std::vector<ProjectivePoint>& points);

}  // namespace fatpoints
