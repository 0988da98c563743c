#include "fatpoints/segre.hpp"

#include <algorithm>
#include <functional>

#include "fatpoints/error.hpp"

namespace fatpoints {

std::uint64_t weight_on_flat(const FatPointScheme& z, const Flat& f) {
  if (f.n != z.n()) throw InvalidInput("flat and scheme live in different ambient dimensions");
  std::uint64_t w = 0;
  for (const auto& it : z.items()) {
    if (contains(f, it.point)) w += it.m;
  }
  return w;
}

namespace {

std::uint64_t incident_weight(const FatPointScheme& z, const InducedFlat& f) {
  std::uint64_t w = 0;
  for (std::size_t i : f.incident) w += z.m(i);
  return w;
}

}  // namespace

SegreReport segre_bound(const FatPointScheme& z, const std::vector<InducedFlat>& flats) {
  const std::size_t n = z.n();
  SegreReport out;
  out.t_j.assign(n, 0);
  out.witnesses.resize(n);
  std::vector<std::uint64_t> weights;
  weights.reserve(flats.size());
  for (const auto& f : flats) weights.push_back(incident_weight(z, f));
  for (std::size_t j = 1; j <= n; ++j) {
    bool found = false;
    for (std::size_t k = 0; k < flats.size(); ++k) {
      if (flats[k].flat.dim() > j) continue;
      const std::uint64_t value = (weights[k] + j - 2) / j;
      if (!found || value > out.t_j[j - 1]) {
        found = true;
        out.t_j[j - 1] = value;
        out.witnesses[j - 1] = SegreWitness{flats[k].flat, flats[k].incident, weights[k]};
      }
    }
  }
  out.T = *std::max_element(out.t_j.begin(), out.t_j.end());
  out.p_min = static_cast<std::size_t>(std::find(out.t_j.begin(), out.t_j.end(), out.T) - out.t_j.begin()) + 1;
  return out;
}

SegreReport segre_bound(const FatPointScheme& z) { return segre_bound(z, induced_flats(z.points())); }

std::uint64_t segre_T_j(const FatPointScheme& z, std::size_t j) {
  if (j < 1 || j > z.n()) {
    throw InvalidInput("T_j needs 1 <= j <= n, got j = " + std::to_string(j) + ", n = " + std::to_string(z.n()));
  }
  return segre_bound(z).t_j[j - 1];
}

std::string to_string(FormulaTag tag) {
  switch (tag) {
    case FormulaTag::davis_geramita: return "davis_geramita";
    case FormulaTag::ctv_rnc: return "ctv_rnc";
    case FormulaTag::ctv_general_position: return "ctv_general_position";
    case FormulaTag::thien_s_plus_2: return "thien_s_plus_2";
    case FormulaTag::ts_general_on_flat: return "ts_general_on_flat";
    case FormulaTag::ts_equimultiple: return "ts_equimultiple";
    case FormulaTag::equimultiple_small_s: return "equimultiple_small_s";
    case FormulaTag::nondegenerate_equimultiple: return "nondegenerate_equimultiple";
  }
  return "unknown";
}

std::vector<FormulaTag> all_formula_tags() {
  return {FormulaTag::davis_geramita,    FormulaTag::ctv_rnc,         FormulaTag::ctv_general_position,
          FormulaTag::thien_s_plus_2,    FormulaTag::ts_general_on_flat, FormulaTag::ts_equimultiple,
          FormulaTag::equimultiple_small_s, FormulaTag::nondegenerate_equimultiple};
}

FormulaTag parse_formula_tag(const std::string& name) {
  for (FormulaTag tag : all_formula_tags()) {
    if (to_string(tag) == name) return tag;
  }
  throw InvalidInput("unknown formula tag '" + name + "'");
}

bool on_standard_rnc(const std::vector<ProjectivePoint>& points) {
  for (const auto& p : points) {
    const std::size_t n = p.n();
    if (p[0].is_zero()) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!p[k].is_zero()) return false;
      }
      continue;
    }
    const Scalar& t = p[1];
    Scalar power = p[0];
    for (std::size_t k = 1; k <= n; ++k) {
      power *= t;
      if (!(p[k] == power)) return false;
    }
  }
  return true;
}

namespace {

[[noreturn]] void violated(FormulaTag tag, const std::string& condition) {
  throw HypothesisViolated(to_string(tag) + ": hypothesis '" + condition + "' does not hold");
}

bool equimultiple(const FatPointScheme& z) {
  return std::all_of(z.items().begin(), z.items().end(), [&](const FatPoint& it) { return it.m == z.m(0); });
}

// m_1 + m_2 - 1 for the two largest multiplicities.
std::uint64_t top_pair(const FatPointScheme& z) {
  auto m = z.multiplicities();
  std::sort(m.begin(), m.end(), std::greater<>());
  return m[0] + m[1] - 1ULL;
}

bool points_match_params(const FatPointScheme& z, const std::vector<std::optional<Scalar>>& params) {
  if (params.size() != z.size()) return false;
  const Field f = z.field();
  for (std::size_t i = 0; i < z.size(); ++i) {
    std::vector<Scalar> coords;
    if (params[i]) {
      Scalar power = Scalar::one(f);
      for (std::size_t k = 0; k <= z.n(); ++k) {
        coords.push_back(power);
        power *= *params[i];
      }
    } else {
      coords.assign(z.n() + 1, Scalar::zero(f));
      coords.back() = Scalar::one(f);
    }
    if (!(ProjectivePoint(std::move(coords)) == z.point(i))) return false;
  }
  return true;
}

}  // namespace

std::uint64_t closed_form_reg(const FatPointScheme& z, const FormulaHypothesis& hyp) {
  const FormulaTag tag = hyp.tag;
  const auto points = z.points();
  const std::size_t s = z.size();
  const std::size_t n = z.n();
  const std::uint64_t sum = z.total_multiplicity();
  switch (tag) {
    case FormulaTag::davis_geramita:
      if (!is_collinear(points)) violated(tag, "points lie on a line");
      return sum - 1;

    case FormulaTag::ctv_rnc: {
      if (s < 2) violated(tag, "s >= 2");
      const bool on_curve = hyp.rnc_params ? points_match_params(z, *hyp.rnc_params) : on_standard_rnc(points);
      if (!on_curve) violated(tag, "points lie on the rational normal curve (s^n, s^{n-1}t, ..., t^n)");
      return std::max(top_pair(z), (sum + n - 2) / n);
    }

    case FormulaTag::ctv_general_position:
      if (n < 3) violated(tag, "n >= 3");
      if (s < 2 || s > n + 2) violated(tag, "2 <= s <= n+2");
      if (z.max_multiplicity() < 2) violated(tag, "m_1 >= 2");
      if (!in_linearly_general_position(points)) violated(tag, "points in linearly general position");
      return top_pair(z);

    case FormulaTag::thien_s_plus_2:
      if (s < 3 || s - 2 > n) violated(tag, "s+2 points with 1 <= s <= n");
      if (span_dim(points) < s - 2) violated(tag, "points not on an (s-1)-dimensional linear subspace");
      return segre_bound(z).T;

    case FormulaTag::ts_general_on_flat: {
      const Flat flat = hyp.flat ? *hyp.flat : flat_from_points(points);
      if (flat.n != n) violated(tag, "flat lies in the ambient space of the scheme");
      for (const auto& p : points) {
        if (!contains(flat, p)) violated(tag, "points lie on the r-dimensional subspace");
      }
      const std::size_t r = flat.dim();
      if (r < 1) violated(tag, "r >= 1");
      if (s < 2) violated(tag, "s >= 2");
      if (s > r + 3) violated(tag, "s <= r+3");
      if (!in_linearly_general_position(restrict_to_flat(z, flat).points())) {
        violated(tag, "points in linearly general position on the subspace");
      }
      std::uint64_t t1 = 0;
      for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = i + 1; j < s; ++j) t1 = std::max<std::uint64_t>(t1, z.m(i) + z.m(j) - 1ULL);
      }
      return std::max(t1, (sum + r - 2) / r);
    }

    case FormulaTag::ts_equimultiple:
      if (!equimultiple(z)) violated(tag, "equimultiple");
      if (z.m(0) == 2) violated(tag, "m != 2");
      if (s < 4 || s - 3 > n) violated(tag, "s+3 points with 1 <= s <= n");
      if (span_dim(points) < s - 3) violated(tag, "points not on an (s-1)-dimensional linear subspace");
      return segre_bound(z).T;

    case FormulaTag::equimultiple_small_s:
      if (!equimultiple(z)) violated(tag, "equimultiple");
      if (s > 5) violated(tag, "s <= 5");
      return segre_bound(z).T;

    case FormulaTag::nondegenerate_equimultiple:
      if (!equimultiple(z)) violated(tag, "equimultiple");
      if (!is_nondegenerate(points, n)) violated(tag, "non-degenerate");
      if (s > n + 3) violated(tag, "s <= n+3");
      return segre_bound(z).T;
  }
  throw InvalidInput("unknown formula tag");
}

CurveFlatCheck curve_flat_check(const FatPointScheme& z) {
  const auto flats = induced_flats(z.points());
  CurveFlatCheck out;
  out.T = segre_bound(z, flats).T;
  for (const auto& f : flats) {
    const std::size_t r = f.flat.dim();
    if (r < 1) continue;
    std::uint64_t w = 0;
    for (std::size_t i : f.incident) w += z.m(i);
    if (w < 2 || (w - 2) / r != out.T) continue;
    const FatPointScheme on_alpha = restrict_to_flat(subscheme(z, f.incident), f.flat);
    const auto pts = on_alpha.points();
    if (is_collinear(pts) || on_standard_rnc(pts)) {
      out.hypothesis_met = true;
      out.flat = SegreWitness{f.flat, f.incident, w};
      break;
    }
  }
  return out;
}

}  // namespace fatpoints
