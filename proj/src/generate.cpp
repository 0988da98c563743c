#include "fatpoints/generate.hpp"

#include <algorithm>
#include <set>

#include "fatpoints/error.hpp"
#include "fatpoints/random.hpp"
#include "fatpoints/segre.hpp"

namespace fatpoints {

std::string to_string(Family f) {
  switch (f) {
    case Family::generic: return "generic";
    case Family::nondegenerate: return "nondegenerate";
    case Family::collinear: return "collinear";
    case Family::simplex: return "simplex";
    case Family::rnc: return "rnc";
    case Family::on_flat_general_position: return "on_flat_general_position";
    case Family::two_lines: return "two_lines";
    case Family::two_lines_lifted: return "two_lines_lifted";
  }
  return "unknown";
}

std::vector<Family> all_families() {
  return {Family::generic, Family::nondegenerate,           Family::collinear, Family::simplex,
          Family::rnc,     Family::on_flat_general_position, Family::two_lines, Family::two_lines_lifted};
}

Family parse_family(const std::string& name) {
  std::string key = name;
  std::replace(key.begin(), key.end(), '-', '_');
  for (Family f : all_families()) {
    if (to_string(f) == key) return f;
  }
  throw InvalidInput("unknown family '" + name + "'");
}

bool two_lines_pattern(const std::vector<ProjectivePoint>& p) {
  if (p.size() != 6 || p[0].n() != 2) return false;
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = i + 1; j < 6; ++j) {
      if (p[i] == p[j]) return false;
    }
  }
  if (!is_collinear({p[0], p[1], p[2]})) return false;
  const Flat l1 = flat_from_points({p[0], p[1]});
  if (contains(l1, p[3]) || contains(l1, p[4])) return false;
  const Flat l2 = flat_from_points({p[3], p[4]});
  for (std::size_t i = 0; i < 3; ++i) {
    if (contains(l2, p[i])) return false;
  }
  for (std::size_t a = 0; a < 5; ++a) {
    for (std::size_t b = a + 1; b < 5; ++b) {
      if (contains(flat_from_points({p[a], p[b]}), p[5])) return false;
    }
  }
  return true;
}

namespace {

using Coords = std::vector<long long>;

struct Resolved {
  std::size_t s;
  std::size_t r;
  std::vector<unsigned> m;
};

Resolved resolve(const GenSpec& spec) {
  const std::size_t n = spec.n;
  if (n < 1) throw InvalidInput("generator needs n >= 1");
  if (spec.coord_bound < 1) throw InvalidInput("coordinate bound must be positive");
  if (spec.max_tries < 1) throw InvalidInput("max_tries must be at least 1");
  std::size_t s = spec.s;
  std::size_t r = 0;
  switch (spec.family) {
    case Family::simplex:
      if (s == 0) s = n + 1;
      if (s != n + 1) throw InvalidInput("simplex family needs s = n+1");
      break;
    case Family::two_lines:
      if (n != 2) throw InvalidInput("two_lines family needs n = 2");
      if (s == 0) s = 6;
      if (s != 6) throw InvalidInput("two_lines family needs s = 6");
      break;
    case Family::two_lines_lifted:
      if (n < 2) throw InvalidInput("two_lines_lifted family needs n >= 2");
      if (s == 0) s = n + 4;
      if (s != n + 4) throw InvalidInput("two_lines_lifted family needs s = n+4");
      break;
    case Family::nondegenerate:
      if (s < n + 1) throw InvalidInput("nondegenerate family needs s >= n+1");
      break;
    case Family::on_flat_general_position:
      r = spec.r == 0 ? std::max<std::size_t>(1, n - 1) : spec.r;
      if (r > n) throw InvalidInput("flat dimension r must satisfy 1 <= r <= n");
      break;
    default:
      break;
  }
  if (s == 0) throw InvalidInput("number of points s must be positive");
  std::vector<unsigned> m = spec.multiplicities;
  if (m.empty()) m.assign(s, spec.m);
  if (m.size() != s) throw InvalidInput("expected " + std::to_string(s) + " multiplicities, got " + std::to_string(m.size()));
  for (unsigned x : m) {
    if (x < 1) throw InvalidInput("multiplicities must be positive");
  }
  return {s, r, std::move(m)};
}

Coords random_coords(Rng& rng, std::size_t len, long long bound) {
  for (;;) {
    Coords c(len);
    for (auto& x : c) x = rng.uniform(-bound, bound);
    if (std::any_of(c.begin(), c.end(), [](long long x) { return x != 0; })) return c;
  }
}

Coords combine(long long a, const Coords& x, long long b, const Coords& y) {
  Coords out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
  return out;
}

std::optional<std::vector<ProjectivePoint>> to_points(const std::vector<Coords>& coords, const Field& f) {
  std::vector<ProjectivePoint> pts;
  for (const auto& c : coords) {
    if (std::all_of(c.begin(), c.end(), [&](long long x) { return Scalar::from_int(x, f).is_zero(); })) {
      return std::nullopt;
    }
    pts.push_back(ProjectivePoint::from_ints(c, f));
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[i] == pts[j]) return std::nullopt;
    }
  }
  return pts;
}

// Three points on X_2 = 0, two on a random second line, one more anywhere;
// the predicate weeds out the special draws.
std::vector<Coords> draw_two_lines(Rng& rng, long long bound) {
  std::vector<Coords> c;
  for (int i = 0; i < 3; ++i) {
    Coords x = random_coords(rng, 2, bound);
    x.push_back(0);
    c.push_back(x);
  }
  const Coords q1 = random_coords(rng, 3, bound);
  const Coords q2 = random_coords(rng, 3, bound);
  c.push_back(q1);
  c.push_back(combine(rng.uniform(1, 16), q1, rng.uniform(1, 16), q2));
  c.push_back(random_coords(rng, 3, bound));
  return c;
}

struct Draw {
  std::vector<ProjectivePoint> points;
  std::optional<Flat> flat;
  std::vector<long long> params;
};

std::optional<Draw> draw(const GenSpec& spec, const Resolved& res, Rng& rng) {
  const std::size_t n = spec.n;
  const std::size_t s = res.s;
  const long long bound = spec.coord_bound;
  const Field& f = spec.field;
  std::vector<Coords> coords;
  Draw out;
  switch (spec.family) {
    case Family::generic:
    case Family::nondegenerate:
      for (std::size_t i = 0; i < s; ++i) coords.push_back(random_coords(rng, n + 1, bound));
      break;
    case Family::collinear: {
      const Coords a = random_coords(rng, n + 1, bound);
      const Coords b = random_coords(rng, n + 1, bound);
      for (std::size_t i = 0; i < s; ++i) {
        long long x = 0;
        long long y = 0;
        while (x == 0 && y == 0) {
          x = rng.uniform(-16, 16);
          y = rng.uniform(-16, 16);
        }
        coords.push_back(combine(x, a, y, b));
      }
      break;
    }
    case Family::simplex:
      for (std::size_t i = 0; i <= n; ++i) {
        Coords c(n + 1, 0);
        c[i] = 1;
        coords.push_back(c);
      }
      break;
    case Family::rnc: {
      const auto span = static_cast<long long>(2 * s + 2);
      std::set<long long> used;
      while (out.params.size() < s) {
        const long long t = rng.uniform(-span, span);
        if (used.insert(t).second) out.params.push_back(t);
      }
      for (long long t : out.params) {
        std::vector<Scalar> c;
        mpz_class power = 1;
        for (std::size_t k = 0; k <= n; ++k) {
          c.push_back(Scalar::from_rational(mpq_class(power), f));
          power *= static_cast<long>(t);
        }
        out.points.emplace_back(std::move(c));
      }
      for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = i + 1; j < s; ++j) {
          if (out.points[i] == out.points[j]) return std::nullopt;
        }
      }
      return out;
    }
    case Family::on_flat_general_position: {
      const std::size_t r = res.r;
      std::vector<Coords> map(r + 1);
      for (auto& col : map) col = random_coords(rng, n + 1, bound);
      Matrix rows(r + 1, n + 1, f);
      for (std::size_t k = 0; k <= r; ++k) {
        for (std::size_t l = 0; l <= n; ++l) rows.set(k, l, Scalar::from_int(map[k][l], f));
      }
      if (rank(rows) != r + 1) return std::nullopt;
      out.flat = flat_from_rows(rows);
      for (std::size_t i = 0; i < s; ++i) {
        const Coords x = random_coords(rng, r + 1, bound);
        Coords c(n + 1, 0);
        for (std::size_t k = 0; k <= r; ++k) {
          for (std::size_t l = 0; l <= n; ++l) c[l] += x[k] * map[k][l];
        }
        coords.push_back(c);
      }
      break;
    }
    case Family::two_lines:
      coords = draw_two_lines(rng, bound);
      break;
    case Family::two_lines_lifted: {
      for (Coords c : draw_two_lines(rng, bound)) {
        c.resize(n + 1, 0);
        coords.push_back(c);
      }
      for (std::size_t i = 6; i < s; ++i) coords.push_back(random_coords(rng, n + 1, bound));
      break;
    }
  }
  auto pts = to_points(coords, f);
  if (!pts) return std::nullopt;
  out.points = std::move(*pts);
  return out;
}

std::vector<ProjectivePoint> slice(const std::vector<ProjectivePoint>& p, std::size_t from, std::size_t to) {
  return {p.begin() + static_cast<std::ptrdiff_t>(from), p.begin() + static_cast<std::ptrdiff_t>(to)};
}

}  // namespace

bool satisfies_family(const GenSpec& spec, const Generated& g) {
  const auto pts = g.scheme.points();
  const std::size_t n = g.scheme.n();
  if (n != spec.n) return false;
  switch (spec.family) {
    case Family::generic:
      return in_linearly_general_position(pts);
    case Family::nondegenerate:
      return is_nondegenerate(pts, n);
    case Family::collinear:
      return is_collinear(pts);
    case Family::simplex: {
      if (pts.size() != n + 1) return false;
      for (std::size_t i = 0; i <= n; ++i) {
        std::vector<Scalar> c(n + 1, Scalar::zero(g.scheme.field()));
        c[i] = Scalar::one(g.scheme.field());
        if (!(pts[i] == ProjectivePoint(c))) return false;
      }
      return true;
    }
    case Family::rnc: {
      const std::set<long long> distinct(g.rnc_params.begin(), g.rnc_params.end());
      return on_standard_rnc(pts) && distinct.size() == pts.size() && g.rnc_params.size() == pts.size();
    }
    case Family::on_flat_general_position: {
      if (!g.flat) return false;
      for (const auto& p : pts) {
        if (!contains(*g.flat, p)) return false;
      }
      return in_linearly_general_position(pts, g.flat->dim());
    }
    case Family::two_lines:
      return two_lines_pattern(pts);
    case Family::two_lines_lifted: {
      if (pts.size() != n + 4) return false;
      std::vector<ProjectivePoint> plane;
      for (std::size_t i = 0; i < 6; ++i) {
        std::vector<Scalar> c;
        for (std::size_t l = 0; l <= n; ++l) {
          if (l > 2 && !pts[i][l].is_zero()) return false;
          if (l <= 2) c.push_back(pts[i][l]);
        }
        plane.emplace_back(std::move(c));
      }
      const auto tail = slice(pts, 3, pts.size());
      return two_lines_pattern(plane) && in_linearly_general_position(tail, n) && span_dim(tail) == n;
    }
  }
  return false;
}

Generated generate_detailed(const GenSpec& spec) {
  const Resolved res = resolve(spec);
  for (std::size_t k = 0; k < spec.max_tries; ++k) {
    Rng rng(derive_seed(spec.seed, k));
    auto d = draw(spec, res, rng);
    if (!d) continue;
    std::vector<FatPoint> items;
    for (std::size_t i = 0; i < res.s; ++i) items.push_back({d->points[i], res.m[i]});
    Generated g{FatPointScheme(std::move(items)), k + 1, d->flat, d->params};
    if (satisfies_family(spec, g)) return g;
  }
  throw GenerationFailure("family " + to_string(spec.family) + ": no draw passed the family predicate after " +
                          std::to_string(spec.max_tries) + " tries");
}

FatPointScheme generate(const GenSpec& spec) { return generate_detailed(spec).scheme; }

Generated resample_until(const std::function<bool(const FatPointScheme&)>& pred, const GenSpec& spec,
                         std::size_t max_tries) {
  if (max_tries < 1) throw InvalidInput("max_tries must be at least 1");
  for (std::size_t k = 0; k < max_tries; ++k) {
    GenSpec attempt = spec;
    if (k > 0) attempt.seed = derive_seed(spec.seed, 0x5eed0000ULL + k);
    Generated g = generate_detailed(attempt);
    if (pred(g.scheme)) {
      g.tries = k + 1;
      return g;
    }
  }
  throw GenerationFailure("no sample satisfied the predicate after " + std::to_string(max_tries) + " tries");
}

}  // namespace fatpoints
