#include "fatpoints/projective.hpp"

#include <algorithm>
#include <map>

#include "fatpoints/error.hpp"

namespace fatpoints {

ProjectivePoint::ProjectivePoint(std::vector<Scalar> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw InvalidInput("a projective point needs at least one coordinate");
  const Field f = coords_.front().field();
  for (const Scalar& c : coords_) {
    if (!(c.field() == f)) throw InvalidInput("mixed field modes in point coordinates");
  }
  const auto lead = std::find_if(coords_.begin(), coords_.end(), [](const Scalar& c) { return !c.is_zero(); });
  if (lead == coords_.end()) throw InvalidInput("the zero vector is not a projective point");
  if (!lead->is_one()) {
    const Scalar inv = lead->inverse();
    for (Scalar& c : coords_) c *= inv;
  }
}

ProjectivePoint ProjectivePoint::from_ints(const std::vector<long long>& coords, const Field& field) {
  std::vector<Scalar> v;
  v.reserve(coords.size());
  for (long long c : coords) v.push_back(Scalar::from_int(c, field));
  return ProjectivePoint(std::move(v));
}

std::string ProjectivePoint::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i > 0) s += ", ";
    s += coords_[i].to_string();
  }
  return s + ")";
}

Matrix coordinate_matrix(const std::vector<ProjectivePoint>& points) {
  if (points.empty()) throw InvalidInput("empty point list");
  const std::size_t n = points.front().n();
  std::vector<std::vector<Scalar>> rows;
  rows.reserve(points.size());
  for (const auto& p : points) {
    if (p.n() != n) throw InvalidInput("points live in different ambient dimensions");
    rows.push_back(p.coords());
  }
  return Matrix::from_rows(rows, points.front().field());
}

std::size_t span_dim(const std::vector<ProjectivePoint>& points) {
  return rank(coordinate_matrix(points)) - 1;
}

Flat flat_from_rows(const Matrix& rows) {
  Matrix basis = rref(rows);
  if (basis.rows() == 0) throw InvalidInput("a flat needs a nonzero spanning vector");
  return Flat{rows.cols() - 1, std::move(basis)};
}

Flat flat_from_points(const std::vector<ProjectivePoint>& points) {
  return flat_from_rows(coordinate_matrix(points));
}

Flat ambient_flat(std::size_t n, const Field& field) { return Flat{n, Matrix::identity(n + 1, field)}; }

bool contains(const Flat& f, const ProjectivePoint& p) {
  if (p.n() != f.n) throw InvalidInput("point and flat live in different ambient dimensions");
  if (f.dim() == f.n) return true;
  std::vector<std::vector<Scalar>> rows;
  for (std::size_t i = 0; i < f.basis.rows(); ++i) rows.push_back(f.basis.row(i));
  rows.push_back(p.coords());
  return rank(Matrix::from_rows(rows, f.basis.field())) == f.basis.rows();
}

bool flat_less(const Flat& a, const Flat& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  for (std::size_t i = 0; i < a.basis.rows(); ++i) {
    for (std::size_t j = 0; j < a.basis.cols(); ++j) {
      const int c = Scalar::compare(a.basis.at(i, j), b.basis.at(i, j));
      if (c != 0) return c < 0;
    }
  }
  return false;
}

std::string flat_key(const Flat& f) {
  std::string key;
  for (std::size_t i = 0; i < f.basis.rows(); ++i) {
    for (std::size_t j = 0; j < f.basis.cols(); ++j) {
      key += f.basis.at(i, j).to_string();
      key += ',';
    }
    key += ';';
  }
  return key;
}

void require_distinct(const std::vector<ProjectivePoint>& points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].n() != points.front().n()) throw InvalidInput("points live in different ambient dimensions");
    for (std::size_t j = 0; j < i; ++j) {
      if (points[i] == points[j]) {
        throw InvalidInput("duplicate point " + points[i].to_string() + " at positions " +
                           std::to_string(j) + " and " + std::to_string(i));
      }
    }
  }
}

namespace {

// Calls visit(subset) for every subset of {0..s-1} with 1 <= size <= max_size.
template <class Visit>
void for_each_subset(std::size_t s, std::size_t max_size, Visit&& visit) {
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t next) -> void {
    if (!cur.empty()) visit(cur);
    if (cur.size() == max_size) return;
    for (std::size_t i = next; i < s; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

std::vector<ProjectivePoint> pick(const std::vector<ProjectivePoint>& points, const std::vector<std::size_t>& idx) {
  std::vector<ProjectivePoint> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(points[i]);
  return out;
}

}  // namespace

std::vector<InducedFlat> induced_flats(const std::vector<ProjectivePoint>& points) {
  if (points.empty()) return {};
  require_distinct(points);
  const std::size_t n = points.front().n();
  std::map<std::string, Flat> found;
  for_each_subset(points.size(), n + 1, [&](const std::vector<std::size_t>& subset) {
    const Matrix coords = coordinate_matrix(pick(points, subset));
    if (rank(coords) != subset.size()) return;
    Flat f = flat_from_rows(coords);
    found.try_emplace(flat_key(f), std::move(f));
  });
  std::vector<InducedFlat> out;
  out.reserve(found.size());
  for (auto& [key, flat] : found) {
    InducedFlat item{std::move(flat), {}};
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (contains(item.flat, points[i])) item.incident.push_back(i);
    }
    out.push_back(std::move(item));
  }
  std::sort(out.begin(), out.end(), [](const InducedFlat& a, const InducedFlat& b) { return flat_less(a.flat, b.flat); });
  return out;
}

bool is_collinear(const std::vector<ProjectivePoint>& points) { return span_dim(points) <= 1; }

bool is_nondegenerate(const std::vector<ProjectivePoint>& points, std::size_t n) {
  return span_dim(points) == n;
}

bool in_linearly_general_position(const std::vector<ProjectivePoint>& points) {
  if (points.empty()) return true;
  return in_linearly_general_position(points, points.front().n());
}

bool in_linearly_general_position(const std::vector<ProjectivePoint>& points, std::size_t r) {
  require_distinct(points);
  const std::size_t size = std::min(points.size(), r + 1);
  bool ok = true;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t next) -> void {
    if (!ok) return;
    if (cur.size() == size) {
      if (rank(coordinate_matrix(pick(points, cur))) != size) ok = false;
      return;
    }
    for (std::size_t i = next; i + (size - cur.size()) <= points.size(); ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return ok;
}

ProjectivePoint apply(const Matrix& g, const ProjectivePoint& p) {
  if (g.cols() != p.coords().size()) throw InvalidInput("transformation has the wrong number of columns");
  std::vector<Scalar> out;
  out.reserve(g.rows());
  for (std::size_t i = 0; i < g.rows(); ++i) {
    Scalar acc = Scalar::zero(p.field());
    for (std::size_t j = 0; j < g.cols(); ++j) acc += g.at(i, j) * p[j];
    out.push_back(std::move(acc));
  }
  return ProjectivePoint(std::move(out));
}

}  // namespace fatpoints
