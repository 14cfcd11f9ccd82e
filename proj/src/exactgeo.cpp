#include "nilgrowth/exactgeo.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "nilgrowth/error.hpp"

namespace nilgrowth {
namespace {

void require_same_dim(const VecQ& a, const VecQ& b) {
  if (a.dim() != b.dim())
    throw Error(ErrorCode::DimensionMismatch,
                "vector dimensions differ: " + std::to_string(a.dim()) + " vs " +
                    std::to_string(b.dim()));
}

// Row-reduces in place; returns pivot columns.
std::vector<std::size_t> row_reduce(std::vector<std::vector<Rational>>& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col].is_zero()) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    Rational inv = Rational(1) / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      Rational f = m[r][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

// Normal of the hyperplane through the given dim points, if they are affinely
// independent.
std::optional<VecQ> hyperplane_normal(const std::vector<const VecQ*>& pts, std::size_t dim) {
  std::vector<std::vector<Rational>> m;
  for (std::size_t i = 1; i < pts.size(); ++i) m.push_back((*pts[i] - *pts[0]).coords());
  auto pivots = row_reduce(m, dim);
  if (pivots.size() != dim - 1) return std::nullopt;
  std::size_t free_col = 0;
  for (std::size_t c = 0, p = 0; c < dim; ++c) {
    if (p < pivots.size() && pivots[p] == c) {
      ++p;
    } else {
      free_col = c;
      break;
    }
  }
  VecQ normal(dim);
  normal[free_col] = 1;
  for (std::size_t r = 0; r < pivots.size(); ++r) normal[pivots[r]] = -m[r][free_col];
  return normal;
}

Facet canonical_facet(VecQ normal, Rational offset) {
  for (std::size_t i = 0; i < normal.dim(); ++i) {
    if (!normal[i].is_zero()) {
      Rational s = Rational(1) / abs(normal[i]);
      normal *= s;
      offset *= s;
      break;
    }
  }
  return Facet{std::move(normal), std::move(offset)};
}

// All facets of conv(points) by enumerating dim-subsets; points must span.
std::vector<Facet> enumerate_facets(const std::vector<VecQ>& points, std::size_t dim) {
  std::set<Facet> found;
  const std::size_t n = points.size();
  std::vector<std::size_t> idx(dim);
  for (std::size_t i = 0; i < dim; ++i) idx[i] = i;
  if (n < dim) return {};
  while (true) {
    std::vector<const VecQ*> sel;
    for (auto i : idx) sel.push_back(&points[i]);
    if (auto normal = hyperplane_normal(sel, dim)) {
      Rational offset = dot(*normal, *sel[0]);
      bool above = false, below = false;
      for (const auto& p : points) {
        int s = (dot(*normal, p) - offset).sign();
        above |= s > 0;
        below |= s < 0;
      }
      if (!(above && below)) {
        if (above) {
          *normal = -*normal;
          offset = -offset;
        }
        found.insert(canonical_facet(std::move(*normal), std::move(offset)));
      }
    }
    // next combination
    std::size_t k = dim;
    while (k > 0 && idx[k - 1] == n - dim + (k - 1)) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t j = k; j < dim; ++j) idx[j] = idx[j - 1] + 1;
  }
  return {found.begin(), found.end()};
}

bool satisfies_all(const std::vector<Facet>& facets, const VecQ& p) {
  return std::all_of(facets.begin(), facets.end(),
                     [&](const Facet& f) { return f.slack(p).sign() >= 0; });
}

bool is_vertex(const std::vector<Facet>& facets, const VecQ& p, std::size_t dim) {
  std::vector<VecQ> normals;
  for (const auto& f : facets)
    if (f.contains(p)) normals.push_back(f.normal);
  return rank(normals) == dim;
}

}  // namespace

bool VecQ::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& r) { return r.is_zero(); });
}

VecQ& VecQ::operator+=(const VecQ& o) {
  require_same_dim(*this, o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

VecQ& VecQ::operator-=(const VecQ& o) {
  require_same_dim(*this, o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

VecQ& VecQ::operator*=(const Rational& s) {
  for (auto& c : coords_) c *= s;
  return *this;
}

VecQ VecQ::operator-() const {
  VecQ r(*this);
  for (auto& c : r.coords_) c = -c;
  return r;
}

std::string VecQ::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? ", " : "") << coords_[i];
  os << ')';
  return os.str();
}

Rational dot(const VecQ& a, const VecQ& b) {
  require_same_dim(a, b);
  Rational s;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

std::size_t rank(std::span<const VecQ> rows) {
  if (rows.empty()) return 0;
  std::vector<std::vector<Rational>> m;
  for (const auto& r : rows) m.push_back(r.coords());
  return row_reduce(m, rows[0].dim()).size();
}

std::size_t affine_dimension(std::span<const VecQ> points) {
  std::vector<VecQ> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
  return rank(diffs);
}

PolytopeQ::PolytopeQ(std::size_t dim, std::vector<VecQ> vertices, std::vector<Facet> facets)
    : dim_(dim), vertices_(std::move(vertices)), facets_(std::move(facets)) {
  std::sort(vertices_.begin(), vertices_.end());
  std::sort(facets_.begin(), facets_.end());
}

bool PolytopeQ::contains(const VecQ& p) const { return satisfies_all(facets_, p); }

bool PolytopeQ::interior(const VecQ& p) const {
  return std::all_of(facets_.begin(), facets_.end(),
                     [&](const Facet& f) { return f.slack(p).sign() > 0; });
}

PolytopeQ convex_hull(std::span<const VecQ> points, std::size_t dim) {
  if (dim == 0) throw Error(ErrorCode::InvalidParams, "convex_hull: dimension must be positive");
  if (points.empty()) throw Error(ErrorCode::InvalidParams, "convex_hull: no points");
  for (const auto& p : points)
    if (p.dim() != dim)
      throw Error(ErrorCode::DimensionMismatch, "convex_hull: point " + p.str() +
                                                    " does not have dimension " + std::to_string(dim));

  std::vector<VecQ> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  if (auto ad = affine_dimension(pts); ad < dim) throw DegeneratePolytope(ad, dim);

  // Seed with an affinely independent simplex.
  std::vector<VecQ> verts{pts[0]};
  std::vector<bool> used(pts.size(), false);
  used[0] = true;
  for (std::size_t i = 1; i < pts.size() && verts.size() < dim + 1; ++i) {
    verts.push_back(pts[i]);
    if (affine_dimension(verts) == verts.size() - 1) {
      used[i] = true;
    } else {
      verts.pop_back();
    }
  }
  auto facets = enumerate_facets(verts, dim);

  // Insert the rest, recomputing all facets whenever the hull grows.
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (used[i] || satisfies_all(facets, pts[i])) continue;
    verts.push_back(pts[i]);
    facets = enumerate_facets(verts, dim);
    std::erase_if(verts, [&](const VecQ& v) { return !is_vertex(facets, v, dim); });
  }
  return PolytopeQ(dim, std::move(verts), std::move(facets));
}

GaugeValue minkowski_norm(const PolytopeQ& polytope, const VecQ& v) {
  if (v.dim() != polytope.dim())
    throw Error(ErrorCode::DimensionMismatch, "minkowski_norm: dimension mismatch");
  for (const auto& f : polytope.facets())
    if (f.offset.sign() < 0) throw Error(ErrorCode::OriginOutside, "minkowski_norm: origin outside polytope");
  Rational best;
  for (const auto& f : polytope.facets()) {
    Rational h = dot(f.normal, v);
    if (f.offset.is_zero()) {
      if (h.sign() > 0) return GaugeValue::infinite();
      continue;
    }
    Rational ratio = h / f.offset;
    if (ratio > best) best = ratio;
  }
  return GaugeValue::finite(best);
}

std::vector<Facet> facets_containing(const PolytopeQ& polytope, const VecQ& p) {
  if (p.dim() != polytope.dim())
    throw Error(ErrorCode::DimensionMismatch, "facets_containing: dimension mismatch");
  if (!polytope.contains(p))
    throw Error(ErrorCode::PointOutside, "point " + p.str() + " lies outside the polytope");
  std::vector<Facet> out;
  for (const auto& f : polytope.facets())
    if (f.contains(p)) out.push_back(f);
  return out;
}

bool on_common_face(const PolytopeQ& polytope, const VecQ& p, const VecQ& q) {
  auto fp = facets_containing(polytope, p);
  auto fq = facets_containing(polytope, q);
  return std::any_of(fp.begin(), fp.end(), [&](const Facet& f) {
    return std::find(fq.begin(), fq.end(), f) != fq.end();
  });
}

}  // namespace nilgrowth
