#pragma once

// Exact rational linear algebra and polytope machinery.

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nilgrowth/rational.hpp"

namespace nilgrowth {

/// Fixed-dimension rational vector.
class VecQ {
 public:
  VecQ() = default;
  explicit VecQ(std::size_t dim) : coords_(dim) {}
  explicit VecQ(std::vector<Rational> coords) : coords_(std::move(coords)) {}
  VecQ(std::initializer_list<Rational> coords) : coords_(coords) {}

  std::size_t dim() const noexcept { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  Rational& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Rational>& coords() const noexcept { return coords_; }

  bool is_zero() const;

  VecQ& operator+=(const VecQ& o);
  VecQ& operator-=(const VecQ& o);
  VecQ& operator*=(const Rational& s);
  friend VecQ operator+(VecQ a, const VecQ& b) { return a += b; }
  friend VecQ operator-(VecQ a, const VecQ& b) { return a -= b; }
  friend VecQ operator*(VecQ a, const Rational& s) { return a *= s; }
  friend VecQ operator*(const Rational& s, VecQ a) { return a *= s; }
  VecQ operator-() const;

  friend bool operator==(const VecQ&, const VecQ&) = default;
  friend std::strong_ordering operator<=>(const VecQ& a, const VecQ& b) {
    return a.coords_ <=> b.coords_;
  }

  /// "(p1, p2, ...)" with rationals as "p/q".
  std::string str() const;

 private:
  std::vector<Rational> coords_;
};

Rational dot(const VecQ& a, const VecQ& b);

/// Rank of a list of equal-dimension vectors.
std::size_t rank(std::span<const VecQ> rows);

/// Dimension of the affine hull of a nonempty point set.
std::size_t affine_dimension(std::span<const VecQ> points);

/// Halfspace <normal, x> <= offset, scaled so the first nonzero coordinate of
/// the normal is +1 or -1.
struct Facet {
  VecQ normal;
  Rational offset;

  Rational slack(const VecQ& p) const { return offset - dot(normal, p); }
  bool contains(const VecQ& p) const { return dot(normal, p) == offset; }

  friend bool operator==(const Facet&, const Facet&) = default;
  friend std::strong_ordering operator<=>(const Facet& a, const Facet& b) {
    if (auto c = a.normal <=> b.normal; c != 0) return c;
    return a.offset <=> b.offset;
  }
};

/// Full-dimensional convex polytope with both representations. Vertices and
/// facets are kept sorted, so two hulls of the same point set compare equal.
class PolytopeQ {
 public:
  PolytopeQ(std::size_t dim, std::vector<VecQ> vertices, std::vector<Facet> facets);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<VecQ>& vertices() const noexcept { return vertices_; }
  const std::vector<Facet>& facets() const noexcept { return facets_; }

  bool contains(const VecQ& p) const;
  bool interior(const VecQ& p) const;

  friend bool operator==(const PolytopeQ&, const PolytopeQ&) = default;

 private:
  std::size_t dim_;
  std::vector<VecQ> vertices_;
  std::vector<Facet> facets_;
};

/// Exact convex hull. Throws DegeneratePolytope when the affine hull of the
/// points is lower-dimensional.
PolytopeQ convex_hull(std::span<const VecQ> points, std::size_t dim);

/// Value of a gauge function; infinite when the ray leaves through a facet
/// passing through the origin.
class GaugeValue {
 public:
  static GaugeValue finite(Rational v) { return GaugeValue(std::move(v)); }
  static GaugeValue infinite() { return GaugeValue(); }

  bool is_infinite() const noexcept { return !value_.has_value(); }
  const Rational& value() const { return value_.value(); }
  std::string str() const { return value_ ? value_->str() : "inf"; }

  friend bool operator==(const GaugeValue&, const GaugeValue&) = default;

 private:
  GaugeValue() = default;
  explicit GaugeValue(Rational v) : value_(std::move(v)) {}
  std::optional<Rational> value_;
};

/// min { lambda >= 0 : v in lambda * P }. Throws OriginOutside if 0 is not in P.
GaugeValue minkowski_norm(const PolytopeQ& polytope, const VecQ& v);

/// Facets whose supporting hyperplane passes through p. Throws PointOutside.
std::vector<Facet> facets_containing(const PolytopeQ& polytope, const VecQ& p);

/// Whether some proper face contains both points. Every proper face lies in a
/// facet, so this is decided on facets. Throws PointOutside.
bool on_common_face(const PolytopeQ& polytope, const VecQ& p, const VecQ& q);

}  // namespace nilgrowth
