#pragma once

// Engel group as classes of plane paths: endpoint, signed area and the
// y-moment of the winding-number distribution.

#include <compare>
#include <string>
#include <vector>

#include "nilgrowth/exactgeo.hpp"
#include "nilgrowth/rational.hpp"

namespace nilgrowth::engel {

struct EngelElement {
  Rational x;
  Rational y;
  Rational area;    // signed area, counterclockwise positive
  Rational moment;  // integral of y against the winding number

  static EngelElement identity() { return {}; }

  friend bool operator==(const EngelElement&, const EngelElement&) = default;
  std::string str() const;
};

/// Concatenation of paths.
EngelElement mul(const EngelElement& g, const EngelElement& h);

/// Reverse path.
EngelElement inv(const EngelElement& g);

/// Mirror across the y-axis; an involutive automorphism.
EngelElement reflect(const EngelElement& g);

/// g^n for any integer n (negative powers go through inv).
EngelElement pow(const EngelElement& g, long long n);

/// [g,h] = g^-1 h^-1 g h.
EngelElement commutator(const EngelElement& g, const EngelElement& h);

/// The standard lattice generators: straight segments to (1,1) and (1,-1).
EngelElement gen_a();
EngelElement gen_b();

/// Membership in the lattice generated by gen_a() and gen_b().
bool in_lattice(const EngelElement& g);

/// Piecewise-linear path from the origin.
class Polyline {
 public:
  /// points[0] must be the origin and consecutive points must differ.
  explicit Polyline(std::vector<VecQ> points);
  const std::vector<VecQ>& points() const noexcept { return points_; }

 private:
  std::vector<VecQ> points_;
};

/// Integrates the closed polygon directly (shoelace sums), bypassing the group
/// law entirely.
EngelElement winding_oracle(const Polyline& path);

}  // namespace nilgrowth::engel
