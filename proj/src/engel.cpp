#include "nilgrowth/engel.hpp"

#include <stdexcept>

#include "nilgrowth/error.hpp"

namespace nilgrowth::engel {

std::string EngelElement::str() const {
  return "(" + x.str() + ", " + y.str() + ", " + area.str() + ", " + moment.str() + ")";
}

EngelElement mul(const EngelElement& g, const EngelElement& h) {
  // Signed area of the triangle (0, g, g+h).
  Rational tri = Rational(1, 2) * (g.x * h.y - g.y * h.x);
  EngelElement r;
  r.x = g.x + h.x;
  r.y = g.y + h.y;
  r.area = g.area + h.area + tri;
  r.moment = g.moment + h.moment + g.y * h.area + Rational(1, 3) * (Rational(2) * g.y + h.y) * tri;
  return r;
}

EngelElement inv(const EngelElement& g) {
  return {-g.x, -g.y, -g.area, g.y * g.area - g.moment};
}

EngelElement reflect(const EngelElement& g) { return {-g.x, g.y, -g.area, -g.moment}; }

EngelElement pow(const EngelElement& g, long long n) {
  EngelElement base = n < 0 ? inv(g) : g;
  unsigned long long e = n < 0 ? 0ULL - static_cast<unsigned long long>(n) : static_cast<unsigned long long>(n);
  EngelElement acc;
  while (e) {
    if (e & 1) acc = mul(acc, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return acc;
}

EngelElement commutator(const EngelElement& g, const EngelElement& h) {
  return mul(mul(inv(g), inv(h)), mul(g, h));
}

EngelElement gen_a() { return {1, 1, 0, 0}; }
EngelElement gen_b() { return {1, -1, 0, 0}; }

bool in_lattice(const EngelElement& g) {
  if (!g.x.is_integer() || !g.y.is_integer()) return false;
  BigInt sum = g.x.numerator() + g.y.numerator();
  if (sum % 2 != 0) return false;
  BigInt i = sum / 2, j = g.x.numerator() - i;
  if (!i.fits_slong_p() || !j.fits_slong_p()) return false;
  // Strip the horizontal part, then the area part (powers of [a,b], area -2);
  // what remains is central and must be an even multiple of the unit moment.
  auto h = mul(inv(mul(pow(gen_a(), i.get_si()), pow(gen_b(), j.get_si()))), g);
  if (!h.area.is_integer() || h.area.numerator() % 2 != 0) return false;
  auto c = commutator(gen_a(), gen_b());
  BigInt k = h.area.numerator() / 2;
  auto r = mul(h, pow(c, k.get_si()));
  return r.moment.is_integer() && r.moment.numerator() % 2 == 0;
}

Polyline::Polyline(std::vector<VecQ> points) : points_(std::move(points)) {
  if (points_.empty() || points_[0] != VecQ{0, 0})
    throw Error(ErrorCode::InvalidParams, "polyline must start at the origin");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].dim() != 2) throw Error(ErrorCode::DimensionMismatch, "polyline points must be planar");
    if (i > 0 && points_[i] == points_[i - 1])
      throw Error(ErrorCode::InvalidParams, "polyline has repeated consecutive points");
  }
}

EngelElement winding_oracle(const Polyline& path) {
  const auto& pts = path.points();
  Rational twice_area, six_moment;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const VecQ& p = pts[i];
    const VecQ& q = pts[(i + 1) % pts.size()];  // closing segment back to the origin
    Rational cross = p[0] * q[1] - q[0] * p[1];
    twice_area += cross;
    six_moment += (p[1] + q[1]) * cross;
  }
  return {pts.back()[0], pts.back()[1], twice_area / 2, six_moment / 6};
}

}  // namespace nilgrowth::engel
