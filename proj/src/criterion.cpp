#include "nilgrowth/criterion.hpp"

#include <algorithm>

#include "nilgrowth/error.hpp"

namespace nilgrowth::criterion {
namespace {

PolytopeQ polytope_of(const zoo::GroupDescriptor& desc, const words::GenSet& gens) {
  auto pts = orbit_points(desc, build_A(desc, gens));
  return convex_hull(pts, desc.ab_dim());
}

nlohmann::ordered_json vec_json(const VecQ& v) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : v.coords()) arr.push_back(c.str());
  return arr;
}

nlohmann::ordered_json facet_json(const Facet& f) {
  return {{"normal", vec_json(f.normal)}, {"offset", f.offset.str()}};
}

}  // namespace

const char* verdict_name(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Exponential: return "exponential";
    case VerdictKind::Polynomial: return "polynomial";
    case VerdictKind::SubExponential: return "sub-exponential";
    case VerdictKind::Degenerate: return "degenerate";
  }
  return "?";
}

std::vector<CycleDatum> build_A(const zoo::GroupDescriptor& desc, const words::GenSet& gens) {
  auto graph = schreier::build_graph(desc, gens);
  std::vector<CycleDatum> out;
  for (auto& u : schreier::simple_cycles(graph, gens)) {
    auto element = words::evaluate(u, gens, desc);
    long long len = u.length();
    VecQ point = desc.pi_ab(element) * Rational(1, len);
    out.push_back({std::move(u), std::move(point), std::move(element), len});
  }
  return out;
}

std::vector<VecQ> orbit_points(const zoo::GroupDescriptor& desc, const std::vector<CycleDatum>& a) {
  std::vector<VecQ> pts;
  for (std::size_t f = 0; f < desc.finite().order(); ++f)
    for (const auto& d : a) pts.push_back(desc.act_point(f, d.point));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

CriterionReport classify(const zoo::GroupDescriptor& desc, const words::GenSet& gens) {
  CriterionReport r;
  r.group = desc.name();
  r.a = build_A(desc, gens);
  r.orbit_points = orbit_points(desc, r.a);
  r.verdict.s = desc.class_s();
  if (r.orbit_points.empty()) {
    r.degenerate_affine_dim = 0;
    return r;
  }
  try {
    r.polytope = convex_hull(r.orbit_points, desc.ab_dim());
  } catch (const DegeneratePolytope& e) {
    r.degenerate_affine_dim = e.affine_dim();
    return r;
  }
  for (const auto& f : r.polytope->facets()) {
    FacetIncidence inc{f, {}};
    for (std::size_t i = 0; i < r.a.size(); ++i)
      if (f.contains(r.a[i].point)) inc.members.push_back(i);
    r.incidence.push_back(std::move(inc));
  }
  for (const auto& inc : r.incidence) {
    if (inc.members.size() >= 2) {
      r.verdict.kind = VerdictKind::Exponential;
      r.verdict.witness = std::make_pair(inc.members[0], inc.members[1]);
      r.verdict.witness_facet = inc.facet;
      return r;
    }
  }
  if (desc.class_s() <= 2) {
    r.verdict.kind = VerdictKind::Polynomial;
  } else {
    r.verdict.kind = VerdictKind::SubExponential;
    r.verdict.alpha = alpha(desc.class_s());
  }
  return r;
}

Rational alpha(int s) {
  if (s < 2) throw Error(ErrorCode::InvalidParams, "alpha is defined for s >= 2");
  Rational a = 0;
  for (int k = 3; k <= s; ++k) {
    Rational inv_k(1, k);
    a = (Rational(1) - a * inv_k) / (Rational(2) - a - inv_k);
  }
  return a;
}

Rational delta(int s) {
  if (s < 1) throw Error(ErrorCode::InvalidParams, "delta is defined for s >= 1");
  return s <= 2 ? Rational(1) : Rational(1, s);
}

VecQ xletter_point(const schreier::XLetter& x, const zoo::GroupDescriptor& desc) {
  return desc.pi_ab(x.element) * Rational(1, x.cost);
}

long long costly_count(const std::vector<schreier::XBlock>& blocks, const PolytopeQ& polytope,
                       const zoo::GroupDescriptor& desc) {
  long long n = 0;
  std::vector<VecQ> points;
  for (const auto& b : blocks) {
    VecQ p = xletter_point(b.letter, desc);
    if (!polytope.contains(p))
      throw Error(ErrorCode::PointOutside, "X-letter point " + p.str() + " outside P; the polytope is inconsistent");
    // An interior point is costly on its own and lies on no proper face, so
    // every pair x x inside the block is costly as well.
    if (polytope.interior(p)) n += 2 * b.exponent - 1;
    points.push_back(std::move(p));
  }
  for (std::size_t i = 0; i + 1 < points.size(); ++i)
    if (!on_common_face(polytope, points[i], points[i + 1])) ++n;
  return n;
}

KBoundChecker::KBoundChecker(const zoo::GroupDescriptor& desc, const words::GenSet& gens)
    : desc_(desc), gens_(gens), graph_(schreier::build_graph(desc, gens)), polytope_(polytope_of(desc, gens)) {}

KBoundResult KBoundChecker::check(const words::Word& w) const {
  KBoundResult r;
  r.blocks = schreier::merge_blocks(schreier::loop_erase(w, graph_, gens_, desc_));
  r.k = static_cast<long long>(r.blocks.size());
  r.n = costly_count(r.blocks, polytope_, desc_);
  r.ok = r.k <= r.n * static_cast<long long>(desc_.index()) + 1;
  return r;
}

KBoundResult k_bound_check(const words::Word& w, const zoo::GroupDescriptor& desc, const words::GenSet& gens) {
  return KBoundChecker(desc, gens).check(w);
}

std::string verdict_summary(const Verdict& v) {
  std::string s = verdict_name(v.kind);
  if (v.kind == VerdictKind::Degenerate) return s;
  s += ", s=" + std::to_string(v.s);
  if (v.alpha) s += ", alpha=" + v.alpha->str();
  return s;
}

nlohmann::ordered_json to_json(const CriterionReport& report, const words::GenSet& gens) {
  nlohmann::ordered_json j;
  j["group"] = report.group;
  auto a = nlohmann::ordered_json::array();
  for (const auto& d : report.a)
    a.push_back({{"word", words::format_word(d.word, gens)}, {"point", vec_json(d.point)}, {"len", d.length}});
  j["a_multiset"] = a;
  auto orbit = nlohmann::ordered_json::array();
  for (const auto& p : report.orbit_points) orbit.push_back(vec_json(p));
  j["orbit_points"] = orbit;
  if (report.polytope) {
    auto verts = nlohmann::ordered_json::array();
    for (const auto& v : report.polytope->vertices()) verts.push_back(vec_json(v));
    auto facets = nlohmann::ordered_json::array();
    for (const auto& f : report.polytope->facets()) facets.push_back(facet_json(f));
    j["polytope"] = {{"vertices", verts}, {"facets", facets}};
  } else {
    j["polytope"] = nullptr;
  }
  auto inc = nlohmann::ordered_json::array();
  for (const auto& fi : report.incidence) inc.push_back({{"facet", facet_json(fi.facet)}, {"members", fi.members}});
  j["incidence"] = inc;
  nlohmann::ordered_json v;
  v["kind"] = verdict_name(report.verdict.kind);
  v["s"] = report.verdict.s;
  if (report.verdict.alpha) v["alpha"] = report.verdict.alpha->str();
  if (report.verdict.witness) {
    auto [i, k] = *report.verdict.witness;
    v["witness"] = {{"cycles", {i, k}},
                    {"words", {words::format_word(report.a[i].word, gens), words::format_word(report.a[k].word, gens)}},
                    {"facet", facet_json(*report.verdict.witness_facet)}};
  }
  j["verdict"] = v;
  if (report.degenerate_affine_dim) j["degenerate"] = {{"affine_dim", *report.degenerate_affine_dim}};
  return j;
}

}  // namespace nilgrowth::criterion
