#include <doctest.h>

#include <algorithm>
#include <random>

#include "nilgrowth/criterion.hpp"
#include "nilgrowth/error.hpp"
#include "oracles.hpp"

using namespace nilgrowth;
using namespace nilgrowth::criterion;
using words::GenSet;
using words::parse_word;

namespace {

std::vector<VecQ> square() { return {{-1, -1}, {-1, 1}, {1, -1}, {1, 1}}; }

schreier::XLetter xl(const std::string& t, const std::string& u, const GenSet& g, const zoo::GroupDescriptor& d) {
  return schreier::make_xletter(parse_word(t, g), parse_word(u, g), g, d);
}

zoo::IntMatrix matmul(const zoo::IntMatrix& a, const zoo::IntMatrix& b) {
  zoo::IntMatrix c(a.size(), std::vector<long long>(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b[0].size(); ++j)
      for (std::size_t k = 0; k < b.size(); ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// The same abstract group with pi and the action rewritten in a new lattice basis.
zoo::GroupDescriptor rebased(const zoo::GroupDescriptor& d, const zoo::IntMatrix& m, const zoo::IntMatrix& m_inv) {
  std::vector<zoo::IntMatrix> action;
  for (std::size_t f = 0; f < d.index(); ++f) action.push_back(matmul(matmul(m, d.action(f)), m_inv));
  std::vector<zoo::NamedElement> letters;
  for (const auto& l : d.letters()) {
    const auto& v = std::get<VecQ>(l.element.base);
    VecQ w(v.dim());
    for (std::size_t i = 0; i < v.dim(); ++i)
      for (std::size_t k = 0; k < v.dim(); ++k) w[i] += Rational(m[i][k]) * v[k];
    letters.push_back({l.name, {w, l.element.coset}});
  }
  return zoo::GroupDescriptor(d.name() + "'", d.family(), d.ab_dim(), d.class_s(), d.lcs_ranks(), d.finite(),
                              action, letters);
}

std::vector<std::size_t> incidence_sizes(const CriterionReport& r) {
  std::vector<std::size_t> out;
  for (const auto& inc : r.incidence) out.push_back(inc.members.size());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("vE fixture") {
  const auto& ve = zoo::registry("vE");
  auto g = GenSet::standard(ve);
  auto r = classify(ve, g);
  REQUIRE(r.a.size() == 3);
  std::vector<std::pair<std::string, VecQ>> a;
  for (const auto& d : r.a) a.emplace_back(words::format_word(d.word, g), d.point);
  std::sort(a.begin(), a.end());
  CHECK(a == std::vector<std::pair<std::string, VecQ>>{{"a", {1, 1}}, {"a^-1", {-1, -1}}, {"t^2", {0, 0}}});
  REQUIRE(r.polytope);
  CHECK(r.polytope->vertices() == square());
  CHECK(r.polytope->facets().size() == 4);
  for (const auto& inc : r.incidence) CHECK(inc.members.size() == 1);
  CHECK(r.verdict.kind == VerdictKind::SubExponential);
  CHECK(r.verdict.s == 3);
  CHECK(r.verdict.alpha == Rational(3, 5));
  CHECK(verdict_summary(r.verdict) == "sub-exponential, s=3, alpha=3/5");
}

TEST_CASE("G2rot, Z2 and vH fixtures") {
  {
    const auto& d = zoo::registry("G2rot");
    auto g = GenSet::standard(d);
    auto r = classify(d, g);
    CHECK(r.a.size() == 4);
    REQUIRE(r.polytope);
    CHECK(r.polytope->vertices() ==
          std::vector<VecQ>{{-1, -1}, {-1, 0}, {0, -1}, {0, 1}, {1, 0}, {1, 1}});
    CHECK(r.polytope->facets().size() == 6);
    CHECK(incidence_sizes(r) == std::vector<std::size_t>(6, 1));
    CHECK(r.verdict.kind == VerdictKind::Polynomial);
    CHECK(r.verdict.s == 1);
  }
  {
    const auto& d = zoo::registry("Z2");
    auto g = GenSet::standard(d);
    auto r = classify(d, g);
    CHECK(r.verdict.kind == VerdictKind::Exponential);
    REQUIRE(r.verdict.witness);
    REQUIRE(r.verdict.witness_facet);
    auto [i, k] = *r.verdict.witness;
    CHECK(i != k);
    CHECK(r.verdict.witness_facet->contains(r.a[i].point));
    CHECK(r.verdict.witness_facet->contains(r.a[k].point));
    auto j = to_json(r, g);
    CHECK(j["verdict"]["kind"] == "exponential");
    CHECK(j["verdict"]["witness"]["words"].size() == 2);
  }
  {
    const auto& d = zoo::registry("vH");
    auto r = classify(d, GenSet::standard(d));
    REQUIRE(r.polytope);
    CHECK(r.polytope->vertices() == std::vector<VecQ>{{-1, 0}, {0, -1}, {0, 1}, {1, 0}});
    CHECK(r.verdict.kind == VerdictKind::Polynomial);
    CHECK(r.verdict.s == 2);
  }
}

TEST_CASE("degenerate polytope is reported, not thrown") {
  const auto& d = zoo::registry("Z2");
  auto g = GenSet::standard(d);
  GenSet line({g[0], g[1]});
  auto r = classify(d, line);
  CHECK(r.verdict.kind == VerdictKind::Degenerate);
  CHECK(r.degenerate_affine_dim == 1);
  CHECK(!r.polytope);
  auto j = to_json(r, line);
  CHECK(j["degenerate"]["affine_dim"] == 1);
}

TEST_CASE("JSON shape") {
  const auto& ve = zoo::registry("vE");
  auto g = GenSet::standard(ve);
  auto j = to_json(classify(ve, g), g);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"group", "a_multiset", "orbit_points", "polytope", "incidence", "verdict"});
  CHECK(j["a_multiset"][0].contains("word"));
  CHECK(j["a_multiset"][0].contains("point"));
  CHECK(j["a_multiset"][0].contains("len"));
  CHECK(j["verdict"]["alpha"] == "3/5");
  CHECK(j["polytope"]["facets"].size() == 4);
}

TEST_CASE("alpha and delta") {
  CHECK(alpha(2) == 0);
  CHECK(alpha(3) == Rational(3, 5));
  CHECK(alpha(4) == Rational(17, 23));
  for (int s = 2; s <= 20; ++s) {
    CHECK(alpha(s) >= 0);
    CHECK(alpha(s) < 1);
    CHECK(alpha(s) < alpha(s + 1));
  }
  CHECK(delta(1) == 1);
  CHECK(delta(2) == 1);
  CHECK(delta(5) == Rational(1, 5));
  CHECK_THROWS_AS(alpha(1), Error);
}

TEST_CASE("costly_count examples") {
  const auto& ve = zoo::registry("vE");
  auto g = GenSet::standard(ve);
  auto p = convex_hull(square(), 2);
  CHECK(costly_count({{xl("", "a", g, ve), 1}, {xl("t", "a", g, ve), 1}}, p, ve) == 0);
  CHECK(costly_count({{xl("", "a", g, ve), 1}, {xl("", "a^-1", g, ve), 1}}, p, ve) == 1);
  CHECK(costly_count({{xl("", "a", g, ve), 4}}, p, ve) == 0);
  CHECK(costly_count({{xl("", "t t", g, ve), 3}}, p, ve) == 5);
  CHECK(costly_count({}, p, ve) == 0);
}

TEST_CASE("k bound examples") {
  const auto& ve = zoo::registry("vE");
  auto g = GenSet::standard(ve);
  auto r = k_bound_check(parse_word("a^5", g), ve, g);
  CHECK(r.k == 1);
  CHECK(r.n == 0);
  CHECK(r.ok);
  auto f = k_bound_check(parse_word("a^2 t a^-4 t a^2", g), ve, g);
  CHECK(f.k == 4);
  CHECK(f.n == 3);
  CHECK(f.ok);
  CHECK_THROWS_AS(k_bound_check(parse_word("a t", g), ve, g), Error);
}

TEST_CASE("property: verdict invariant under relabeling") {
  std::mt19937_64 rng(61);
  for (const auto& name : zoo::registry_names()) {
    const auto& d = zoo::registry(name);
    auto g = GenSet::standard(d);
    auto base = classify(d, g);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<words::Letter> ls = g.letters();
      std::shuffle(ls.begin(), ls.end(), rng);
      for (std::size_t i = 0; i < ls.size(); ++i) ls[i].name = "L" + std::to_string(i);
      auto r = classify(d, GenSet(ls));
      CAPTURE(name);
      CHECK(r.verdict.kind == base.verdict.kind);
      CHECK(r.verdict.s == base.verdict.s);
      CHECK(r.verdict.alpha == base.verdict.alpha);
      CHECK(incidence_sizes(r) == incidence_sizes(base));
    }
  }
}

TEST_CASE("property: verdict invariant under change of lattice basis") {
  const std::vector<std::pair<zoo::IntMatrix, zoo::IntMatrix>> bases = {
      {{{2, 1}, {1, 1}}, {{1, -1}, {-1, 2}}},
      {{{0, 1}, {1, 0}}, {{0, 1}, {1, 0}}},
      {{{1, 3}, {0, -1}}, {{1, 3}, {0, -1}}},
  };
  for (const char* name : {"Z2", "vZ", "G2rot"}) {
    const auto& d = zoo::registry(name);
    auto base = classify(d, GenSet::standard(d));
    for (const auto& [m, mi] : bases) {
      auto d2 = rebased(d, m, mi);
      auto r = classify(d2, GenSet::standard(d2));
      CAPTURE(name);
      CHECK(r.verdict.kind == base.verdict.kind);
      CHECK(incidence_sizes(r) == incidence_sizes(base));
    }
  }
}

TEST_CASE("property: Exponential witnesses certify themselves") {
  std::mt19937_64 rng(62);
  const auto& z2 = zoo::registry("Z2");
  std::uniform_int_distribution<long long> c(-3, 3);
  int exponential = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<words::Letter> ls;
    for (int i = 0; i < 5; ++i) ls.push_back({"g" + std::to_string(i), {VecQ{c(rng), c(rng)}, 0}, 1});
    GenSet g(ls);
    auto r = classify(z2, g);
    if (r.verdict.kind != VerdictKind::Exponential) continue;
    ++exponential;
    auto [i, k] = *r.verdict.witness;
    REQUIRE(i != k);
    REQUIRE(r.verdict.witness_facet->contains(r.a[i].point));
    REQUIRE(r.verdict.witness_facet->contains(r.a[k].point));
    REQUIRE(std::find(r.polytope->facets().begin(), r.polytope->facets().end(), *r.verdict.witness_facet) !=
            r.polytope->facets().end());
  }
  CHECK(exponential > 0);
}
