#include <doctest.h>

#include <random>

#include "nilgrowth/engel.hpp"

using namespace nilgrowth;
using namespace nilgrowth::engel;

namespace {

EngelElement E(Rational x, Rational y, Rational a, Rational b) { return {x, y, a, b}; }

EngelElement random_element(std::mt19937_64& rng) {
  std::uniform_int_distribution<long long> c(-50, 50);
  std::uniform_int_distribution<long long> d(1, 6);
  return {c(rng), c(rng), Rational(c(rng), d(rng)), Rational(c(rng), d(rng))};
}

// Random X-word as letter steps (dx, dy) with dx, dy in {-1, 1}.
std::vector<std::pair<int, int>> random_steps(std::mt19937_64& rng, int max_len) {
  int len = std::uniform_int_distribution<int>(0, max_len)(rng);
  std::vector<std::pair<int, int>> steps;
  std::uniform_int_distribution<int> pick(0, 3);
  for (int i = 0; i < len; ++i) {
    switch (pick(rng)) {
      case 0: steps.emplace_back(1, 1); break;     // a
      case 1: steps.emplace_back(-1, -1); break;   // a^-1
      case 2: steps.emplace_back(1, -1); break;    // b
      default: steps.emplace_back(-1, 1); break;   // b^-1
    }
  }
  return steps;
}

EngelElement letter(std::pair<int, int> s) { return {s.first, s.second, 0, 0}; }

}  // namespace

TEST_CASE("group law examples") {
  auto a = gen_a(), b = gen_b();
  CHECK(mul(a, b) == E(2, 0, -1, Rational(-1, 3)));
  CHECK(mul(a, EngelElement::identity()) == a);
  CHECK(mul(E(2, 2, 0, 0), E(2, -2, 0, 0)) == E(4, 0, -4, Rational(-8, 3)));
}

TEST_CASE("inverse examples") {
  CHECK(inv(gen_b()) == E(-1, 1, 0, 0));
  CHECK(inv(EngelElement::identity()) == EngelElement::identity());
  CHECK(inv(E(2, 0, -1, Rational(-1, 3))) == E(-2, 0, 1, Rational(1, 3)));
  CHECK(mul(E(2, 0, -1, Rational(-1, 3)), E(-2, 0, 1, Rational(1, 3))) == EngelElement::identity());
}

TEST_CASE("reflection examples") {
  CHECK(reflect(gen_a()) == inv(gen_b()));
  CHECK(reflect(EngelElement::identity()) == EngelElement::identity());
  auto g = E(4, 0, -4, Rational(-8, 3));
  CHECK(reflect(g) == E(-4, 0, 4, Rational(8, 3)));
  auto a2 = E(2, 2, 0, 0), b2 = E(2, -2, 0, 0);
  CHECK(reflect(mul(a2, b2)) == mul(reflect(a2), reflect(b2)));
}

TEST_CASE("winding oracle examples") {
  CHECK(winding_oracle(Polyline({{0, 0}, {1, 1}})) == E(1, 1, 0, 0));
  CHECK(winding_oracle(Polyline({{0, 0}, {1, 1}, {2, 0}})) == E(2, 0, -1, Rational(-1, 3)));
  const long long p = 3;
  CHECK(winding_oracle(Polyline({{0, 0}, {p, p}, {2 * p, 0}})) == E(6, 0, -9, -9));
  CHECK(mul(pow(gen_a(), p), pow(gen_b(), p)) == E(6, 0, -9, -9));
  CHECK_THROWS(Polyline({{1, 0}}));
  CHECK_THROWS(Polyline({{0, 0}, {0, 0}}));
}

TEST_CASE("property: associativity on random triples") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 10000; ++i) {
    auto g = random_element(rng), h = random_element(rng), k = random_element(rng);
    REQUIRE(mul(mul(g, h), k) == mul(g, mul(h, k)));
  }
}

TEST_CASE("property: inverse and reflection laws") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 2000; ++i) {
    auto g = random_element(rng), h = random_element(rng);
    REQUIRE(mul(g, inv(g)) == EngelElement::identity());
    REQUIRE(mul(inv(g), g) == EngelElement::identity());
    REQUIRE(reflect(reflect(g)) == g);
    REQUIRE(reflect(mul(g, h)) == mul(reflect(g), reflect(h)));
  }
}

TEST_CASE("property: letter products agree with the winding oracle") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 1000; ++i) {
    auto steps = random_steps(rng, 50);
    EngelElement g;
    std::vector<VecQ> pts{{0, 0}};
    long long x = 0, y = 0;
    for (auto s : steps) {
      g = mul(g, letter(s));
      x += s.first;
      y += s.second;
      pts.push_back({x, y});
    }
    REQUIRE(g == winding_oracle(Polyline(pts)));
    // Denominators divide 2 and 6.
    REQUIRE((g.area * 2).is_integer());
    REQUIRE((g.moment * 6).is_integer());
  }
}

TEST_CASE("presentation: [a,[a,b]] = [b^-1,[a,b]] is central") {
  auto a = gen_a(), b = gen_b();
  auto ab = commutator(a, b);
  auto c = commutator(a, ab);
  CHECK(c == commutator(inv(b), ab));
  CHECK(c != EngelElement::identity());
  CHECK(mul(c, a) == mul(a, c));
  CHECK(mul(c, b) == mul(b, c));
}
