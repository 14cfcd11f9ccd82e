#include <doctest.h>

#include <random>

#include "nilgrowth/error.hpp"
#include "nilgrowth/words.hpp"

using namespace nilgrowth;
using namespace nilgrowth::words;

namespace {

const zoo::GroupDescriptor& ve() { return zoo::registry("vE"); }
GenSet ve_gens() { return GenSet::standard(ve()); }

ErrorCode parse_error(const std::string& text, const GenSet& gens) {
  try {
    parse_word(text, gens);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a parse error for '" << text << "'");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("parse_word examples") {
  auto g = ve_gens();
  auto w = parse_word("a^3 t a^-2", g);
  REQUIRE(w.blocks().size() == 3);
  CHECK(w.blocks()[0] == Block{*g.find("a"), 3});
  CHECK(w.blocks()[1] == Block{*g.find("t"), 1});
  CHECK(w.blocks()[2] == Block{*g.find("a^-1"), 2});
  CHECK(parse_error("a^0 t", g) == ErrorCode::ZeroExponent);
  CHECK(parse_error("b", g) == ErrorCode::UnknownLetter);
  CHECK(parse_error("t^-1", g) == ErrorCode::MissingInverseLetter);
  CHECK(parse_error("a^", g) == ErrorCode::SyntaxError);
  CHECK(parse_error("a + t", g) == ErrorCode::SyntaxError);
}

TEST_CASE("parse_word separators and merging") {
  auto g = ve_gens();
  CHECK(parse_word("a*a * a", g) == parse_word("a^3", g));
  CHECK(parse_word("  ", g).empty());
  CHECK(parse_word("a a^-1", g).blocks().size() == 2);
  try {
    parse_word("a t %", g);
  } catch (const SyntaxError& e) {
    CHECK(e.position() == 4);
  }
  auto g2 = GenSet::standard(zoo::registry("G2rot"));
  auto w = parse_word("(xy)^-1 x^2 r", g2);
  CHECK(w.blocks()[0].letter == *g2.find("(xy)^-1"));
  CHECK(format_word(w, g2) == "(xy)^-1 x^2 r");
}

TEST_CASE("coarse and weighted length") {
  auto g = ve_gens();
  CHECK(coarse_len(Word{}) == 0);
  CHECK(weighted_len(Word{}, g) == 0);
  auto w = parse_word("a^3 t a^-2", g);
  CHECK(coarse_len(w) == 3);
  CHECK(weighted_len(w, g) == 6);

  // One letter standing for a conjugated cycle, weighted by the cycle length.
  GenSet x({{"c", ve().identity(), 1}});
  auto xw = parse_word("c^2", x);
  CHECK(coarse_len(xw) == 1);
  CHECK(weighted_len(xw, x) == 2);
  GenSet heavy({{"c", ve().identity(), 3}, {"d", ve().identity(), 1}});
  CHECK(weighted_len(parse_word("c^2 d", heavy), heavy) == 7);
}

TEST_CASE("evaluate examples") {
  const auto& e = zoo::registry("Engel");
  auto g = GenSet::standard(e);
  auto ab = evaluate(parse_word("a b", g), g, e);
  CHECK(std::get<engel::EngelElement>(ab.base) == engel::EngelElement{2, 0, -1, Rational(-1, 3)});
  CHECK(evaluate(Word{}, g, e) == e.identity());
  auto a2b2 = evaluate(parse_word("a^2 b^2", g), g, e);
  CHECK(std::get<engel::EngelElement>(a2b2.base) == engel::EngelElement{4, 0, -4, Rational(-8, 3)});
}

TEST_CASE("generating set validation") {
  CHECK_THROWS(GenSet({{"a", ve().identity(), 1}, {"a", ve().identity(), 1}}));
  CHECK_THROWS(GenSet({{"a", ve().identity(), 0}}));
  CHECK_THROWS(GenSet({{"a b", ve().identity(), 1}}));
}

TEST_CASE("property: concatenation laws and print/parse round trip") {
  std::mt19937_64 rng(41);
  for (const char* name : {"vE", "vH", "Engel", "G2rot"}) {
    const auto& d = zoo::registry(name);
    auto g = GenSet::standard(d);
    std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
    std::uniform_int_distribution<int> len(0, 12);
    for (int i = 0; i < 500; ++i) {
      Word w1, w2;
      for (int k = len(rng); k > 0; --k) w1.append(pick(rng));
      for (int k = len(rng); k > 0; --k) w2.append(pick(rng));
      Word w = concat(w1, w2);
      REQUIRE(evaluate(w, g, d) == d.mul(evaluate(w1, g, d), evaluate(w2, g, d)));
      REQUIRE(weighted_len(w, g) == weighted_len(w1, g) + weighted_len(w2, g));
      auto k = coarse_len(w), k1 = coarse_len(w1), k2 = coarse_len(w2);
      REQUIRE((k == k1 + k2 || k == k1 + k2 - 1 || (k1 == 0 || k2 == 0)));
      REQUIRE(parse_word(format_word(w, g), g) == w);
    }
  }
}
