#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>

#include "nilgrowth/engine.hpp"
#include "nilgrowth/error.hpp"
#include "oracles.hpp"

using namespace nilgrowth;
using namespace nilgrowth::engine;
using words::GenSet;
using words::parse_word;

namespace {

std::vector<std::size_t> layer_sizes(const NormTable& t) {
  std::vector<std::size_t> out;
  for (const auto& l : t.layers()) out.push_back(l.size());
  return out;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Io;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("nilgrowth_test_" + name);
}

}  // namespace

TEST_CASE("bfs_ball examples") {
  const auto& z1 = zoo::registry("Z1");
  auto t1 = bfs_ball(z1, GenSet::standard(z1), 3);
  CHECK(layer_sizes(t1) == std::vector<std::size_t>{1, 2, 2, 2});
  auto g1 = geodesic_counts(t1);
  CHECK(g1 == std::vector<BigInt>{1, 2, 2, 2});

  const auto& ve = zoo::registry("vE");
  auto g = GenSet::standard(ve);
  auto t = bfs_ball(ve, g, 2);
  CHECK(layer_sizes(t) == std::vector<std::size_t>{1, 3, 6});
  std::vector<std::string> expected;
  for (const char* w : {"a^2", "a^-2", "a t", "a^-1 t", "t a", "t a^-1"})
    expected.push_back(ve.encode(words::evaluate(parse_word(w, g), g, ve)));
  std::sort(expected.begin(), expected.end());
  CHECK(t.layers()[2] == expected);
}

TEST_CASE("Z2 volume and geodesic growth closed forms") {
  const auto& z2 = zoo::registry("Z2");
  auto t = bfs_ball(z2, GenSet::standard(z2), 20);
  auto rep = growth_report(t);
  for (long long n = 0; n <= 20; ++n) CHECK(rep.beta[n] == 2 * n * n + 2 * n + 1);
  for (int n = 1; n <= 12; ++n) CHECK(rep.gamma[n] == BigInt(4) * (BigInt(1) << n) - 4);
  CHECK(rep.gamma[0] == 1);
  CHECK(rep.d == 2);
  CHECK(rep.ratio_trace[1] == Rational(5));
}

TEST_CASE("geodesic counts agree with brute-force enumeration") {
  for (const char* name : {"vE", "vH", "Z2", "G2rot"}) {
    const auto& d = zoo::registry(name);
    auto g = GenSet::standard(d);
    auto t = bfs_ball(d, g, 6);
    auto gamma = geodesic_counts(t);
    auto balls = oracle::brute_ball_sizes(d, g, 6);
    auto rep = growth_report(t);
    CAPTURE(name);
    for (int n = 0; n <= 6; ++n) {
      CHECK(gamma[n] == BigInt(static_cast<long>(oracle::brute_geodesic_count(d, g, n))));
      CHECK(rep.beta[n] == balls[n]);
    }
  }
  const auto& ve = zoo::registry("vE");
  auto gamma = geodesic_counts(bfs_ball(ve, GenSet::standard(ve), 2));
  CHECK(gamma[1] == 3);
  CHECK(gamma[2] == 6);
}

TEST_CASE("weighted generators use the bucketed search") {
  const auto& z1 = zoo::registry("Z1");
  auto x = z1.letters()[0].element, xi = z1.letters()[1].element;
  GenSet g({{"x", x, 1}, {"X", xi, 1}, {"y", z1.pow(x, 3), 2}, {"Y", z1.pow(x, -3), 2}});
  auto t = bfs_ball(z1, g, 12);
  // Integer shortest paths by relaxation.
  std::map<long long, long long> dist{{0, 0}};
  for (int round = 0; round < 40; ++round)
    for (auto [v, dv] : std::map<long long, long long>(dist))
      for (auto [step, w] : {std::pair{1LL, 1LL}, {-1, 1}, {3, 2}, {-3, 2}})
        if (!dist.count(v + step) || dist[v + step] > dv + w) dist[v + step] = dv + w;
  for (auto [v, dv] : dist) {
    if (dv > 12) continue;
    CAPTURE(v);
    CHECK(t.find(zoo::GroupElement{VecQ{v}, 0}) == dv);
  }
  auto gamma = geodesic_counts(t);
  // Words of weighted length 2 reaching norm-2 elements: x x, X X, y, Y.
  CHECK(gamma[2] == 4);
}

TEST_CASE("norm, budget and radius errors") {
  const auto& ve = zoo::registry("vE");
  auto g = GenSet::standard(ve);
  auto t = bfs_ball(ve, g, 4);
  CHECK(norm(t, words::evaluate(parse_word("a^4", g), g, ve)) == 4);
  CHECK(code_of([&] { norm(t, words::evaluate(parse_word("a^5", g), g, ve)); }) == ErrorCode::OutOfRadius);
  try {
    bfs_ball(ve, g, 10, {.max_elements = 100});
    FAIL("expected MemoryBudgetExceeded");
  } catch (const MemoryBudgetExceeded& e) {
    CHECK(e.layer() == 6);
  }
  CHECK(code_of([&] { norm(t, zoo::registry("Z2").identity()); }) == ErrorCode::FamilyMismatch);
}

TEST_CASE("property: triangle inequality and submultiplicativity") {
  const auto& ve = zoo::registry("vE");
  auto g = GenSet::standard(ve);
  auto t = bfs_ball(ve, g, 12);
  std::mt19937_64 rng(71);
  for (int i = 0; i < 5000; ++i) {
    int a = std::uniform_int_distribution<int>(0, 6)(rng), b = std::uniform_int_distribution<int>(0, 6)(rng);
    const auto& la = t.layers()[a];
    const auto& lb = t.layers()[b];
    auto x = ve.decode(la[std::uniform_int_distribution<std::size_t>(0, la.size() - 1)(rng)]);
    auto y = ve.decode(lb[std::uniform_int_distribution<std::size_t>(0, lb.size() - 1)(rng)]);
    auto n = t.find(ve.mul(x, y));
    REQUIRE(n.has_value());
    REQUIRE(*n <= a + b);
  }
  for (const char* name : {"vE", "vH", "Engel"}) {
    const auto& d = zoo::registry(name);
    auto gamma = geodesic_counts(bfs_ball(d, GenSet::standard(d), 9));
    for (std::size_t m = 0; m < gamma.size(); ++m)
      for (std::size_t n = 0; m + n < gamma.size(); ++n) REQUIRE(gamma[m + n] <= gamma[m] * gamma[n]);
  }
}

TEST_CASE("property: worker count does not change the table") {
  for (const char* name : {"vE", "Engel"}) {
    const auto& d = zoo::registry(name);
    auto g = GenSet::standard(d);
    auto one = bfs_ball(d, g, 9, {.threads = 1});
    for (unsigned w : {2u, 3u, 8u}) {
      auto many = bfs_ball(d, g, 9, {.threads = w});
      CHECK(one.layers() == many.layers());
      CHECK(serialize_table(one) == serialize_table(many));
    }
  }
}

TEST_CASE("witnesses and geodesic enumeration") {
  const auto& ve = zoo::registry("vE");
  auto g = GenSet::standard(ve);
  auto t = bfs_ball(ve, g, 9);
  std::mt19937_64 rng(72);
  for (int i = 0; i < 500; ++i) {
    int d = std::uniform_int_distribution<int>(0, 9)(rng);
    const auto& l = t.layers()[d];
    auto x = ve.decode(l[std::uniform_int_distribution<std::size_t>(0, l.size() - 1)(rng)]);
    auto w = geodesic_witness(t, x);
    REQUIRE(words::evaluate(w, g, ve) == x);
    REQUIRE(words::weighted_len(w, g) == d);
  }
  std::vector<long long> by_len(10, 0);
  for_each_geodesic(t, 9, [&](const words::Word& w, const zoo::GroupElement& x) {
    REQUIRE(words::evaluate(w, g, ve) == x);
    ++by_len[w.length()];
  });
  auto gamma = geodesic_counts(t);
  for (int n = 0; n <= 9; ++n) CHECK(BigInt(static_cast<long>(by_len[n])) == gamma[n]);
  CHECK(code_of([&] { for_each_geodesic(t, 10, [](const words::Word&, const zoo::GroupElement&) {}); }) ==
        ErrorCode::OutOfRadius);
}

TEST_CASE("floor_pow") {
  CHECK(floor_pow(8, Rational(1, 2)) == 2);
  CHECK(floor_pow(9, Rational(1, 2)) == 3);
  CHECK(floor_pow(26, Rational(1, 3)) == 2);
  CHECK(floor_pow(27, Rational(1, 3)) == 3);
  CHECK(floor_pow(7, Rational(0)) == 1);
  CHECK(floor_pow(4, Rational(3, 2)) == 8);
}

TEST_CASE("family_words examples") {
  const auto& ve = zoo::registry("vE");
  auto g = GenSet::standard(ve);
  auto f = family_words(8, 2, Rational(1, 2), g);
  REQUIRE(f.size() == 3);
  CHECK(f[0].m == std::vector<long long>{1, 3});
  CHECK(f[1].m == std::vector<long long>{2, 2});
  CHECK(f[2].m == std::vector<long long>{3, 1});
  CHECK(words::format_word(f[1].word, g) == "a^2 t a^-4 t a^2");

  auto single = family_words(8, 4, Rational(0), g);
  REQUIRE(single.size() == 1);
  CHECK(single[0].m == std::vector<long long>(4, 1));
  CHECK(words::format_word(single[0].word, g) == "a t a^-2 t a^2 t a^-2 t a");

  auto tight = family_words(16, 2, Rational(0), g);
  for (const auto& w : tight) CHECK(std::abs(4 * w.m[0] - 16) <= 4);

  CHECK(code_of([&] { family_words(7, 2, Rational(1, 2), g); }) == ErrorCode::InvalidParams);
  CHECK(code_of([&] { family_words(8, 3, Rational(1, 2), g); }) == ErrorCode::InvalidParams);
  CHECK(code_of([&] { family_words(6, 4, Rational(1, 2), g); }) == ErrorCode::InvalidParams);
  CHECK(code_of([&] { family_words(8, 0, Rational(1, 2), g); }) == ErrorCode::InvalidParams);
  const auto& z2 = zoo::registry("Z2");
  CHECK(code_of([&] { family_words(8, 2, Rational(1, 2), GenSet::standard(z2)); }) == ErrorCode::InvalidParams);
}

TEST_CASE("property: family word shape and count") {
  const auto& ve = zoo::registry("vE");
  auto g = GenSet::standard(ve);
  auto admissible = [](long long m, long long n, long long k, const Rational& eps) {
    // |m - n/(2K)|^q <= n^p, evaluated in rationals.
    Rational dev = abs(Rational(m) - Rational(n, 2 * k)), lhs = 1, rhs = 1;
    for (auto i = eps.denominator(); i > 0; --i) lhs *= dev;
    for (auto i = eps.numerator(); i > 0; --i) rhs *= Rational(n);
    return lhs <= rhs;
  };
  for (long long k : {2, 4})
    for (long long n = 2 * k; n <= 24; n += 2)
      for (const auto& eps : {Rational(0), Rational(1, 3), Rational(1, 2), Rational(2, 3)}) {
        auto f = family_words(n, k, eps, g);
        std::vector<std::vector<long long>> brute;
        std::vector<long long> m(k, 1);
        for (;;) {
          long long sum = 0;
          bool ok = true;
          for (auto x : m) sum += x, ok = ok && admissible(x, n, k, eps);
          if (ok && 2 * sum == n) brute.push_back(m);
          std::size_t i = k;
          while (i > 0 && m[i - 1] == n / 2) m[--i] = 1;
          if (i == 0) break;
          ++m[i - 1];
        }
        CAPTURE(n);
        CAPTURE(k);
        REQUIRE(f.size() == brute.size());
        for (std::size_t i = 0; i < f.size(); ++i) {
          REQUIRE(f[i].m == brute[i]);
          REQUIRE(words::weighted_len(f[i].word, g) == n + k);
          REQUIRE(f[i].word.blocks().size() == static_cast<std::size_t>(2 * k + 1));
          REQUIRE(ve.coset(words::evaluate(f[i].word, g, ve)) == 0);
        }
      }
  for (long long n : {8, 12}) CHECK(family_words(n, 2, Rational(1, 2), g).size() >= static_cast<std::size_t>(floor_pow(n, Rational(1, 2))));
}

TEST_CASE("verify_family on a small table") {
  const auto& ve = zoo::registry("vE");
  auto g = GenSet::standard(ve);
  auto t = bfs_ball(ve, g, 10);
  auto r = verify_family(8, 2, Rational(1, 2), t);
  CHECK(r.entries.size() == 3);
  CHECK(r.lower_bound == 2);
  for (const auto& e : r.entries) {
    CHECK(e.norm <= 10);
    CHECK(e.geodesic == !e.witness.has_value());
  }
  auto small = bfs_ball(ve, g, 9);
  CHECK(code_of([&] { verify_family(8, 2, Rational(1, 2), small); }) == ErrorCode::OutOfRadius);
}

TEST_CASE("zero-drift moment sweep") {
  auto r4 = by_bound_sweep(4);
  CHECK(r4.words == 6);
  CHECK(r4.violations.empty());
  CHECK(r4.rhs == 64);
  auto it = std::find_if(r4.minimizers.begin(), r4.minimizers.end(),
                         [](const SweepWord& w) { return w.word == "a^2 b^2"; });
  REQUIRE(it != r4.minimizers.end());
  CHECK(it->minus_by == Rational(8, 3));
  CHECK(it->k == 2);
  CHECK(code_of([] { by_bound_sweep(3); }) == ErrorCode::InvalidParams);
  CHECK(code_of([] { by_bound_sweep(0); }) == ErrorCode::InvalidParams);

  for (long long p = 1; p <= 10; ++p) {
    auto g = engel::mul(engel::pow(engel::gen_a(), p), engel::pow(engel::gen_b(), p));
    CHECK(-g.moment == Rational(p * p * p, 3));
  }
  for (long long n = 2; n <= 10; n += 2) {
    auto r = by_bound_sweep(n);
    CHECK(r.violations.empty());
    std::string apbp = "a^" + std::to_string(n / 2) + " b^" + std::to_string(n / 2);
    if (n == 2) apbp = "a b";
    CHECK(std::find(r.equality.begin(), r.equality.end(), apbp) != r.equality.end());
  }
}

TEST_CASE("sweep moments agree with the winding integral") {
  const auto& e = zoo::registry("Engel");
  auto g = GenSet::standard(e);
  for (long long n = 2; n <= 8; n += 2) {
    auto r = by_bound_sweep(n);
    std::vector<SweepWord> all = r.minimizers;
    for (const auto& w : all) {
      std::vector<VecQ> pts{{0, 0}};
      for (auto l : parse_word(w.word, g).letters()) {
        VecQ step = l == *g.find("a") ? VecQ{1, 1} : VecQ{1, -1};
        pts.push_back(pts.back() + step);
      }
      CHECK(-engel::winding_oracle(engel::Polyline(pts)).moment == w.minus_by);
    }
  }
}

TEST_CASE("Engel lattice membership") {
  const auto& e = zoo::registry("Engel");
  auto t = bfs_ball(e, GenSet::standard(e), 8);
  for (const auto& layer : t.layers())
    for (const auto& k : layer) REQUIRE(engel::in_lattice(std::get<engel::EngelElement>(e.decode(k).base)));
  CHECK(!engel::in_lattice({1, 0, 0, 0}));
  CHECK(!engel::in_lattice({2, 0, 0, 0}));
  CHECK(!engel::in_lattice({4, 0, 0, 0}));
  CHECK(engel::in_lattice({12, 0, 0, 0}));
  CHECK(!engel::in_lattice({0, 0, 0, 1}));
  CHECK(engel::in_lattice({0, 0, 0, 2}));
  CHECK(!engel::in_lattice({0, 0, 1, 0}));
  CHECK(!engel::in_lattice({Rational(1, 2), Rational(1, 2), 0, 0}));
}

TEST_CASE("norm gaps at small n") {
  const auto& e = zoo::registry("Engel");
  NormTable t(e, GenSet::standard(e));
  auto g0 = norm_gap_search(0, t, 10);
  CHECK(g0.in_group);
  CHECK(g0.norm == 0);
  CHECK(g0.gap == 0);
  for (long long n : {2, 4}) {
    auto r = norm_gap_search(n, t, 10);
    CHECK(!r.in_group);
    CHECK(r.absent_through >= n);
  }
  auto small = bfs_ball(e, GenSet::standard(e), 5);
  CHECK(code_of([&] { norm_gap_check(12, small); }) == ErrorCode::OutOfRadius);
  const auto& ve = zoo::registry("vE");
  CHECK(code_of([&] { norm_gap_check(2, bfs_ball(ve, GenSet::standard(ve), 2)); }) == ErrorCode::InvalidParams);
}

TEST_CASE("table persistence") {
  const auto& ve = zoo::registry("vE");
  auto g = GenSet::standard(ve);
  auto t = bfs_ball(ve, g, 6);
  auto path = temp_file("ve6.nt");
  save_table(t, path);
  auto loaded = load_table(path, ve, g);
  CHECK(loaded.layers() == t.layers());
  CHECK(loaded.fingerprint() == t.fingerprint());
  CHECK(serialize_table(loaded) == serialize_table(t));
  auto loose = load_table(path);
  CHECK(loose.desc().name() == "vE");
  CHECK(loose.layers() == t.layers());

  GenSet other({g[1], g[0], g[2]});
  CHECK(code_of([&] { load_table(path, ve, other); }) == ErrorCode::FingerprintMismatch);
  const auto& vh = zoo::registry("vH");
  CHECK(code_of([&] { load_table(path, vh, GenSet::standard(vh)); }) == ErrorCode::FingerprintMismatch);

  auto bytes = serialize_table(t);
  CHECK(code_of([&] { deserialize_table(bytes.substr(0, bytes.size() - 5), &ve, &g); }) == ErrorCode::CorruptFile);
  CHECK(code_of([&] { deserialize_table(bytes.substr(0, 40), &ve, &g); }) == ErrorCode::CorruptFile);
  auto flipped = bytes;
  flipped[bytes.size() / 2] ^= 0x10;
  CHECK(code_of([&] { deserialize_table(flipped, &ve, &g); }) == ErrorCode::CorruptFile);
  auto v2 = bytes;
  v2[14] = '2';
  CHECK(code_of([&] { deserialize_table(v2, &ve, &g); }) == ErrorCode::FormatVersionMismatch);
  CHECK(code_of([&] { deserialize_table("garbage", &ve, &g); }) == ErrorCode::CorruptFile);
  CHECK(code_of([&] { load_table(temp_file("missing.nt")); }) == ErrorCode::Io);
  std::filesystem::remove(path);
}
