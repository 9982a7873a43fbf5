#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <catch_amalgamated.hpp>

#include "cambrian/coxeter.hpp"
#include "cambrian/group_spec.hpp"

using namespace cambrian;

namespace {

std::size_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// All reduced words of w, by peeling right descents.
void all_reduced_words(const CoxeterSystem& sys, Element w, Word& suffix,
                       std::vector<Word>& out) {
  if (w == sys.identity()) {
    out.emplace_back(suffix.rbegin(), suffix.rend());
    return;
  }
  for (Generator s = 0; s < sys.rank(); ++s) {
    Element ws = sys.right_mul(w, s);
    if (sys.length(ws) < sys.length(w)) {
      suffix.push_back(s);
      all_reduced_words(sys, ws, suffix, out);
      suffix.pop_back();
    }
  }
}

}  // namespace

TEST_CASE("named types have the standard orders and reflection counts", "[coxeter]") {
  struct Case {
    const char* name;
    std::size_t order;
    std::size_t reflections;
  };
  // |A_n| = (n+1)!, |B_n| = 2^n n!, |D_n| = 2^(n-1) n!; |T| is the number of
  // positive roots: n(n+1)/2, n^2, n(n-1).
  const Case cases[] = {
      {"A1", 2, 1},        {"A2", 6, 3},        {"A3", factorial(4), 6},
      {"A4", factorial(5), 10}, {"A5", factorial(6), 15},
      {"B2", 8, 4},        {"B3", 8 * 6, 9},    {"B4", 16 * 24, 16},
      {"D4", 8 * 24, 12},  {"D5", 16 * 120, 20},
      {"H3", 120, 15},     {"H4", 14400, 60},   {"F4", 1152, 24},
  };
  for (const auto& c : cases) {
    INFO(c.name);
    auto sys = build_system(parse_group_spec(c.name), 20000);
    CHECK(sys.size() == c.order);
    CHECK(sys.num_reflections() == c.reflections);
    CHECK(sys.length(sys.longest()) == c.reflections);
  }
  for (int m = 3; m <= 12; ++m) {
    auto sys = build_system(type_i2(m), 20000);
    CHECK(sys.size() == static_cast<std::size_t>(2 * m));
    CHECK(sys.num_reflections() == static_cast<std::size_t>(m));
  }
}

TEST_CASE("E6 builds above the default cap and is refused under it", "[coxeter]") {
  CHECK_THROWS_AS(build_system(type_e(6), 20000), OrderCapExceeded);
  auto sys = build_system(type_e(6), 60000);
  CHECK(sys.size() == 51840);
  CHECK(sys.num_reflections() == 36);
}

TEST_CASE("A3 is the symmetric group on four letters", "[coxeter]") {
  auto sys = build_system(type_a(3), 100);
  using Perm = std::array<int, 4>;
  // s_i swaps positions i and i+1 of the one-line notation.
  auto perm_of = [&](Element w) {
    Perm p{0, 1, 2, 3};
    for (Generator s : sys.reduced_word(w)) std::swap(p[s], p[s + 1]);
    return p;
  };
  auto inversions = [](const Perm& p) {
    std::size_t k = 0;
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) k += p[i] > p[j];
    }
    return k;
  };
  std::set<Perm> seen;
  for (std::uint32_t i = 0; i < sys.size(); ++i) {
    Element w{i};
    Perm p = perm_of(w);
    seen.insert(p);
    CHECK(sys.length(w) == inversions(p));
    for (Generator s = 0; s < 3; ++s) {
      Perm q = p;
      std::swap(q[s], q[s + 1]);
      CHECK(perm_of(sys.right_mul(w, s)) == q);
    }
    Perm inv{};
    for (int k = 0; k < 4; ++k) inv[p[k]] = k;
    CHECK(perm_of(sys.inverse(w)) == inv);
  }
  CHECK(seen.size() == 24);
  CHECK(perm_of(sys.longest()) == Perm{3, 2, 1, 0});
}

TEST_CASE("element indices follow shortlex order of lexicographically first reduced words",
          "[coxeter]") {
  for (const char* name : {"A3", "B3", "H3", "I2(5)"}) {
    INFO(name);
    auto sys = build_system(parse_group_spec(name), 20000);
    std::vector<std::pair<std::size_t, Word>> keys;
    for (std::uint32_t i = 0; i < sys.size(); ++i) {
      Element w{i};
      std::vector<Word> words;
      Word scratch;
      all_reduced_words(sys, w, scratch, words);
      REQUIRE(!words.empty());
      Word first = *std::min_element(words.begin(), words.end());
      CHECK(sys.reduced_word(w) == first);
      for (const Word& rw : words) CHECK(sys.from_word(rw) == w);
      keys.emplace_back(first.size(), first);
    }
    CHECK(std::is_sorted(keys.begin(), keys.end()));
  }
}

TEST_CASE("words, inverses and the longest element", "[coxeter]") {
  auto b2 = build_system(type_b(2), 100);
  Element s0s1 = b2.from_word({0, 1});
  CHECK(b2.inverse(s0s1) == b2.from_word({1, 0}));
  CHECK(b2.from_word({0, 0}) == b2.identity());
  CHECK(b2.from_word({0, 1, 0, 1}) == b2.from_word({1, 0, 1, 0}));
  CHECK(b2.longest() == b2.from_word({0, 1, 0, 1}));
  CHECK(b2.length(b2.from_word({0, 1, 1, 0, 1})) == 1);
  CHECK(b2.left_mul(s0s1, 1) == b2.from_word({1, 0, 1}));
  CHECK(b2.apply(s0s1, 1, Side::Right) == b2.from_word({0}));
  CHECK(b2.apply(s0s1, 0, Side::Left) == b2.from_word({1}));
  CHECK(b2.left_descents(s0s1) == GeneratorSet::of({0}));
  CHECK(b2.right_descents(s0s1) == GeneratorSet::of({1}));

  auto a1 = build_system(type_a(1), 10);
  CHECK(a1.longest() == a1.generator(0));

  auto a3 = build_system(type_a(3), 100);
  CHECK(a3.length(a3.longest()) == 6);
  CHECK(a3.generator(1) == a3.inverse(a3.generator(1)));
}

TEST_CASE("reflections are the conjugates of generators", "[coxeter]") {
  auto sys = build_system(type_h(3), 200);
  std::set<Element> conjugates;
  for (std::uint32_t i = 0; i < sys.size(); ++i) {
    for (Generator s = 0; s < sys.rank(); ++s) {
      Element w{i};
      conjugates.insert(sys.multiply(sys.multiply(w, sys.generator(s)), sys.inverse(w)));
    }
  }
  std::set<Element> reflections;
  for (std::size_t t = 0; t < sys.num_reflections(); ++t) {
    Element r = sys.reflection(t);
    reflections.insert(r);
    CHECK(sys.multiply(r, r) == sys.identity());
    // t is an inversion of itself
    CHECK(sys.inversions(r).test(t));
  }
  CHECK(reflections == conjugates);
}

TEST_CASE("bad matrices and infinite groups are rejected", "[coxeter]") {
  CHECK_THROWS_AS(CoxeterMatrix::from_rows({{1, 3}, {4, 1}}), BadMatrix);
  CHECK_THROWS_AS(CoxeterMatrix::from_rows({{2, 3}, {3, 1}}), BadMatrix);
  CHECK_THROWS_AS(CoxeterMatrix::from_rows({{1, 1}, {1, 1}}), BadMatrix);
  CHECK_THROWS_AS(CoxeterMatrix::from_rows({{1, 3, 2}, {3, 1}}), BadMatrix);

  CoxeterMatrix inf(2);
  inf.set(0, 1, CoxeterMatrix::kInfinity);
  CHECK_THROWS_AS(build_system(inf, 1000), BadMatrix);

  // affine A2: a triangle of 3s
  auto affine = CoxeterMatrix::from_rows({{1, 3, 3}, {3, 1, 3}, {3, 3, 1}});
  CHECK_THROWS_AS(build_system(affine, 1000000), RootClosureDiverged);

  CHECK_THROWS_AS(build_system(type_a(4), 100), OrderCapExceeded);

  // reflections are stored in a 128-bit set
  CHECK(build_system(type_i2(128), 1000).size() == 256);
  CHECK_THROWS_AS(build_system(type_i2(129), 1000), RootClosureDiverged);

  auto a2 = build_system(type_a(2), 10);
  CHECK_THROWS_AS(a2.from_word({0, 5}), InvalidGenerator);
}

TEST_CASE("group specs", "[coxeter]") {
  auto b2 = parse_group_spec("B2");
  CHECK(b2(0, 1) == 4);
  auto a3 = parse_group_spec("A3");
  CHECK(a3(0, 1) == 3);
  CHECK(a3(1, 2) == 3);
  CHECK(a3(0, 2) == 2);
  CHECK(parse_group_spec("I2(7)")(0, 1) == 7);
  CHECK(parse_group_spec("H3")(0, 1) == 5);
  CHECK(parse_group_spec("F4")(1, 2) == 4);
  auto d4 = parse_group_spec("D4");
  CHECK(d4(0, 2) == 3);
  CHECK(d4(1, 2) == 3);
  CHECK(d4(2, 3) == 3);
  CHECK(d4(0, 1) == 2);

  CHECK_THROWS_AS(parse_group_spec("X3"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("A"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("H5"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("E9"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("I2(2)"), UnsupportedRank);
  CHECK_THROWS_AS(parse_group_spec("A0"), UnsupportedRank);
  CHECK_THROWS_AS(parse_group_spec("D3"), UnsupportedRank);
  CHECK_THROWS_AS(parse_group_spec("A99"), UnsupportedRank);
}
