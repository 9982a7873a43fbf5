#include <algorithm>
#include <map>
#include <vector>

#include <catch_amalgamated.hpp>

#include "cambrian/group_spec.hpp"
#include "cambrian/projections.hpp"

using namespace cambrian;

namespace {

// Largest c-sortable element below w, found by scanning every sortable.
Element brute_down(const WeakOrderLattice& L, const std::vector<Element>& sortables,
                   Element w) {
  std::vector<Element> below;
  for (Element v : sortables) {
    if (L.leq(v, w)) below.push_back(v);
  }
  for (Element v : below) {
    if (std::all_of(below.begin(), below.end(), [&](Element u) { return L.leq(u, v); })) {
      return v;
    }
  }
  FAIL("no largest sortable below " << w.index);
  return w;
}

}  // namespace

TEST_CASE("B2 projections for c = s0 s1", "[projections]") {
  auto sys = build_system(type_b(2), 100);
  WeakOrderLattice L(sys);
  CoxeterElement c(sys, {0, 1});
  Element s1 = sys.from_word({1});
  Element s1s0 = sys.from_word({1, 0});
  Element s1s0s1 = sys.from_word({1, 0, 1});
  CHECK(pi_down(L, c, s1s0) == s1);
  CHECK(pi_down(L, c, s1s0s1) == s1);
  CHECK(pi_up(L, c, s1) == s1s0s1);
  CHECK(pi_up(L, c, s1s0) == s1s0s1);
  CHECK(pi_down(L, c, sys.longest()) == sys.longest());
  CHECK(pi_up(L, c, sys.identity()) == sys.identity());
  CHECK(pi_down(L, c, sys.from_word({0, 1, 0})) == sys.from_word({0, 1, 0}));

  auto theta = theta_congruence(L, c);
  CHECK(theta.num_classes() == 6);
  std::vector<std::vector<Element>> nontrivial;
  for (const auto& cls : theta.classes()) {
    if (cls.size() > 1) nontrivial.push_back(cls);
  }
  std::vector<Element> expected{s1, s1s0, s1s0s1};
  std::sort(expected.begin(), expected.end());
  CHECK(nontrivial == std::vector<std::vector<Element>>{expected});

  CHECK(is_antisortable(L, c, s1s0s1));
  CHECK_FALSE(is_antisortable(L, c, s1));
}

TEST_CASE("pi_down is the largest sortable below and pi_up tops its fiber",
          "[projections]") {
  for (const char* name : {"A3", "B3", "H3", "I2(5)"}) {
    auto sys = build_system(parse_group_spec(name), 1000);
    WeakOrderLattice L(sys);
    Projector proj(L);
    for (const auto& c : enumerate_coxeter_elements(sys)) {
      INFO(name << " c = " << c.to_string());
      auto sortables = enumerate_sortables(L, c);
      std::vector<Element> down(sys.size());
      std::map<Element, Element> fiber_top;
      for (std::uint32_t i = 0; i < sys.size(); ++i) {
        Element w{i};
        down[i] = brute_down(L, sortables, w);
        auto [it, fresh] = fiber_top.try_emplace(down[i], w);
        if (!fresh && L.leq(it->second, w)) it->second = w;
      }
      for (std::uint32_t i = 0; i < sys.size(); ++i) {
        Element w{i};
        REQUIRE(proj.down(c, w) == down[i]);
        REQUIRE(proj.up(c, w) == fiber_top.at(down[i]));
        for (Generator s : c.initial_letters().members()) {
          REQUIRE(proj.down(c, w, s) == down[i]);
        }
      }
      // the fibers are order-convex: every fiber has a top
      for (const auto& [bottom, top] : fiber_top) CHECK(L.leq(bottom, top));
      CHECK(fiber_top.size() == sortables.size());
    }
  }
}

TEST_CASE("A3 Theta_c has one class per sortable", "[projections]") {
  // s2 s1 s3 with 1-based generators
  auto sys = build_system(type_a(3), 100);
  WeakOrderLattice L(sys);
  CoxeterElement c(sys, {1, 0, 2});
  auto theta = theta_congruence(L, c);
  CHECK(theta.num_classes() == 14);
  CHECK(theta.bottoms() == enumerate_sortables(L, c));
  std::size_t total = 0;
  for (const auto& cls : theta.classes()) total += cls.size();
  CHECK(total == 24);
  CHECK(is_lattice_congruence(L, theta));
  auto table = Projector(L).table(c);
  for (std::uint32_t i = 0; i < sys.size(); ++i) {
    Element w{i};
    CHECK(theta.bottom_of(w) == table.down[i]);
    CHECK(theta.top_of(w) == table.up[i]);
  }
}

TEST_CASE("projections are order-preserving and idempotent", "[projections]") {
  auto sys = build_system(type_d(4), 1000);
  WeakOrderLattice L(sys);
  Projector proj(L);
  auto c = enumerate_coxeter_elements(sys).front();
  auto t = proj.table(c);
  for (std::uint32_t i = 0; i < sys.size(); ++i) {
    Element x{i};
    CHECK(L.leq(t.down[i], x));
    CHECK(L.leq(x, t.up[i]));
    CHECK(t.down[t.down[i].index] == t.down[i]);
    CHECK(t.up[t.up[i].index] == t.up[i]);
    CHECK(is_sortable(c, t.down[i]));
    CHECK(is_antisortable(L, c, t.up[i]));
    for (Element y : L.covers_up(x)) {
      CHECK(L.leq(t.down[i], t.down[y.index]));
      CHECK(L.leq(t.up[i], t.up[y.index]));
    }
  }
}

TEST_CASE("parabolic Coxeter elements project inside their subgroup", "[projections]") {
  auto sys = build_system(type_a(3), 100);
  WeakOrderLattice L(sys);
  Projector proj(L);
  auto sub = CoxeterElement::of_parabolic(sys, {1, 0});
  auto sortables = enumerate_sortables(L, sub);
  CHECK(sortables.size() == 5);
  for (std::uint32_t i = 0; i < sys.size(); ++i) {
    Element w{i};
    if (!L.in_parabolic(w, sub.support())) {
      CHECK_THROWS_AS(proj.down(sub, w), std::invalid_argument);
      continue;
    }
    CHECK(proj.down(sub, w) == brute_down(L, sortables, w));
  }
  CHECK_THROWS_AS(proj.table(sub), std::invalid_argument);
}

TEST_CASE("a non-initial first letter is refused", "[projections]") {
  auto sys = build_system(type_a(3), 100);
  WeakOrderLattice L(sys);
  Projector proj(L);
  CoxeterElement c(sys, {0, 1, 2});
  CHECK_THROWS_AS(proj.down(c, sys.longest(), Generator{2}), NotInitial);
}
