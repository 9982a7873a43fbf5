#include <algorithm>
#include <set>
#include <vector>

#include <catch_amalgamated.hpp>

#include "cambrian/group_spec.hpp"
#include "cambrian/projections.hpp"

using namespace cambrian;

namespace {

using Labels = std::vector<std::uint32_t>;

// Every lattice congruence of a small weak order, found by running through
// all set partitions (restricted growth strings) and testing compatibility
// with joins and meets taken from the order relation.
std::vector<Labels> all_congruences(const WeakOrderLattice& L) {
  const std::size_t n = L.size();
  std::vector<std::vector<std::uint32_t>> join(n, std::vector<std::uint32_t>(n));
  std::vector<std::vector<std::uint32_t>> meet(n, std::vector<std::uint32_t>(n));
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      for (std::uint32_t u = 0; u < n; ++u) {
        bool upper = L.leq(Element{a}, Element{u}) && L.leq(Element{b}, Element{u});
        bool least = upper;
        for (std::uint32_t v = 0; v < n && least; ++v) {
          if (L.leq(Element{a}, Element{v}) && L.leq(Element{b}, Element{v})) {
            least = L.leq(Element{u}, Element{v});
          }
        }
        if (least) join[a][b] = u;
        bool lower = L.leq(Element{u}, Element{a}) && L.leq(Element{u}, Element{b});
        bool greatest = lower;
        for (std::uint32_t v = 0; v < n && greatest; ++v) {
          if (L.leq(Element{v}, Element{a}) && L.leq(Element{v}, Element{b})) {
            greatest = L.leq(Element{v}, Element{u});
          }
        }
        if (greatest) meet[a][b] = u;
      }
    }
  }
  std::vector<Labels> out;
  Labels rgs(n, 0);
  auto compatible = [&] {
    for (std::uint32_t x = 0; x < n; ++x) {
      for (std::uint32_t y = x + 1; y < n; ++y) {
        if (rgs[x] != rgs[y]) continue;
        for (std::uint32_t z = 0; z < n; ++z) {
          if (rgs[join[x][z]] != rgs[join[y][z]]) return false;
          if (rgs[meet[x][z]] != rgs[meet[y][z]]) return false;
        }
      }
    }
    return true;
  };
  auto rec = [&](auto&& self, std::size_t k, std::uint32_t blocks) -> void {
    if (k == n) {
      if (compatible()) out.push_back(rgs);
      return;
    }
    for (std::uint32_t b = 0; b <= blocks; ++b) {
      rgs[k] = b;
      self(self, k + 1, std::max(blocks, b + 1));
    }
  };
  rgs[0] = 0;
  rec(rec, 1, 1);
  return out;
}

// Intersection of every congruence in `all` identifying each pair.
Labels smallest_containing(const std::vector<Labels>& all,
                           const std::vector<ElementPair>& pairs, std::size_t n) {
  std::vector<std::vector<bool>> same(n, std::vector<bool>(n, true));
  for (const auto& lab : all) {
    bool contains = std::all_of(pairs.begin(), pairs.end(), [&](const ElementPair& p) {
      return lab[p.first.index] == lab[p.second.index];
    });
    if (!contains) continue;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) same[a][b] = same[a][b] && lab[a] == lab[b];
    }
  }
  Labels out(n);
  for (std::size_t a = 0; a < n; ++a) {
    out[a] = static_cast<std::uint32_t>(
        std::find(same[a].begin(), same[a].end(), true) - same[a].begin());
  }
  return out;
}

CongruencePartition partition_of(const WeakOrderLattice& L, const Labels& labels) {
  return CongruencePartition::from_labels(L, labels);
}

CongruencePartition with_classes(const WeakOrderLattice& L,
                                 std::vector<std::vector<Element>> merged) {
  std::set<Element> used;
  for (const auto& cls : merged) used.insert(cls.begin(), cls.end());
  for (std::uint32_t i = 0; i < L.size(); ++i) {
    if (!used.count(Element{i})) merged.push_back({Element{i}});
  }
  return CongruencePartition::from_classes(L, std::move(merged));
}

}  // namespace

TEST_CASE("generated congruences are the smallest ones containing the pairs",
          "[congruence]") {
  for (const char* name : {"A2", "B2", "I2(5)"}) {
    INFO(name);
    auto sys = build_system(parse_group_spec(name), 100);
    WeakOrderLattice L(sys);
    auto all = all_congruences(L);
    for (const auto& lab : all) CHECK(is_lattice_congruence(L, partition_of(L, lab)));
    std::size_t rejected = 0;
    for (const auto& ji : L.join_irreducibles()) {
      ElementPair pair{ji.lower_cover, ji.element};
      auto expected = partition_of(L, smallest_containing(all, {pair}, L.size()));
      CHECK(cg(L, ji.element) == expected);
      rejected += expected.num_classes() < L.size();
    }
    CHECK(rejected == L.join_irreducibles().size());

    // congruences are in bijection with down-sets of the forcing order
    auto f = forcing_poset(L);
    const std::size_t n = f.ji.size();
    std::size_t ideals = 0;
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
      bool closed = true;
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t a = 0; a < n; ++a) {
          if (((mask >> b) & 1U) && f.leq[a][b] && !((mask >> a) & 1U)) closed = false;
        }
      }
      ideals += closed;
    }
    CHECK(ideals == all.size());
    for (const auto& c : enumerate_coxeter_elements(sys)) {
      auto pairs = cambrian_generators(c);
      auto expected = partition_of(L, smallest_containing(all, pairs, L.size()));
      CHECK(cambrian_congruence(L, c) == expected);
      CHECK(theta_congruence(L, c) == expected);
    }
  }
}

TEST_CASE("B2 forcing between join-irreducibles", "[congruence]") {
  auto sys = build_system(type_b(2), 100);
  WeakOrderLattice L(sys);
  Element s0 = sys.from_word({0}), s1 = sys.from_word({1});
  Element s0s1 = sys.from_word({0, 1}), s1s0 = sys.from_word({1, 0});
  Element s0s1s0 = sys.from_word({0, 1, 0}), s1s0s1 = sys.from_word({1, 0, 1});

  CHECK(contracted_join_irreducibles(L, cg(L, s1s0)) == std::vector<Element>{s1s0});
  CHECK(contracted_join_irreducibles(L, cg(L, s1s0s1)) == std::vector<Element>{s1s0s1});
  CHECK_FALSE(forcing_leq(L, s1s0s1, s1s0));
  CHECK_FALSE(forcing_leq(L, s1s0, s1s0s1));
  // contracting an atom forces every join-irreducible except the other atom
  for (auto [atom, other] : {std::pair{s0, s1}, std::pair{s1, s0}}) {
    CHECK(cg(L, atom).num_classes() == 2);
    CHECK_FALSE(forcing_leq(L, other, atom));
    for (Element j : {atom, s0s1, s1s0, s0s1s0, s1s0s1}) CHECK(forcing_leq(L, j, atom));
  }
  // forcing lowers degree
  for (Element j : {s0s1, s1s0, s0s1s0, s1s0s1}) {
    CHECK_FALSE(forcing_leq(L, s0, j));
    CHECK_FALSE(forcing_leq(L, s1, j));
  }

  auto f = forcing_poset(L);
  REQUIRE(f.ji.size() == 6);
  for (std::size_t a = 0; a < 6; ++a) {
    for (std::size_t b = 0; b < 6; ++b) {
      CHECK(f.leq[a][b] == forcing_leq(L, f.ji[a].element, f.ji[b].element));
    }
  }
  CHECK_THROWS_AS(cg(L, sys.longest()), NotJoinIrreducible);
  CHECK_THROWS_AS(forcing_leq(L, sys.identity(), s0), NotJoinIrreducible);
}

TEST_CASE("B2 Cambrian congruence for c = s0 s1", "[congruence]") {
  auto sys = build_system(type_b(2), 100);
  WeakOrderLattice L(sys);
  CoxeterElement c(sys, {0, 1});
  Element s1 = sys.from_word({1});
  auto pairs = cambrian_generators(c);
  CHECK(pairs == std::vector<ElementPair>{{s1, sys.from_word({1, 0, 1})}});
  CHECK(defining_join_irreducibles(c) ==
        std::vector<Element>{std::min(sys.from_word({1, 0}), sys.from_word({1, 0, 1})),
                             std::max(sys.from_word({1, 0}), sys.from_word({1, 0, 1}))});
  auto p = cambrian_congruence(L, c);
  CHECK(p.num_classes() == 6);
  CHECK(p.top_of(s1) == sys.from_word({1, 0, 1}));
  auto jis = defining_join_irreducibles(c);
  CHECK(congruence_contracting(L, jis) == p);
}

TEST_CASE("A3 Cambrian congruence from its rank-two generators", "[congruence]") {
  // s2 s1 s3 with 1-based generators, so pairs (s1, s1 s2) and (s3, s3 s2)
  auto sys = build_system(type_a(3), 100);
  WeakOrderLattice L(sys);
  CoxeterElement c(sys, {1, 0, 2});
  auto pairs = cambrian_generators(c);
  std::sort(pairs.begin(), pairs.end());
  std::vector<ElementPair> expected{{sys.from_word({0}), sys.from_word({0, 1})},
                                    {sys.from_word({2}), sys.from_word({2, 1})}};
  std::sort(expected.begin(), expected.end());
  CHECK(pairs == expected);
  auto p = cambrian_congruence(L, c);
  CHECK(p.num_classes() == 14);
  CHECK(p == theta_congruence(L, c));
  CHECK(p.bottoms() == enumerate_sortables(L, c));
  // the sortable join-irreducibles are exactly the uncontracted ones
  for (const auto& ji : L.join_irreducibles()) {
    CHECK(p.same_class(ji.element, ji.lower_cover) != is_sortable(c, ji.element));
  }
}

TEST_CASE("Cambrian lattices have regular Hasse diagrams", "[congruence]") {
  // Hasse diagrams are 1-skeleta of simple polytopes: every vertex has
  // rank-many neighbours.
  struct Case {
    const char* name;
    std::size_t vertices;
    std::size_t edges;
  };
  const Case cases[] = {{"A2", 5, 5},  {"A3", 14, 21}, {"B3", 20, 30},
                        {"H3", 32, 48}, {"D4", 50, 100}, {"I2(7)", 9, 9}};
  for (const auto& k : cases) {
    auto sys = build_system(parse_group_spec(k.name), 1000);
    WeakOrderLattice L(sys);
    for (const auto& c : enumerate_coxeter_elements(sys)) {
      INFO(k.name << " c = " << c.to_string());
      auto lat = cambrian_lattice(L, c);
      CHECK(lat.elements.size() == k.vertices);
      CHECK(lat.covers.size() == k.edges);
      std::vector<std::size_t> deg(lat.elements.size(), 0);
      for (auto [a, b] : lat.covers) {
        ++deg[a];
        ++deg[b];
      }
      for (std::size_t d : deg) CHECK(d == sys.rank());
    }
  }
}

TEST_CASE("B2 Cambrian lattice covers", "[congruence]") {
  auto sys = build_system(type_b(2), 100);
  WeakOrderLattice L(sys);
  auto lat = cambrian_lattice(L, CoxeterElement(sys, {0, 1}));
  std::set<std::pair<Element, Element>> covers;
  for (auto [a, b] : lat.covers) covers.emplace(lat.elements[a], lat.elements[b]);
  auto w = [&](Word word) { return sys.from_word(word); };
  std::set<std::pair<Element, Element>> expected{
      {w({}), w({0})},           {w({}), w({1})},
      {w({0}), w({0, 1})},       {w({1}), w({0, 1, 0, 1})},
      {w({0, 1}), w({0, 1, 0})}, {w({0, 1, 0}), w({0, 1, 0, 1})}};
  CHECK(covers == expected);
}

TEST_CASE("the congruence test rejects each failure mode", "[congruence]") {
  auto sys = build_system(type_b(2), 100);
  WeakOrderLattice L(sys);
  auto w = [&](Word word) { return sys.from_word(word); };
  using V = CongruenceCheck::Violation;

  auto not_interval = with_classes(L, {{w({0}), w({1})}});
  CHECK(is_lattice_congruence(L, not_interval).violation == V::NotInterval);
  CHECK_THROWS_AS(quotient_lattice(L, not_interval), NotACongruence);

  auto bad_bottom =
      with_classes(L, {{w({0, 1}), w({0, 1, 0})}, {w({1, 0, 1}), w({0, 1, 0, 1})}});
  CHECK(is_lattice_congruence(L, bad_bottom).violation == V::BottomNotOrderPreserving);

  auto bad_top = with_classes(L, {{w({}), w({0})}, {w({1}), w({1, 0})}});
  CHECK(is_lattice_congruence(L, bad_top).violation == V::TopNotOrderPreserving);

  auto single = with_classes(L, {{w({1}), w({1, 0})}});
  CHECK(is_lattice_congruence(L, single));
  CHECK(single == cg(L, w({1, 0})));

  CHECK_THROWS_AS(CongruencePartition::from_classes(L, {{w({0})}}), std::invalid_argument);
  CHECK_THROWS_AS(CongruencePartition::from_classes(L, {{w({0}), w({0})}}),
                  std::invalid_argument);
}

TEST_CASE("trivial and total congruences", "[congruence]") {
  auto sys = build_system(type_a(3), 100);
  WeakOrderLattice L(sys);
  auto fine = smallest_congruence(L, std::vector<ElementPair>{});
  CHECK(fine.num_classes() == sys.size());
  auto q = quotient_lattice(L, fine);
  CHECK(q.order.elements.size() == sys.size());
  std::size_t edges = 0;
  for (std::uint32_t i = 0; i < sys.size(); ++i) edges += L.covers_up(Element{i}).size();
  CHECK(q.order.covers.size() == edges);

  std::vector<ElementPair> all{{sys.identity(), sys.longest()}};
  auto coarse = smallest_congruence(L, all);
  CHECK(coarse.num_classes() == 1);
  CHECK(quotient_lattice(L, coarse).order.elements.size() == 1);
  CHECK(fine.refines(coarse));
  CHECK_FALSE(coarse.refines(fine));
}

TEST_CASE("parabolic Cambrian congruences live on the subgroup", "[congruence]") {
  auto sys = build_system(type_a(3), 100);
  WeakOrderLattice L(sys);
  auto sub = CoxeterElement::of_parabolic(sys, {0, 1});
  auto p = cambrian_congruence(L, sub);
  std::size_t inside = 0;
  for (const auto& cls : p.classes()) {
    if (L.in_parabolic(cls.front(), sub.support())) {
      ++inside;
    } else {
      CHECK(cls.size() == 1);
    }
  }
  CHECK(inside == 5);
}

TEST_CASE("degree counts the letters of a reduced word", "[congruence]") {
  auto sys = build_system(type_a(3), 100);
  CHECK(degree(sys, sys.identity()) == 0);
  CHECK(degree(sys, sys.from_word({0, 1, 0})) == 2);
  CHECK(degree(sys, sys.from_word({0, 2})) == 2);
  CHECK(degree(sys, sys.longest()) == 3);
}
