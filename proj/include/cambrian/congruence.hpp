#pragma once

// Lattice congruences of the weak order.
//
// A congruence is stored as a partition of the element table. Generated
// congruences come from a union-find closure: whenever two classes merge
// along a pair (a, b), the pairs (a v z, b v z) and (a ^ z, b ^ z) are
// queued for every z. The merged pairs span each class, so compatibility
// with joins and meets follows by transitivity.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cambrian/coxeter.hpp"
#include "cambrian/sortable.hpp"
#include "cambrian/weak_order.hpp"

namespace cambrian {

using ElementPair = std::pair<Element, Element>;

/// Partition of the elements of a weak-order lattice.
///
/// Classes are sorted by the index of their meet ("bottom"); members are in
/// index order. For a congruence the bottom and top (the join of the class)
/// are members; for an arbitrary partition they need not be.
class CongruencePartition {
 public:
  /// Groups elements by equal label.
  static CongruencePartition from_labels(const WeakOrderLattice& L,
                                         std::span<const std::uint32_t> labels) {
    std::vector<std::vector<Element>> groups;
    std::unordered_map<std::uint32_t, std::size_t> slot;
    for (std::uint32_t i = 0; i < labels.size(); ++i) {
      auto [it, fresh] = slot.try_emplace(labels[i], groups.size());
      if (fresh) groups.emplace_back();
      groups[it->second].push_back(Element{i});
    }
    return from_classes(L, std::move(groups));
  }

  /// Throws std::invalid_argument unless `classes` partitions the lattice.
  static CongruencePartition from_classes(const WeakOrderLattice& L,
                                          std::vector<std::vector<Element>> classes) {
    CongruencePartition p;
    p.class_of_.assign(L.size(), kNone);
    std::vector<std::pair<Element, std::vector<Element>>> keyed;
    for (auto& cls : classes) {
      if (cls.empty()) throw std::invalid_argument("empty class");
      std::sort(cls.begin(), cls.end());
      Element lo = cls.front(), hi = cls.front();
      for (Element e : cls) {
        lo = L.meet(lo, e);
        hi = L.join(hi, e);
      }
      keyed.emplace_back(lo, std::move(cls));
      p.tops_.push_back(hi);
    }
    std::vector<std::size_t> order(keyed.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::pair(keyed[a].first, keyed[a].second.front()) <
             std::pair(keyed[b].first, keyed[b].second.front());
    });
    std::vector<Element> tops;
    for (std::size_t k : order) {
      for (Element e : keyed[k].second) {
        if (e.index >= L.size() || p.class_of_[e.index] != kNone) {
          throw std::invalid_argument("classes overlap or name unknown elements");
        }
        p.class_of_[e.index] = static_cast<std::uint32_t>(p.classes_.size());
      }
      p.bottoms_.push_back(keyed[k].first);
      tops.push_back(p.tops_[k]);
      p.classes_.push_back(std::move(keyed[k].second));
    }
    p.tops_ = std::move(tops);
    if (std::find(p.class_of_.begin(), p.class_of_.end(), kNone) != p.class_of_.end()) {
      throw std::invalid_argument("classes do not cover the lattice");
    }
    return p;
  }

  static CongruencePartition identity(const WeakOrderLattice& L) {
    std::vector<std::uint32_t> labels(L.size());
    std::iota(labels.begin(), labels.end(), 0U);
    return from_labels(L, labels);
  }

  static CongruencePartition full(const WeakOrderLattice& L) {
    std::vector<std::uint32_t> labels(L.size(), 0U);
    return from_labels(L, labels);
  }

  std::size_t num_classes() const { return classes_.size(); }
  std::size_t class_of(Element w) const { return class_of_[w.index]; }
  bool same_class(Element a, Element b) const {
    return class_of_[a.index] == class_of_[b.index];
  }
  const std::vector<std::vector<Element>>& classes() const { return classes_; }
  const std::vector<Element>& bottoms() const { return bottoms_; }
  const std::vector<Element>& tops() const { return tops_; }
  Element bottom_of(Element w) const { return bottoms_[class_of(w)]; }
  Element top_of(Element w) const { return tops_[class_of(w)]; }

  /// Every class of *this lies inside a class of `coarser`.
  bool refines(const CongruencePartition& coarser) const {
    for (const auto& cls : classes_) {
      for (Element e : cls) {
        if (!coarser.same_class(e, cls.front())) return false;
      }
    }
    return true;
  }

  friend bool operator==(const CongruencePartition& a, const CongruencePartition& b) {
    return a.classes_ == b.classes_;
  }

 private:
  static constexpr std::uint32_t kNone = ~std::uint32_t{0};

  std::vector<std::uint32_t> class_of_;
  std::vector<std::vector<Element>> classes_;
  std::vector<Element> bottoms_;
  std::vector<Element> tops_;
};

/// Outcome of the three-part congruence test. Converts to true on success.
struct CongruenceCheck {
  enum class Violation { None, NotInterval, BottomNotOrderPreserving, TopNotOrderPreserving };

  Violation violation = Violation::None;
  /// Elements witnessing the first failure.
  std::vector<Element> witness;

  explicit operator bool() const { return violation == Violation::None; }

  std::string describe() const {
    std::ostringstream os;
    switch (violation) {
      case Violation::None: return "ok";
      case Violation::NotInterval: os << "(i) class is not an interval"; break;
      case Violation::BottomNotOrderPreserving:
        os << "(ii) downward projection not order-preserving";
        break;
      case Violation::TopNotOrderPreserving:
        os << "(iii) upward projection not order-preserving";
        break;
    }
    os << " at";
    for (Element e : witness) os << ' ' << e.index;
    return os.str();
  }
};

/// An equivalence on a finite lattice is a congruence iff (i) classes are
/// intervals, (ii) x -> bottom of its class is order-preserving, and (iii)
/// x -> top of its class is order-preserving. Checked on cover relations.
inline CongruenceCheck is_lattice_congruence(const WeakOrderLattice& L,
                                             const CongruencePartition& p) {
  using V = CongruenceCheck::Violation;
  for (std::size_t k = 0; k < p.num_classes(); ++k) {
    Element lo = p.bottoms()[k], hi = p.tops()[k];
    const auto& members = p.classes()[k];
    auto span = L.interval(lo, hi);
    if (span != members) {
      return {V::NotInterval, members};
    }
  }
  for (std::uint32_t i = 0; i < L.size(); ++i) {
    Element x{i};
    for (Element y : L.covers_up(x)) {
      if (!L.leq(p.bottom_of(x), p.bottom_of(y))) {
        return {V::BottomNotOrderPreserving, {x, y}};
      }
    }
  }
  for (std::uint32_t i = 0; i < L.size(); ++i) {
    Element x{i};
    for (Element y : L.covers_up(x)) {
      if (!L.leq(p.top_of(x), p.top_of(y))) {
        return {V::TopNotOrderPreserving, {x, y}};
      }
    }
  }
  return {};
}

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0U);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::uint32_t> parent_;
};

}  // namespace detail

/// Finest congruence of the lower interval [1, top] identifying each pair;
/// elements outside the interval stay singletons. With top = w0 this is the
/// congruence of the whole weak order generated by `pairs`.
inline CongruencePartition smallest_congruence(const WeakOrderLattice& L,
                                               std::span<const ElementPair> pairs,
                                               Element top) {
  std::vector<Element> domain;
  for (std::uint32_t i = 0; i < L.size(); ++i) {
    if (L.leq(Element{i}, top)) domain.push_back(Element{i});
  }
  detail::UnionFind uf(L.size());
  std::deque<ElementPair> queue(pairs.begin(), pairs.end());
  for (auto [a, b] : pairs) {
    if (!L.leq(a, top) || !L.leq(b, top)) {
      throw std::invalid_argument("generating pair outside the lattice domain");
    }
  }
  while (!queue.empty()) {
    auto [a, b] = queue.front();
    queue.pop_front();
    if (!uf.unite(a.index, b.index)) continue;
    for (Element z : domain) {
      queue.emplace_back(L.join(a, z), L.join(b, z));
      queue.emplace_back(L.meet(a, z), L.meet(b, z));
    }
  }
  std::vector<std::uint32_t> labels(L.size());
  for (std::uint32_t i = 0; i < L.size(); ++i) labels[i] = uf.find(i);
  return CongruencePartition::from_labels(L, labels);
}

inline CongruencePartition smallest_congruence(const WeakOrderLattice& L,
                                               std::span<const ElementPair> pairs) {
  return smallest_congruence(L, pairs, L.top());
}

inline const JoinIrreducible& require_join_irreducible(const WeakOrderLattice& L, Element j) {
  const auto& jis = L.join_irreducibles();
  auto it = std::find_if(jis.begin(), jis.end(),
                         [&](const JoinIrreducible& x) { return x.element == j; });
  if (it == jis.end()) {
    throw NotJoinIrreducible("element " + std::to_string(j.index) +
                             " is not join-irreducible");
  }
  return *it;
}

/// Cg(j): the smallest congruence contracting j_* <. j.
inline CongruencePartition cg(const WeakOrderLattice& L, Element j) {
  const auto& ji = require_join_irreducible(L, j);
  ElementPair pair{ji.lower_cover, ji.element};
  return smallest_congruence(L, std::span(&pair, 1));
}

/// Join-irreducibles j with j equivalent to j_*, in index order.
inline std::vector<Element> contracted_join_irreducibles(const WeakOrderLattice& L,
                                                         const CongruencePartition& p) {
  std::vector<Element> out;
  for (const auto& ji : L.join_irreducibles()) {
    if (p.same_class(ji.element, ji.lower_cover)) out.push_back(ji.element);
  }
  return out;
}

/// j2 <=_Con j1: every congruence contracting j1 contracts j2.
inline bool forcing_leq(const WeakOrderLattice& L, Element j2, Element j1) {
  const auto& lower = require_join_irreducible(L, j2);
  return cg(L, j1).same_class(lower.element, lower.lower_cover);
}

/// The forcing order on join-irreducibles: leq[a][b] iff ji[a] <=_Con ji[b].
struct ForcingPoset {
  std::vector<JoinIrreducible> ji;
  std::vector<std::vector<bool>> leq;
};

inline ForcingPoset forcing_poset(const WeakOrderLattice& L) {
  ForcingPoset out;
  out.ji = L.join_irreducibles();
  const std::size_t n = out.ji.size();
  out.leq.assign(n, std::vector<bool>(n, false));
  for (std::size_t b = 0; b < n; ++b) {
    auto theta = cg(L, out.ji[b].element);
    for (std::size_t a = 0; a < n; ++a) {
      out.leq[a][b] = theta.same_class(out.ji[a].element, out.ji[a].lower_cover);
    }
  }
  return out;
}

/// Smallest congruence contracting every listed join-irreducible.
inline CongruencePartition congruence_contracting(const WeakOrderLattice& L,
                                                  std::span<const Element> jis,
                                                  Element top) {
  std::vector<ElementPair> pairs;
  for (Element j : jis) {
    pairs.emplace_back(require_join_irreducible(L, j).lower_cover, j);
  }
  return smallest_congruence(L, pairs, top);
}

inline CongruencePartition congruence_contracting(const WeakOrderLattice& L,
                                                  std::span<const Element> jis) {
  return congruence_contracting(L, jis, L.top());
}

/// Element with reduced word t s t s ... of the given length.
inline Element alternating_element(const CoxeterSystem& sys, Generator t, Generator s,
                                   std::size_t length) {
  Element w = sys.identity();
  for (std::size_t k = 0; k < length; ++k) w = sys.right_mul(w, k % 2 == 0 ? t : s);
  return w;
}

/// Generating pairs of the Cambrian congruence: for each oriented edge
/// s -> t, the element t is identified with tsts... of length m(s,t) - 1.
inline std::vector<ElementPair> cambrian_generators(const CoxeterElement& c) {
  const CoxeterSystem& sys = c.system();
  std::vector<ElementPair> pairs;
  for (auto [s, t] : c.orientation()) {
    auto m = static_cast<std::size_t>(sys.matrix()(s, t));
    pairs.emplace_back(sys.generator(t), alternating_element(sys, t, s, m - 1));
  }
  return pairs;
}

/// The defining join-irreducibles tst... of lengths 2..m(s,t)-1, per edge.
inline std::vector<Element> defining_join_irreducibles(const CoxeterElement& c) {
  const CoxeterSystem& sys = c.system();
  std::vector<Element> out;
  for (auto [s, t] : c.orientation()) {
    auto m = static_cast<std::size_t>(sys.matrix()(s, t));
    for (std::size_t len = 2; len + 1 <= m; ++len) {
      out.push_back(alternating_element(sys, t, s, len));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// The c-Cambrian congruence. For a Coxeter element of a parabolic W_J the
/// congruence lives on the lower interval W_J = [1, (w0)_J].
inline CongruencePartition cambrian_congruence(const WeakOrderLattice& L,
                                               const CoxeterElement& c) {
  auto pairs = cambrian_generators(c);
  return smallest_congruence(L, pairs, L.longest_in(c.support()));
}

/// Size of the smallest J with w in W_J: the letters of a reduced word.
inline std::size_t degree(const CoxeterSystem& sys, Element w) {
  GeneratorSet letters;
  for (Generator s : sys.reduced_word(w)) letters = letters.with(s);
  return letters.size();
}

/// A finite lattice given as a subset of the weak order, ordered by the
/// weak order, with its Hasse diagram in local indices.
struct InducedLattice {
  std::vector<Element> elements;
  std::vector<std::pair<std::size_t, std::size_t>> covers;

  friend bool operator==(const InducedLattice&, const InducedLattice&) = default;
};

/// Subposet of the weak order induced by `subset`, covers recomputed inside
/// the subposet.
inline InducedLattice induced_subposet(const WeakOrderLattice& L,
                                       std::vector<Element> subset) {
  std::sort(subset.begin(), subset.end());
  InducedLattice out;
  out.elements = subset;
  const std::size_t n = subset.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !L.leq(subset[a], subset[b])) continue;
      bool cover = true;
      for (std::size_t m = 0; m < n && cover; ++m) {
        if (m == a || m == b) continue;
        cover = !(L.leq(subset[a], subset[m]) && L.leq(subset[m], subset[b]));
      }
      if (cover) out.covers.emplace_back(a, b);
    }
  }
  std::sort(out.covers.begin(), out.covers.end());
  return out;
}

/// Quotient lattice L / Theta on class ids (ordered by bottom index). Class
/// [a] <= [b] iff bottom(a) <= bottom(b); joins and meets are induced by
/// representatives. Throws NotACongruence if `p` fails the congruence test.
struct QuotientLattice {
  InducedLattice order;  // elements are the class bottoms
  std::vector<std::vector<std::size_t>> join;
  std::vector<std::vector<std::size_t>> meet;
};

inline QuotientLattice quotient_lattice(const WeakOrderLattice& L,
                                        const CongruencePartition& p) {
  if (auto check = is_lattice_congruence(L, p); !check) {
    throw NotACongruence(check.describe());
  }
  QuotientLattice q;
  q.order = induced_subposet(L, p.bottoms());
  const std::size_t n = p.num_classes();
  q.join.assign(n, std::vector<std::size_t>(n));
  q.meet.assign(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      q.join[a][b] = p.class_of(L.join(p.bottoms()[a], p.bottoms()[b]));
      q.meet[a][b] = p.class_of(L.meet(p.bottoms()[a], p.bottoms()[b]));
    }
  }
  return q;
}

}  // namespace cambrian
