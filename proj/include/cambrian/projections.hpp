#pragma once

// The projections pi_down^c and pi_up_c, the congruence Theta_c whose
// classes are their common fibers, and the Cambrian lattice.

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cambrian/congruence.hpp"
#include "cambrian/coxeter.hpp"
#include "cambrian/sortable.hpp"
#include "cambrian/weak_order.hpp"

namespace cambrian {

/// pi_down and pi_up for one Coxeter element, over the whole group.
struct ProjectionTable {
  CoxeterElement context;
  std::vector<Element> down;
  std::vector<Element> up;
};

/// Memoizing evaluator of the projections for any Coxeter element of any
/// standard parabolic subgroup. Parabolic subproblems stay inside the
/// ambient element table. Not thread-safe; use one per thread.
class Projector {
 public:
  explicit Projector(const WeakOrderLattice& L) : L_(&L) {}

  const WeakOrderLattice& lattice() const { return *L_; }

  /// pi_down^c(w): the largest c-sortable element below w. Recursion:
  /// for s initial in c, s * pi_down^{scs}(sw) if s is a left descent of w,
  /// else pi_down^{sc}(w_<s>). `first_letter` overrides the choice of s at
  /// the top level only.
  Element down(const CoxeterElement& c, Element w,
               std::optional<Generator> first_letter = std::nullopt) {
    require_member(c, w);
    std::size_t node = node_for(c);
    if (!first_letter) return Element{down_rec(node, w)};
    return step(node, w, *first_letter);
  }

  /// pi_up_c(w) = pi_down^{c^-1}(w w0_J) w0_J, where w0_J is the longest
  /// element of the subgroup c lives in.
  Element up(const CoxeterElement& c, Element w) {
    require_member(c, w);
    const CoxeterSystem& sys = L_->system();
    Element w0 = L_->longest_in(c.support());
    Element flipped = sys.multiply(w, w0);
    return sys.multiply(down(c.inverse(), flipped), w0);
  }

  /// Both projections for every element; `c` must be a Coxeter element of W.
  ProjectionTable table(const CoxeterElement& c) {
    if (c.support() != L_->system().generators()) {
      throw std::invalid_argument("projection tables need a Coxeter element of W");
    }
    ProjectionTable t{c, {}, {}};
    const std::size_t n = L_->size();
    t.down.resize(n);
    t.up.resize(n);
    std::size_t fwd = node_for(c);
    std::size_t back = node_for(c.inverse());
    for (std::uint32_t i = 0; i < n; ++i) t.down[i] = Element{down_rec(fwd, Element{i})};
    for (std::uint32_t i = 0; i < n; ++i) {
      Element flipped = L_->times_w0(Element{i});
      t.up[i] = L_->times_w0(Element{down_rec(back, flipped)});
    }
    return t;
  }

 private:
  static constexpr std::uint32_t kUnset = ~std::uint32_t{0};

  struct Node {
    CoxeterElement context;
    std::vector<std::uint32_t> memo;
    std::vector<std::int64_t> rotated;
    std::vector<std::int64_t> restricted;
  };

  void require_member(const CoxeterElement& c, Element w) const {
    if (!L_->in_parabolic(w, c.support())) {
      throw std::invalid_argument("element " + std::to_string(w.index) +
                                  " is not in the subgroup of " + c.to_string());
    }
  }

  std::size_t node_for(const CoxeterElement& c) {
    std::string key;
    for (Generator s : c.word()) {
      key += std::to_string(s);
      key += ',';
    }
    auto [it, fresh] = index_.try_emplace(key, nodes_.size());
    if (fresh) {
      const std::size_t rank = L_->system().rank();
      nodes_.push_back(Node{c, std::vector<std::uint32_t>(L_->size(), kUnset),
                            std::vector<std::int64_t>(rank, -1),
                            std::vector<std::int64_t>(rank, -1)});
    }
    return it->second;
  }

  std::uint32_t down_rec(std::size_t node, Element w) {
    if (w.index == 0) return 0;
    std::uint32_t& slot = nodes_[node].memo[w.index];
    if (slot != kUnset) return slot;
    Generator s = nodes_[node].context.initial_letters().first();
    Element r = step(node, w, s);
    nodes_[node].memo[w.index] = r.index;
    return r.index;
  }

  Element step(std::size_t node, Element w, Generator s) {
    const CoxeterSystem& sys = L_->system();
    if (w == sys.identity()) return w;
    if (!nodes_[node].context.initial_letters().contains(s)) {
      throw NotInitial("s" + std::to_string(s) + " is not initial in " +
                       nodes_[node].context.to_string());
    }
    if (sys.left_descents(w).contains(s)) {
      std::size_t child = rotated(node, s);
      return sys.left_mul(Element{down_rec(child, sys.left_mul(w, s))}, s);
    }
    std::size_t child = restricted(node, s);
    Element wj = L_->parabolic_projection(w, nodes_[child].context.support());
    return Element{down_rec(child, wj)};
  }

  std::size_t rotated(std::size_t node, Generator s) {
    if (nodes_[node].rotated[s] < 0) {
      auto next = nodes_[node].context.rotate(s);
      std::size_t id = node_for(next);
      nodes_[node].rotated[s] = static_cast<std::int64_t>(id);
    }
    return static_cast<std::size_t>(nodes_[node].rotated[s]);
  }

  std::size_t restricted(std::size_t node, Generator s) {
    if (nodes_[node].restricted[s] < 0) {
      auto next = nodes_[node].context.restrict_without(s);
      std::size_t id = node_for(next);
      nodes_[node].restricted[s] = static_cast<std::int64_t>(id);
    }
    return static_cast<std::size_t>(nodes_[node].restricted[s]);
  }

  const WeakOrderLattice* L_;
  std::deque<Node> nodes_;
  std::unordered_map<std::string, std::size_t> index_;
};

inline Element pi_down(const WeakOrderLattice& L, const CoxeterElement& c, Element w) {
  return Projector(L).down(c, w);
}

inline Element pi_up(const WeakOrderLattice& L, const CoxeterElement& c, Element w) {
  return Projector(L).up(c, w);
}

/// c-antisortable: w w0 is c^{-1}-sortable.
inline bool is_antisortable(const WeakOrderLattice& L, const CoxeterElement& c, Element w) {
  return is_sortable(c.inverse(), L.times_w0(w));
}

/// Theta_c from precomputed projections: the fibers of pi_down. Throws
/// InternalInvariantViolation if a fiber is not [pi_down(w), pi_up(w)] or
/// the partition fails the congruence test.
inline CongruencePartition theta_congruence(const WeakOrderLattice& L,
                                            const ProjectionTable& t) {
  std::vector<std::uint32_t> labels(L.size());
  for (std::size_t i = 0; i < L.size(); ++i) labels[i] = t.down[i].index;
  auto p = CongruencePartition::from_labels(L, labels);
  for (std::size_t k = 0; k < p.num_classes(); ++k) {
    Element lo = p.bottoms()[k];
    Element hi = t.up[lo.index];
    if (p.classes()[k] != L.interval(lo, hi) || p.tops()[k] != hi) {
      throw InternalInvariantViolation("fiber of pi_down at " + std::to_string(lo.index) +
                                       " is not the interval [pi_down, pi_up]");
    }
  }
  if (auto check = is_lattice_congruence(L, p); !check) {
    throw InternalInvariantViolation("Theta_c is not a congruence: " + check.describe());
  }
  return p;
}

inline CongruencePartition theta_congruence(const WeakOrderLattice& L,
                                            const CoxeterElement& c) {
  Projector proj(L);
  return theta_congruence(L, proj.table(c));
}

/// The weak order restricted to c-sortable elements, certified equal to the
/// quotient of the weak order by Theta_c.
inline InducedLattice cambrian_lattice(const WeakOrderLattice& L, const CoxeterElement& c) {
  auto sortables = enumerate_sortables(L, c);
  auto lattice = induced_subposet(L, sortables);
  auto theta = theta_congruence(L, c);
  auto quotient = quotient_lattice(L, theta);
  if (!(quotient.order == lattice)) {
    throw InternalInvariantViolation("Cambrian lattice differs from the quotient by Theta_c");
  }
  return lattice;
}

}  // namespace cambrian
