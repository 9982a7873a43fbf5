#pragma once

// The right weak order on a finite Coxeter group.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cambrian/coxeter.hpp"

namespace cambrian {

/// A join-irreducible j together with its unique lower cover j_*.
struct JoinIrreducible {
  Element element;
  Element lower_cover;

  friend constexpr bool operator==(JoinIrreducible, JoinIrreducible) = default;
};

class WeakOrderLattice {
 public:
  /// Groups up to this order get precomputed join/meet tables.
  static constexpr std::size_t kTableLimit = 1024;
  /// Up to this rank the reflection sets of every W_J are built eagerly.
  static constexpr std::size_t kEagerRankLimit = 12;

  /// Keeps a reference to `sys`, which must outlive the lattice.
  explicit WeakOrderLattice(const CoxeterSystem& sys)
      : sys_(&sys), cache_(std::make_shared<ReflectionCache>()) {
    const std::size_t order = sys.size();
    up_.resize(order);
    down_.resize(order);
    times_w0_.resize(order);
    ReflectionSet all;
    for (std::size_t i = 0; i < sys.num_reflections(); ++i) all.set(i);
    for (std::uint32_t i = 0; i < order; ++i) {
      Element w{i};
      for (Generator s = 0; s < sys.rank(); ++s) {
        Element ws = sys.right_mul(w, s);
        if (sys.length(ws) > sys.length(w)) {
          up_[i].push_back(ws);
        } else {
          down_[i].push_back(ws);
        }
      }
      if (down_[i].size() == 1) {
        join_irreducibles_.push_back({w, down_[i].front()});
      }
      times_w0_[i] = *sys.find(all & ~sys.inversions(w));
    }
    if (sys.rank() <= kEagerRankLimit) {
      eager_reflections_.resize(std::size_t{1} << sys.rank());
      for (std::uint32_t bits = 0; bits < eager_reflections_.size(); ++bits) {
        eager_reflections_[bits] = sys.reflections_in(GeneratorSet::from_bits(bits));
      }
    }
    if (order <= kTableLimit) {
      join_table_.resize(order * order);
      meet_table_.resize(order * order);
      for (std::uint32_t x = 0; x < order; ++x) {
        for (std::uint32_t y = x; y < order; ++y) {
          Element j = descent_join(Element{x}, Element{y});
          Element m = descent_meet(Element{x}, Element{y});
          join_table_[x * order + y] = join_table_[y * order + x] = j.index;
          meet_table_[x * order + y] = meet_table_[y * order + x] = m.index;
        }
      }
    }
  }

  const CoxeterSystem& system() const { return *sys_; }
  std::size_t size() const { return sys_->size(); }
  Element bottom() const { return sys_->identity(); }
  Element top() const { return sys_->longest(); }

  const std::vector<Element>& covers_up(Element w) const { return up_[w.index]; }
  const std::vector<Element>& covers_down(Element w) const {
    return down_[w.index];
  }

  /// u <= v, i.e. I(u) is contained in I(v).
  bool leq(Element u, Element v) const {
    return (sys_->inversions(u) & ~sys_->inversions(v)).none();
  }

  Element join(Element x, Element y) const {
    if (!join_table_.empty()) return Element{join_table_[x.index * size() + y.index]};
    return descent_join(x, y);
  }

  Element meet(Element x, Element y) const {
    if (!meet_table_.empty()) return Element{meet_table_[x.index * size() + y.index]};
    return descent_meet(x, y);
  }

  /// Reference join: the first element in length order whose inversion set
  /// contains I(x) and I(y). O(|W|); kept as an oracle.
  Element join_by_scan(Element x, Element y) const {
    ReflectionSet need = sys_->inversions(x) | sys_->inversions(y);
    std::size_t start = sys_->length_begin(std::max(sys_->length(x), sys_->length(y)));
    for (std::size_t k = start; k < size(); ++k) {
      Element u{static_cast<std::uint32_t>(k)};
      if ((need & ~sys_->inversions(u)).none()) return u;
    }
    throw InternalInvariantViolation("join does not exist");
  }

  /// Reference meet, scanning downward in length order.
  Element meet_by_scan(Element x, Element y) const {
    ReflectionSet allow = sys_->inversions(x) & sys_->inversions(y);
    std::size_t end = sys_->length_begin(std::min(sys_->length(x), sys_->length(y)) + 1);
    for (std::size_t k = end; k-- > 0;) {
      Element u{static_cast<std::uint32_t>(k)};
      if ((sys_->inversions(u) & ~allow).none()) return u;
    }
    throw InternalInvariantViolation("meet does not exist");
  }

  /// Reflections of W_J, computed once per J.
  ReflectionSet parabolic_reflections(GeneratorSet J) const {
    if (!eager_reflections_.empty()) return eager_reflections_[J.bits()];
    std::lock_guard lock(cache_->mutex);
    auto [it, inserted] = cache_->sets.try_emplace(J.bits());
    if (inserted) it->second = sys_->reflections_in(J);
    return it->second;
  }

  bool in_parabolic(Element w, GeneratorSet J) const {
    return (sys_->inversions(w) & ~parabolic_reflections(J)).none();
  }

  /// w_J, the unique element of W_J with I(w_J) = I(w) intersected with W_J.
  Element parabolic_projection(Element w, GeneratorSet J) const {
    return *sys_->find(sys_->inversions(w) & parabolic_reflections(J));
  }

  /// (w_J, remainder) with w = w_J * remainder and the remainder lengthened
  /// on the left by every s in J.
  std::pair<Element, Element> parabolic_factorization(Element w,
                                                      GeneratorSet J) const {
    Element wj = parabolic_projection(w, J);
    return {wj, sys_->multiply(sys_->inverse(wj), w)};
  }

  /// (w0)_J, the top of the lower interval W_J.
  Element longest_in(GeneratorSet J) const {
    return parabolic_projection(top(), J);
  }

  Element times_w0(Element w) const { return times_w0_[w.index]; }

  /// cov(w): reflections t with tw = ws covered by w.
  ReflectionSet cover_reflections(Element w) const {
    ReflectionSet out;
    for (Element v : down_[w.index]) {
      out |= sys_->inversions(w) & ~sys_->inversions(v);
    }
    return out;
  }

  const std::vector<JoinIrreducible>& join_irreducibles() const {
    return join_irreducibles_;
  }

  bool is_join_irreducible(Element w) const { return down_[w.index].size() == 1; }

  /// Interval [u, v] in index order; empty when u is not below v.
  std::vector<Element> interval(Element u, Element v) const {
    std::vector<Element> out;
    if (!leq(u, v)) return out;
    const auto& iu = sys_->inversions(u);
    const auto& iv = sys_->inversions(v);
    for (std::size_t k = sys_->length_begin(sys_->length(u));
         k < sys_->length_begin(sys_->length(v) + 1); ++k) {
      const auto& ik = sys_->inversions(Element{static_cast<std::uint32_t>(k)});
      if ((iu & ~ik).none() && (ik & ~iv).none()) {
        out.push_back(Element{static_cast<std::uint32_t>(k)});
      }
    }
    return out;
  }

 private:
  struct ReflectionCache {
    std::mutex mutex;
    std::unordered_map<std::uint32_t, ReflectionSet> sets;
  };

  // s <= x iff s is a left descent of x, and left multiplication by s maps
  // [s, w0] isomorphically onto [1, s w0]. So x ^ y = s (sx ^ sy) for a
  // common left descent s, and x ^ y = 1 when there is none.
  Element descent_meet(Element x, Element y) const {
    Word prefix;
    for (;;) {
      GeneratorSet common = sys_->left_descents(x) & sys_->left_descents(y);
      if (common.empty()) break;
      Generator s = common.first();
      prefix.push_back(s);
      x = sys_->left_mul(x, s);
      y = sys_->left_mul(y, s);
    }
    Element out = sys_->identity();
    for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) out = sys_->left_mul(out, *it);
    return out;
  }

  // w -> w w0 is an antiautomorphism.
  Element descent_join(Element x, Element y) const {
    return times_w0_[descent_meet(times_w0_[x.index], times_w0_[y.index]).index];
  }

  const CoxeterSystem* sys_;
  std::vector<std::vector<Element>> up_;
  std::vector<std::vector<Element>> down_;
  std::vector<Element> times_w0_;
  std::vector<JoinIrreducible> join_irreducibles_;
  std::vector<std::uint32_t> join_table_;
  std::vector<std::uint32_t> meet_table_;
  std::vector<ReflectionSet> eager_reflections_;
  std::shared_ptr<ReflectionCache> cache_;
};

inline WeakOrderLattice build_lattice(const CoxeterSystem& sys) {
  return WeakOrderLattice(sys);
}

}  // namespace cambrian
