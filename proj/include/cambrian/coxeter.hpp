#pragma once

// Finite Coxeter groups built from a Coxeter matrix.
//
// Elements are enumerated once, by breadth-first search over right
// multiplication, and are identified by their (left) inversion sets. The
// reflection representation is only used to discover the positive roots and
// the action of each simple reflection on them; after that every operation is
// exact table lookup.

#include <algorithm>
#include <bit>
#include <bitset>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cambrian/errors.hpp"

namespace cambrian {

using Generator = std::size_t;
using Word = std::vector<Generator>;

inline constexpr std::size_t kMaxRank = 32;
inline constexpr std::size_t kMaxReflections = 128;

/// Set of reflections, indexed by positive-root index.
using ReflectionSet = std::bitset<kMaxReflections>;

/// A subset J of the simple generators.
class GeneratorSet {
 public:
  constexpr GeneratorSet() = default;

  static constexpr GeneratorSet from_bits(std::uint32_t bits) {
    GeneratorSet g;
    g.bits_ = bits;
    return g;
  }
  static constexpr GeneratorSet all(std::size_t rank) {
    return from_bits(rank >= 32 ? ~std::uint32_t{0}
                                : (std::uint32_t{1} << rank) - 1);
  }
  static GeneratorSet of(std::initializer_list<Generator> gens) {
    GeneratorSet g;
    for (Generator s : gens) g = g.with(s);
    return g;
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool contains(Generator s) const { return (bits_ >> s) & 1U; }
  constexpr GeneratorSet with(Generator s) const {
    return from_bits(bits_ | (std::uint32_t{1} << s));
  }
  constexpr GeneratorSet without(Generator s) const {
    return from_bits(bits_ & ~(std::uint32_t{1} << s));
  }
  constexpr std::size_t size() const {
    return static_cast<std::size_t>(std::popcount(bits_));
  }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool is_subset_of(GeneratorSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  /// Lowest-index member; undefined on the empty set.
  constexpr Generator first() const {
    return static_cast<Generator>(std::countr_zero(bits_));
  }

  std::vector<Generator> members() const {
    std::vector<Generator> out;
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) {
      out.push_back(static_cast<Generator>(std::countr_zero(b)));
    }
    return out;
  }

  friend constexpr GeneratorSet operator|(GeneratorSet a, GeneratorSet b) {
    return from_bits(a.bits_ | b.bits_);
  }
  friend constexpr GeneratorSet operator&(GeneratorSet a, GeneratorSet b) {
    return from_bits(a.bits_ & b.bits_);
  }
  friend constexpr bool operator==(GeneratorSet, GeneratorSet) = default;

 private:
  std::uint32_t bits_ = 0;
};

/// Opaque handle to a group element: its index in the system's element table.
/// Index 0 is always the identity; indices increase with length.
struct Element {
  std::uint32_t index = 0;

  friend constexpr auto operator<=>(Element, Element) = default;
};

enum class Side { Left, Right };

/// Symmetric matrix of the orders m(s,t).
class CoxeterMatrix {
 public:
  /// Sentinel for m(s,t) = infinity. Accepted in memory, rejected by
  /// build_system (only finite groups are supported).
  static constexpr int kInfinity = 0;

  CoxeterMatrix() = default;

  /// Rank-n matrix with every pair commuting (m = 2).
  explicit CoxeterMatrix(std::size_t rank) : rank_(rank), m_(rank * rank, 2) {
    for (std::size_t s = 0; s < rank; ++s) m_[s * rank + s] = 1;
  }

  static CoxeterMatrix from_rows(const std::vector<std::vector<int>>& rows) {
    CoxeterMatrix out(rows.size());
    for (std::size_t s = 0; s < rows.size(); ++s) {
      if (rows[s].size() != rows.size()) {
        throw BadMatrix("Coxeter matrix must be square");
      }
      for (std::size_t t = 0; t < rows.size(); ++t) {
        out.m_[s * out.rank_ + t] = rows[s][t];
      }
    }
    out.validate();
    return out;
  }

  std::size_t rank() const { return rank_; }

  int operator()(Generator s, Generator t) const { return m_[s * rank_ + t]; }

  /// Sets m(s,t) = m(t,s) = m.
  CoxeterMatrix& set(Generator s, Generator t, int m) {
    m_[s * rank_ + t] = m;
    m_[t * rank_ + s] = m;
    return *this;
  }

  bool commute(Generator s, Generator t) const { return (*this)(s, t) == 2; }

  bool has_infinity() const {
    for (std::size_t s = 0; s < rank_; ++s) {
      for (std::size_t t = 0; t < rank_; ++t) {
        if (s != t && (*this)(s, t) == kInfinity) return true;
      }
    }
    return false;
  }

  /// Throws BadMatrix unless the matrix is symmetric with unit diagonal and
  /// off-diagonal entries >= 2 (or the infinity sentinel).
  void validate() const {
    if (rank_ == 0) throw BadMatrix("rank must be positive");
    if (rank_ > kMaxRank) {
      throw BadMatrix("rank " + std::to_string(rank_) + " exceeds " +
                      std::to_string(kMaxRank));
    }
    for (std::size_t s = 0; s < rank_; ++s) {
      if ((*this)(s, s) != 1) {
        throw BadMatrix("diagonal entry m(s" + std::to_string(s) + ",s" +
                        std::to_string(s) + ") must be 1");
      }
      for (std::size_t t = 0; t < rank_; ++t) {
        if ((*this)(s, t) != (*this)(t, s)) {
          throw BadMatrix("matrix is not symmetric");
        }
        if (s != t && (*this)(s, t) != kInfinity && (*this)(s, t) < 2) {
          throw BadMatrix("off-diagonal entries must be at least 2");
        }
      }
    }
  }

  friend bool operator==(const CoxeterMatrix&, const CoxeterMatrix&) = default;

 private:
  std::size_t rank_ = 0;
  std::vector<int> m_;
};

/// A positive root's image under a group element: a root index and a sign.
struct SignedRoot {
  std::size_t root = 0;
  bool negative = false;
};

class CoxeterSystem;
CoxeterSystem build_system(const CoxeterMatrix& matrix, std::size_t max_order);

/// A finite Coxeter group with its full element table. Immutable once built.
class CoxeterSystem {
 public:
  const CoxeterMatrix& matrix() const { return matrix_; }
  std::size_t rank() const { return matrix_.rank(); }
  std::size_t size() const { return inversions_.size(); }
  std::size_t num_reflections() const { return roots_.size(); }
  GeneratorSet generators() const { return GeneratorSet::all(rank()); }

  /// Positive roots in simple-root coordinates; root i < rank is alpha_i.
  const std::vector<std::vector<double>>& positive_roots() const {
    return roots_;
  }
  /// Generators with a nonzero coordinate in root i.
  GeneratorSet root_support(std::size_t i) const { return root_support_[i]; }
  /// The reflection of root i as a group element.
  Element reflection(std::size_t i) const { return reflections_[i]; }

  Element identity() const { return Element{0}; }
  Element longest() const { return Element{longest_}; }
  Element generator(Generator s) const { return right_mul(identity(), s); }

  std::size_t length(Element w) const { return lengths_[w.index]; }
  const ReflectionSet& inversions(Element w) const {
    return inversions_[w.index];
  }
  GeneratorSet left_descents(Element w) const { return left_desc_[w.index]; }
  GeneratorSet right_descents(Element w) const { return right_desc_[w.index]; }

  Element right_mul(Element w, Generator s) const {
    return Element{right_[w.index * rank() + s]};
  }
  Element left_mul(Element w, Generator s) const {
    return Element{left_[w.index * rank() + s]};
  }
  Element apply(Element w, Generator s, Side side) const {
    return side == Side::Left ? left_mul(w, s) : right_mul(w, s);
  }

  Element inverse(Element w) const { return Element{inverse_[w.index]}; }

  /// Group product a*b.
  Element multiply(Element a, Element b) const {
    for (Generator s : reduced_word(b)) a = right_mul(a, s);
    return a;
  }

  /// Evaluates an arbitrary (not necessarily reduced) word.
  Element from_word(std::span<const Generator> word) const {
    Element w = identity();
    for (Generator s : word) {
      check_generator(s);
      w = right_mul(w, s);
    }
    return w;
  }
  Element from_word(std::initializer_list<Generator> word) const {
    return from_word(std::span<const Generator>(word.begin(), word.size()));
  }

  /// Shortlex-first reduced word.
  Word reduced_word(Element w) const {
    Word out(length(w));
    for (std::size_t k = out.size(); k-- > 0;) {
      out[k] = last_letter_[w.index];
      w = Element{parent_[w.index]};
    }
    return out;
  }

  /// Image of positive root `root` under w, as a signed root.
  SignedRoot root_image(Element w, std::size_t root) const {
    std::int16_t v = action_[w.index * num_reflections() + root];
    return SignedRoot{static_cast<std::size_t>(std::abs(v) - 1), v < 0};
  }

  std::optional<Element> find(const ReflectionSet& inversions) const {
    auto it = by_inversions_.find(inversions);
    if (it == by_inversions_.end()) return std::nullopt;
    return Element{it->second};
  }

  /// Reflections of the standard parabolic subgroup W_J.
  ReflectionSet reflections_in(GeneratorSet J) const {
    ReflectionSet out;
    for (std::size_t i = 0; i < num_reflections(); ++i) {
      if (root_support_[i].is_subset_of(J)) out.set(i);
    }
    return out;
  }

  /// Elements sorted by length occupy [length_begin(k), length_begin(k+1)).
  std::size_t length_begin(std::size_t k) const { return length_begin_[k]; }

  void check_generator(Generator s) const {
    if (s >= rank()) {
      throw InvalidGenerator("generator s" + std::to_string(s) +
                             " out of range for rank " +
                             std::to_string(rank()));
    }
  }

 private:
  friend CoxeterSystem build_system(const CoxeterMatrix&, std::size_t);

  CoxeterMatrix matrix_;
  std::vector<std::vector<double>> roots_;
  std::vector<GeneratorSet> root_support_;
  std::vector<Element> reflections_;

  std::vector<ReflectionSet> inversions_;
  std::vector<std::uint32_t> lengths_;
  std::vector<GeneratorSet> left_desc_;
  std::vector<GeneratorSet> right_desc_;
  std::vector<std::uint32_t> right_;
  std::vector<std::uint32_t> left_;
  std::vector<std::uint32_t> inverse_;
  std::vector<std::uint32_t> parent_;
  std::vector<Generator> last_letter_;
  std::vector<std::int16_t> action_;  // +/-(root+1), row per element
  std::vector<std::size_t> length_begin_;
  std::unordered_map<ReflectionSet, std::uint32_t> by_inversions_;
  std::uint32_t longest_ = 0;
};

namespace detail {

inline constexpr double kRootTolerance = 1e-8;

struct RootClosure {
  std::vector<std::vector<double>> roots;
  // simple_action[s][i] = +/-(j+1) where s(beta_i) = +/- beta_j
  std::vector<std::vector<std::int16_t>> simple_action;
  // roots[i] = parent_reflection[i].second applied to roots[parent.first]
  std::vector<std::pair<std::size_t, Generator>> parent;
};

inline RootClosure close_roots(const CoxeterMatrix& m) {
  const std::size_t n = m.rank();
  // Finite groups with at most kMaxReflections reflections stay under this;
  // anything that grows past it is infinite or unrepresentable.
  const std::size_t cap = kMaxReflections;
  std::vector<double> form(n * n);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      form[s * n + t] =
          s == t ? 1.0 : -std::cos(std::numbers::pi / static_cast<double>(m(s, t)));
    }
  }

  RootClosure rc;
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<double> e(n, 0.0);
    e[s] = 1.0;
    rc.roots.push_back(std::move(e));
    rc.parent.emplace_back(s, s);
  }

  auto locate = [&](const std::vector<double>& v) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < rc.roots.size(); ++i) {
      bool same = true;
      for (std::size_t k = 0; k < n && same; ++k) {
        same = std::abs(rc.roots[i][k] - v[k]) <= kRootTolerance;
      }
      if (same) return i;
    }
    return std::nullopt;
  };

  std::vector<std::vector<std::int64_t>> images(n);
  for (std::size_t i = 0; i < rc.roots.size(); ++i) {
    for (Generator s = 0; s < n; ++s) {
      if (i == s) {
        images[s].push_back(-static_cast<std::int64_t>(s + 1));
        continue;
      }
      std::vector<double> v = rc.roots[i];
      double pairing = 0.0;
      for (std::size_t k = 0; k < n; ++k) pairing += v[k] * form[k * n + s];
      v[s] -= 2.0 * pairing;
      for (double x : v) {
        if (x < -kRootTolerance) {
          throw RootClosureDiverged(
              "simple reflection produced a negative root; the matrix is "
              "numerically degenerate");
        }
      }
      auto found = locate(v);
      if (!found) {
        if (rc.roots.size() >= cap) {
          throw RootClosureDiverged(
              "more than " + std::to_string(cap) +
              " positive roots; the group is infinite or too large");
        }
        rc.roots.push_back(std::move(v));
        rc.parent.emplace_back(i, s);
        found = rc.roots.size() - 1;
      }
      images[s].push_back(static_cast<std::int64_t>(*found + 1));
    }
  }
  if (rc.roots.size() > kMaxReflections) {
    throw RootClosureDiverged("more than " + std::to_string(kMaxReflections) +
                              " reflections are not supported");
  }
  rc.simple_action.resize(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::int64_t v : images[s]) {
      rc.simple_action[s].push_back(static_cast<std::int16_t>(v));
    }
  }
  return rc;
}

}  // namespace detail

/// Builds the full element table. Throws BadMatrix, RootClosureDiverged or
/// OrderCapExceeded.
inline CoxeterSystem build_system(const CoxeterMatrix& matrix,
                                  std::size_t max_order) {
  matrix.validate();
  if (matrix.has_infinity()) {
    throw BadMatrix("infinite entries are not supported (finite groups only)");
  }
  const std::size_t n = matrix.rank();
  detail::RootClosure rc = detail::close_roots(matrix);
  const std::size_t nroots = rc.roots.size();

  CoxeterSystem sys;
  sys.matrix_ = matrix;
  sys.roots_ = std::move(rc.roots);
  for (const auto& r : sys.roots_) {
    GeneratorSet supp;
    for (std::size_t k = 0; k < n; ++k) {
      if (std::abs(r[k]) > detail::kRootTolerance) supp = supp.with(k);
    }
    sys.root_support_.push_back(supp);
  }

  // Breadth-first enumeration by right multiplication. Children are appended
  // in (parent index, generator) order, so indices follow the shortlex order
  // of the lexicographically first reduced word.
  std::vector<std::int16_t>& action = sys.action_;
  action.resize(nroots);
  for (std::size_t i = 0; i < nroots; ++i) {
    action[i] = static_cast<std::int16_t>(i + 1);
  }
  sys.inversions_.emplace_back();
  sys.lengths_.push_back(0);
  sys.parent_.push_back(0);
  sys.last_letter_.push_back(0);
  sys.by_inversions_.emplace(ReflectionSet{}, 0);

  for (std::size_t w = 0; w < sys.inversions_.size(); ++w) {
    for (Generator s = 0; s < n; ++s) {
      std::int16_t img = action[w * nroots + s];  // w(alpha_s)
      if (img < 0) continue;
      ReflectionSet inv = sys.inversions_[w];
      inv.set(static_cast<std::size_t>(img - 1));
      if (sys.by_inversions_.contains(inv)) continue;
      if (sys.inversions_.size() >= max_order) {
        throw OrderCapExceeded("group order exceeds the cap of " +
                               std::to_string(max_order));
      }
      auto id = static_cast<std::uint32_t>(sys.inversions_.size());
      sys.by_inversions_.emplace(inv, id);
      sys.inversions_.push_back(inv);
      sys.lengths_.push_back(sys.lengths_[w] + 1);
      sys.parent_.push_back(static_cast<std::uint32_t>(w));
      sys.last_letter_.push_back(s);
      // (ws)(beta) = w(s(beta))
      for (std::size_t i = 0; i < nroots; ++i) {
        std::int16_t si = rc.simple_action[s][i];
        std::int16_t v = action[w * nroots + static_cast<std::size_t>(std::abs(si) - 1)];
        action.push_back(si < 0 ? static_cast<std::int16_t>(-v) : v);
      }
    }
  }

  const std::size_t order = sys.inversions_.size();
  auto lookup = [&](const ReflectionSet& inv) {
    auto it = sys.by_inversions_.find(inv);
    if (it == sys.by_inversions_.end()) {
      throw InternalInvariantViolation("inversion set missing from table");
    }
    return it->second;
  };

  sys.right_.resize(order * n);
  sys.left_.resize(order * n);
  sys.left_desc_.resize(order);
  sys.right_desc_.resize(order);
  for (std::size_t w = 0; w < order; ++w) {
    const ReflectionSet& inv = sys.inversions_[w];
    for (Generator s = 0; s < n; ++s) {
      std::int16_t img = action[w * nroots + s];
      ReflectionSet right = inv;
      if (img > 0) {
        right.set(static_cast<std::size_t>(img - 1));
      } else {
        right.reset(static_cast<std::size_t>(-img - 1));
        sys.right_desc_[w] = sys.right_desc_[w].with(s);
      }
      sys.right_[w * n + s] = lookup(right);

      // I(sw) = s(I(w) - {alpha_s}), plus alpha_s when s is not a descent.
      ReflectionSet left;
      for (std::size_t i = 0; i < nroots; ++i) {
        if (!inv.test(i) || i == s) continue;
        left.set(static_cast<std::size_t>(rc.simple_action[s][i] - 1));
      }
      if (inv.test(s)) {
        sys.left_desc_[w] = sys.left_desc_[w].with(s);
      } else {
        left.set(s);
      }
      sys.left_[w * n + s] = lookup(left);
    }
  }

  sys.inverse_.resize(order);
  sys.inverse_[0] = 0;
  for (std::size_t v = 1; v < order; ++v) {
    sys.inverse_[v] = sys.left_[sys.inverse_[sys.parent_[v]] * n + sys.last_letter_[v]];
  }

  sys.reflections_.resize(nroots);
  for (std::size_t i = 0; i < nroots; ++i) {
    if (i < n) {
      sys.reflections_[i] = Element{sys.right_[i]};  // right_[0 * n + i]
      continue;
    }
    auto [from, s] = rc.parent[i];
    Element t = sys.reflections_[from];
    sys.reflections_[i] = sys.left_mul(sys.right_mul(t, s), s);
  }

  std::size_t max_len = sys.lengths_.back();
  sys.length_begin_.assign(max_len + 2, order);
  for (std::size_t w = order; w-- > 0;) sys.length_begin_[sys.lengths_[w]] = w;
  sys.longest_ = static_cast<std::uint32_t>(order - 1);
  if (max_len != nroots || sys.length_begin_[max_len] != order - 1) {
    throw InternalInvariantViolation("longest element is not unique");
  }
  return sys;
}

}  // namespace cambrian

template <>
struct std::hash<cambrian::Element> {
  std::size_t operator()(cambrian::Element w) const noexcept {
    return std::hash<std::uint32_t>{}(w.index);
  }
};
