#pragma once

// Coxeter elements, c-sorting words and c-sortable elements.

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cambrian/coxeter.hpp"
#include "cambrian/weak_order.hpp"

namespace cambrian {

/// A Coxeter element of the standard parabolic subgroup W_J, held as a word
/// using each generator of J exactly once. J = S for an ordinary Coxeter
/// element; smaller J arise from restriction.
class CoxeterElement {
 public:
  /// Throws NotACoxeterWord unless `word` uses every generator of `sys`
  /// exactly once.
  CoxeterElement(const CoxeterSystem& sys, Word word)
      : CoxeterElement(sys, std::move(word), sys.generators()) {}

  /// Coxeter element of W_J for J = the letters of `word`.
  static CoxeterElement of_parabolic(const CoxeterSystem& sys, Word word) {
    GeneratorSet J;
    for (Generator s : word) {
      sys.check_generator(s);
      J = J.with(s);
    }
    return CoxeterElement(sys, std::move(word), J);
  }

  const CoxeterSystem& system() const { return *sys_; }
  const Word& word() const { return word_; }
  GeneratorSet support() const { return support_; }
  std::size_t rank() const { return word_.size(); }
  Element element() const { return element_; }
  GeneratorSet initial_letters() const { return initial_; }
  GeneratorSet final_letters() const { return final_; }

  /// Directed diagram edges s -> t: s precedes t and m(s,t) >= 3.
  std::vector<std::pair<Generator, Generator>> orientation() const {
    std::vector<std::pair<Generator, Generator>> out;
    for (std::size_t i = 0; i < word_.size(); ++i) {
      for (std::size_t k = i + 1; k < word_.size(); ++k) {
        if (!sys_->matrix().commute(word_[i], word_[k])) {
          out.emplace_back(word_[i], word_[k]);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// scs for an initial letter s: s moves from the front to the back.
  CoxeterElement rotate(Generator s) const {
    if (!initial_.contains(s)) {
      throw NotInitial("s" + std::to_string(s) + " is not initial in " + to_string());
    }
    Word w;
    for (Generator a : word_) {
      if (a != s) w.push_back(a);
    }
    w.push_back(s);
    return CoxeterElement(*sys_, std::move(w), support_);
  }

  /// scs for a final letter s: s moves from the back to the front.
  CoxeterElement rotate_final(Generator s) const {
    if (!final_.contains(s)) {
      throw NotInitial("s" + std::to_string(s) + " is not final in " + to_string());
    }
    Word w{s};
    for (Generator a : word_) {
      if (a != s) w.push_back(a);
    }
    return CoxeterElement(*sys_, std::move(w), support_);
  }

  /// Restriction to W_{J intersect support}: delete the other letters.
  CoxeterElement restrict(GeneratorSet J) const {
    Word w;
    for (Generator a : word_) {
      if (J.contains(a)) w.push_back(a);
    }
    return CoxeterElement(*sys_, std::move(w), support_ & J);
  }

  /// Restriction to the support minus {s}.
  CoxeterElement restrict_without(Generator s) const {
    return restrict(support_.without(s));
  }

  /// c^{-1}, the reversed word.
  CoxeterElement inverse() const {
    return CoxeterElement(*sys_, Word(word_.rbegin(), word_.rend()), support_);
  }

  /// Canonical text form, e.g. "s2 s1 s3"; empty for the trivial group.
  std::string to_string() const {
    std::string out;
    for (Generator a : word_) {
      if (!out.empty()) out += ' ';
      out += 's' + std::to_string(a);
    }
    return out;
  }

  friend bool operator==(const CoxeterElement& a, const CoxeterElement& b) {
    return a.sys_ == b.sys_ && a.word_ == b.word_;
  }

 private:
  CoxeterElement(const CoxeterSystem& sys, Word word, GeneratorSet J)
      : sys_(&sys), word_(std::move(word)), support_(J) {
    GeneratorSet seen;
    for (Generator s : word_) {
      sys.check_generator(s);
      if (seen.contains(s)) {
        throw NotACoxeterWord("generator s" + std::to_string(s) + " repeated");
      }
      seen = seen.with(s);
    }
    if (seen != J) {
      throw NotACoxeterWord("word must use every generator exactly once");
    }
    element_ = sys.from_word(word_);
    const auto& m = sys.matrix();
    for (std::size_t i = 0; i < word_.size(); ++i) {
      bool initial = true;
      for (std::size_t k = 0; k < i && initial; ++k) {
        initial = m.commute(word_[k], word_[i]);
      }
      bool last = true;
      for (std::size_t k = i + 1; k < word_.size() && last; ++k) {
        last = m.commute(word_[k], word_[i]);
      }
      if (initial) initial_ = initial_.with(word_[i]);
      if (last) final_ = final_.with(word_[i]);
    }
  }

  const CoxeterSystem* sys_;
  Word word_;
  GeneratorSet support_;
  Element element_;
  GeneratorSet initial_;
  GeneratorSet final_;
};

inline CoxeterElement make_coxeter_element(const CoxeterSystem& sys, Word word) {
  return CoxeterElement(sys, std::move(word));
}

/// Every reduced word of c: the linear extensions of its orientation.
inline std::vector<Word> coxeter_words(const CoxeterElement& c) {
  if (c.rank() == 0) return {Word{}};
  std::vector<Word> out;
  for (Generator s : c.initial_letters().members()) {
    for (Word& tail : coxeter_words(c.restrict_without(s))) {
      tail.insert(tail.begin(), s);
      out.push_back(std::move(tail));
    }
  }
  return out;
}

/// A c-sorting word: letters of c^infinity with the block boundaries kept.
struct SortingWord {
  Word letters;
  /// Offsets into `letters` where a new block starts (after the first).
  std::vector<std::size_t> dividers;

  std::vector<Word> blocks() const {
    std::vector<Word> out;
    if (letters.empty()) return out;
    std::size_t begin = 0;
    for (std::size_t k = 0; k <= dividers.size(); ++k) {
      std::size_t end = k < dividers.size() ? dividers[k] : letters.size();
      out.emplace_back(letters.begin() + static_cast<std::ptrdiff_t>(begin),
                       letters.begin() + static_cast<std::ptrdiff_t>(end));
      begin = end;
    }
    return out;
  }

  std::vector<GeneratorSet> block_sets() const {
    std::vector<GeneratorSet> out;
    for (const Word& b : blocks()) {
      GeneratorSet g;
      for (Generator s : b) g = g.with(s);
      out.push_back(g);
    }
    return out;
  }

  /// "s0 s1 | s0" or, compact, "01|0". The identity renders as "".
  std::string render(bool compact = false) const {
    std::string out;
    std::size_t next = 0;
    for (std::size_t i = 0; i < letters.size(); ++i) {
      if (next < dividers.size() && dividers[next] == i) {
        out += compact ? "|" : " | ";
        ++next;
      } else if (i > 0 && !compact) {
        out += ' ';
      }
      out += compact ? std::to_string(letters[i]) : "s" + std::to_string(letters[i]);
    }
    return out;
  }
};

/// Lexicographically first subword of c^infinity that is a reduced word for
/// w. Letters are peeled greedily from the left of the residual. Throws
/// std::invalid_argument if w is not in the subgroup W_J of the context.
inline SortingWord c_sorting_word(const CoxeterElement& c, Element w) {
  const CoxeterSystem& sys = c.system();
  SortingWord out;
  Element residual = w;
  while (residual != sys.identity()) {
    if (!out.letters.empty()) out.dividers.push_back(out.letters.size());
    bool took = false;
    for (Generator a : c.word()) {
      if (sys.left_descents(residual).contains(a)) {
        out.letters.push_back(a);
        residual = sys.left_mul(residual, a);
        took = true;
      }
    }
    if (!took) {
      throw std::invalid_argument("element is not in the parabolic subgroup of " +
                                  c.to_string());
    }
  }
  return out;
}

/// True when the blocks of the c-sorting word are weakly decreasing.
inline bool is_sortable(const CoxeterElement& c, Element w) {
  auto sets = c_sorting_word(c, w).block_sets();
  for (std::size_t k = 1; k < sets.size(); ++k) {
    if (!sets[k].is_subset_of(sets[k - 1])) return false;
  }
  return true;
}

/// Recursive sortability test: peel an initial letter s of c, rotating
/// when s is a left descent of w and restricting to W_<s> otherwise.
/// `first_letter` picks the letter at the top level (must be initial);
/// deeper levels use the lowest-index initial letter.
inline bool is_sortable_recursive(const WeakOrderLattice& L, const CoxeterElement& c,
                                  Element w,
                                  std::optional<Generator> first_letter = std::nullopt) {
  const CoxeterSystem& sys = L.system();
  if (!L.in_parabolic(w, c.support())) return false;
  CoxeterElement ctx = c;
  if (first_letter && !c.initial_letters().contains(*first_letter)) {
    throw NotInitial("s" + std::to_string(*first_letter) + " is not initial in " +
                     c.to_string());
  }
  bool top = true;
  while (w != sys.identity()) {
    Generator s = top && first_letter ? *first_letter : ctx.initial_letters().first();
    top = false;
    if (sys.left_descents(w).contains(s)) {
      ctx = ctx.rotate(s);
      w = sys.left_mul(w, s);
    } else {
      ctx = ctx.restrict_without(s);
      if (!L.in_parabolic(w, ctx.support())) return false;
    }
  }
  return true;
}

/// All c-sortable elements of W_J (J the support of c), in index order.
inline std::vector<Element> enumerate_sortables(const WeakOrderLattice& L,
                                                const CoxeterElement& c) {
  std::vector<Element> out;
  for (std::uint32_t i = 0; i < L.size(); ++i) {
    Element w{i};
    if (L.in_parabolic(w, c.support()) && is_sortable(c, w)) out.push_back(w);
  }
  return out;
}

/// One Coxeter element per acyclic orientation of the Coxeter diagram,
/// deduplicated by group element and sorted by word. Each is written as the
/// topological order that always takes the lowest-index available source.
inline std::vector<CoxeterElement> enumerate_coxeter_elements(const CoxeterSystem& sys) {
  const std::size_t n = sys.rank();
  std::vector<std::pair<Generator, Generator>> edges;
  for (Generator s = 0; s < n; ++s) {
    for (Generator t = s + 1; t < n; ++t) {
      if (!sys.matrix().commute(s, t)) edges.emplace_back(s, t);
    }
  }
  if (edges.size() > 24) {
    throw UnsupportedRank("too many diagram edges to enumerate orientations");
  }
  std::vector<CoxeterElement> out;
  std::set<std::uint32_t> seen;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges.size()); ++mask) {
    std::vector<std::vector<Generator>> succ(n);
    std::vector<std::size_t> indeg(n, 0);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      auto [a, b] = edges[e];
      if ((mask >> e) & 1U) std::swap(a, b);
      succ[a].push_back(b);
      ++indeg[b];
    }
    Word word;
    GeneratorSet done;
    while (word.size() < n) {
      std::optional<Generator> next;
      for (Generator s = 0; s < n && !next; ++s) {
        if (!done.contains(s) && indeg[s] == 0) next = s;
      }
      if (!next) break;  // cyclic orientation
      done = done.with(*next);
      word.push_back(*next);
      for (Generator t : succ[*next]) --indeg[t];
    }
    if (word.size() < n) continue;
    CoxeterElement c(sys, std::move(word));
    if (seen.insert(c.element().index).second) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const CoxeterElement& a, const CoxeterElement& b) {
    return a.word() < b.word();
  });
  return out;
}

}  // namespace cambrian
