#pragma once

// Exhaustive property checks over one finite Coxeter group.
//
// Each property runs over every element, pair or cover it quantifies over,
// except where the group is too large; then the report says what was sampled
// or skipped. Sampling is seeded, so reports are byte-stable.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cambrian/congruence.hpp"
#include "cambrian/coxeter.hpp"
#include "cambrian/projections.hpp"
#include "cambrian/sortable.hpp"
#include "cambrian/weak_order.hpp"

namespace cambrian {

struct PropertyResult {
  enum class Status { Passed, Failed, Skipped };

  std::string name;
  std::string scope;
  Status status = Status::Passed;
  std::vector<std::uint32_t> counterexample;
  std::string detail;

  bool passed() const { return status != Status::Failed; }
};

struct VerifyReport {
  std::string group;
  std::vector<PropertyResult> results;

  bool passed() const {
    return std::all_of(results.begin(), results.end(),
                       [](const PropertyResult& r) { return r.passed(); });
  }
  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(
        results.begin(), results.end(), [](const PropertyResult& r) { return !r.passed(); }));
  }

  std::string to_text() const {
    std::ostringstream os;
    for (const auto& r : results) {
      switch (r.status) {
        case PropertyResult::Status::Passed: os << "PASS "; break;
        case PropertyResult::Status::Failed: os << "FAIL "; break;
        case PropertyResult::Status::Skipped: os << "SKIP "; break;
      }
      os << r.name << " [" << r.scope << "]";
      if (!r.counterexample.empty()) {
        os << " counterexample:";
        for (auto i : r.counterexample) os << ' ' << i;
      }
      if (!r.detail.empty()) os << " (" << r.detail << ")";
      os << '\n';
    }
    os << group << ": " << results.size() - failures() << "/" << results.size()
       << " properties hold\n";
    return os.str();
  }

  nlohmann::json to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : results) {
      const char* status = r.status == PropertyResult::Status::Passed   ? "pass"
                           : r.status == PropertyResult::Status::Failed ? "fail"
                                                                        : "skip";
      rows.push_back({{"name", r.name},
                      {"scope", r.scope},
                      {"status", status},
                      {"counterexample", r.counterexample},
                      {"detail", r.detail}});
    }
    return {{"group", group}, {"passed", passed()}, {"properties", rows}};
  }
};

struct VerifyOptions {
  /// Pairwise properties run on all pairs when the pair count is at most
  /// this, otherwise on `samples` seeded pairs.
  std::size_t pair_budget = 4'000'000;
  /// Lattice axioms run on all triples up to this many elements.
  std::size_t triple_limit = 48;
  /// Hasse reachability is compared with leq on all pairs up to this size.
  std::size_t hasse_limit = 200;
  /// The forcing order (one generated congruence per join-irreducible) is
  /// computed up to this group order.
  std::size_t forcing_limit = 1024;
  std::size_t samples = 10'000;
  std::uint64_t seed = 0x5eedULL;
};

namespace detail {

struct Failure {
  std::vector<std::uint32_t> elements;
  std::string detail;
};

using Check = std::optional<Failure>;

inline Failure fail(std::initializer_list<Element> es, std::string detail = {}) {
  Failure f;
  for (Element e : es) f.elements.push_back(e.index);
  f.detail = std::move(detail);
  return f;
}

/// Runs `body`, turning library exceptions into failures.
class Recorder {
 public:
  explicit Recorder(VerifyReport& report) : report_(&report) {}

  void run(std::string name, std::string scope, const std::function<Check()>& body) {
    PropertyResult r;
    r.name = std::move(name);
    r.scope = std::move(scope);
    try {
      if (auto f = body()) {
        r.status = PropertyResult::Status::Failed;
        r.counterexample = std::move(f->elements);
        r.detail = std::move(f->detail);
      }
    } catch (const std::exception& e) {
      r.status = PropertyResult::Status::Failed;
      r.detail = std::string("exception: ") + e.what();
    }
    report_->results.push_back(std::move(r));
  }

  void skip(std::string name, std::string scope, std::string why) {
    PropertyResult r;
    r.name = std::move(name);
    r.scope = std::move(scope);
    r.status = PropertyResult::Status::Skipped;
    r.detail = std::move(why);
    report_->results.push_back(std::move(r));
  }

 private:
  VerifyReport* report_;
};

/// Pairs drawn from `pool`: all of them, or a seeded sample.
class PairSource {
 public:
  PairSource(std::size_t pool, const VerifyOptions& opt)
      : pool_(pool), exhaustive_(pool * pool <= opt.pair_budget), samples_(opt.samples),
        rng_(opt.seed) {}

  std::string scope() const {
    return exhaustive_ ? "all pairs" : std::to_string(samples_) + " seeded pairs";
  }

  template <class F>
  Check each(F&& f) {
    if (exhaustive_) {
      for (std::size_t a = 0; a < pool_; ++a) {
        for (std::size_t b = 0; b < pool_; ++b) {
          if (auto r = f(a, b)) return r;
        }
      }
      return std::nullopt;
    }
    std::uniform_int_distribution<std::size_t> pick(0, pool_ - 1);
    for (std::size_t k = 0; k < samples_; ++k) {
      std::size_t a = pick(rng_), b = pick(rng_);
      if (auto r = f(a, b)) return r;
    }
    return std::nullopt;
  }

 private:
  std::size_t pool_;
  bool exhaustive_;
  std::size_t samples_;
  std::mt19937_64 rng_;
};

inline Element elem(std::size_t i) { return Element{static_cast<std::uint32_t>(i)}; }

inline ReflectionSet generator_reflection(const CoxeterSystem& sys, Generator s) {
  return sys.inversions(sys.generator(s));
}

// ---------------------------------------------------------------- group level

inline void verify_core(const WeakOrderLattice& L, Recorder& rec) {
  const CoxeterSystem& sys = L.system();
  const std::size_t n = sys.size();

  rec.run("length-changes-by-one", "all elements and generators", [&]() -> Check {
    for (std::size_t i = 0; i < n; ++i) {
      for (Generator s = 0; s < sys.rank(); ++s) {
        auto l = sys.length(elem(i));
        auto ls = sys.length(sys.left_mul(elem(i), s));
        auto rs = sys.length(sys.right_mul(elem(i), s));
        if (ls != l + 1 && ls + 1 != l) return fail({elem(i)}, "left by s" + std::to_string(s));
        if (rs != l + 1 && rs + 1 != l) return fail({elem(i)}, "right by s" + std::to_string(s));
      }
    }
    return std::nullopt;
  });

  rec.run("inversion-sets-distinct", "all elements", [&]() -> Check {
    std::vector<std::pair<std::string, std::size_t>> keys;
    for (std::size_t i = 0; i < n; ++i) keys.emplace_back(sys.inversions(elem(i)).to_string(), i);
    std::sort(keys.begin(), keys.end());
    for (std::size_t k = 1; k < keys.size(); ++k) {
      if (keys[k].first == keys[k - 1].first) {
        return fail({elem(keys[k - 1].second), elem(keys[k].second)});
      }
    }
    return std::nullopt;
  });

  rec.run("reduced-word-roundtrip", "all elements", [&]() -> Check {
    for (std::size_t i = 0; i < n; ++i) {
      Word w = sys.reduced_word(elem(i));
      if (w.size() != sys.length(elem(i)) || sys.from_word(w) != elem(i)) return fail({elem(i)});
      if (sys.inversions(elem(i)).count() != sys.length(elem(i))) {
        return fail({elem(i)}, "length differs from inversion count");
      }
    }
    return std::nullopt;
  });

  rec.run("w0-complements-inversions", "all elements", [&]() -> Check {
    ReflectionSet all;
    for (std::size_t t = 0; t < sys.num_reflections(); ++t) all.set(t);
    if (sys.inversions(sys.longest()) != all) return fail({sys.longest()}, "I(w0) != T");
    for (std::size_t i = 0; i < n; ++i) {
      Element ww0 = sys.multiply(elem(i), sys.longest());
      if (sys.inversions(ww0) != (all & ~sys.inversions(elem(i)))) return fail({elem(i)});
      if (ww0 != L.times_w0(elem(i))) return fail({elem(i)}, "times_w0 table");
    }
    return std::nullopt;
  });

  rec.run("inversions-match-root-action", "all elements and reflections", [&]() -> Check {
    for (std::size_t i = 0; i < n; ++i) {
      Element winv = sys.inverse(elem(i));
      if (sys.multiply(elem(i), winv) != sys.identity()) return fail({elem(i)}, "inverse");
      for (std::size_t t = 0; t < sys.num_reflections(); ++t) {
        if (sys.root_image(winv, t).negative != sys.inversions(elem(i)).test(t)) {
          return fail({elem(i)}, "reflection " + std::to_string(t));
        }
      }
    }
    return std::nullopt;
  });
}

inline void verify_weak_order(const WeakOrderLattice& L, const VerifyOptions& opt,
                              Recorder& rec) {
  const CoxeterSystem& sys = L.system();
  const std::size_t n = sys.size();
  const std::size_t rank = sys.rank();

  if (n <= opt.hasse_limit) {
    rec.run("leq-matches-hasse-reachability", "all pairs", [&]() -> Check {
      for (std::size_t a = 0; a < n; ++a) {
        std::vector<bool> seen(n, false);
        std::vector<Element> stack{elem(a)};
        seen[a] = true;
        while (!stack.empty()) {
          Element x = stack.back();
          stack.pop_back();
          for (Element y : L.covers_up(x)) {
            if (!seen[y.index]) {
              seen[y.index] = true;
              stack.push_back(y);
            }
          }
        }
        for (std::size_t b = 0; b < n; ++b) {
          if (seen[b] != L.leq(elem(a), elem(b))) return fail({elem(a), elem(b)});
        }
      }
      return std::nullopt;
    });
  } else {
    rec.skip("leq-matches-hasse-reachability", "all pairs",
             "group order above " + std::to_string(opt.hasse_limit));
  }

  {
    const bool all = n <= opt.triple_limit;
    std::string scope = all ? "all triples" : std::to_string(opt.samples) + " seeded triples";
    rec.run("lattice-axioms", scope, [&]() -> Check {
      auto check = [&](Element x, Element y, Element z) -> Check {
        Element j = L.join(x, y), m = L.meet(x, y);
        if (!L.leq(x, j) || !L.leq(y, j) || !L.leq(m, x) || !L.leq(m, y)) {
          return fail({x, y}, "bound");
        }
        if (L.leq(x, z) && L.leq(y, z) && !L.leq(j, z)) return fail({x, y, z}, "least upper");
        if (L.leq(z, x) && L.leq(z, y) && !L.leq(z, m)) return fail({x, y, z}, "greatest lower");
        if (j != L.join(y, x) || m != L.meet(y, x)) return fail({x, y}, "commutativity");
        if (L.join(j, z) != L.join(x, L.join(y, z))) return fail({x, y, z}, "join associativity");
        if (L.meet(m, z) != L.meet(x, L.meet(y, z))) return fail({x, y, z}, "meet associativity");
        if (L.join(x, L.meet(x, y)) != x || L.meet(x, L.join(x, y)) != x) {
          return fail({x, y}, "absorption");
        }
        if (L.join(x, x) != x || L.meet(x, x) != x) return fail({x}, "idempotence");
        return std::nullopt;
      };
      if (all) {
        for (std::size_t a = 0; a < n; ++a) {
          for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t c = 0; c < n; ++c) {
              if (auto f = check(elem(a), elem(b), elem(c))) return f;
            }
          }
        }
        return std::nullopt;
      }
      std::mt19937_64 rng(opt.seed);
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      for (std::size_t k = 0; k < opt.samples; ++k) {
        Element x = elem(pick(rng)), y = elem(pick(rng)), z = elem(pick(rng));
        if (auto f = check(x, y, z)) return f;
      }
      return std::nullopt;
    });
  }

  {
    PairSource pairs(n, opt);
    rec.run("join-meet-match-scan", pairs.scope(), [&]() -> Check {
      return pairs.each([&](std::size_t a, std::size_t b) -> Check {
        if (L.join(elem(a), elem(b)) != L.join_by_scan(elem(a), elem(b))) {
          return fail({elem(a), elem(b)}, "join");
        }
        if (L.meet(elem(a), elem(b)) != L.meet_by_scan(elem(a), elem(b))) {
          return fail({elem(a), elem(b)}, "meet");
        }
        return std::nullopt;
      });
    });
  }

  {
    PairSource pairs(n, opt);
    rec.run("parabolic-projection-homomorphism", pairs.scope() + ", every maximal J",
            [&]() -> Check {
              return pairs.each([&](std::size_t a, std::size_t b) -> Check {
                Element x = elem(a), y = elem(b);
                for (Generator s = 0; s < rank; ++s) {
                  GeneratorSet J = sys.generators().without(s);
                  auto p = [&](Element w) { return L.parabolic_projection(w, J); };
                  if (p(L.join(x, y)) != L.join(p(x), p(y))) {
                    return fail({x, y}, "join, J omits s" + std::to_string(s));
                  }
                  if (p(L.meet(x, y)) != L.meet(p(x), p(y))) {
                    return fail({x, y}, "meet, J omits s" + std::to_string(s));
                  }
                }
                return std::nullopt;
              });
            });
  }

  rec.run("parabolic-lower-interval", "every maximal J", [&]() -> Check {
    for (Generator s = 0; s < rank; ++s) {
      GeneratorSet J = sys.generators().without(s);
      Element top = L.longest_in(J);
      for (std::size_t i = 0; i < n; ++i) {
        if (L.in_parabolic(elem(i), J) != L.leq(elem(i), top)) {
          return fail({elem(i), top}, "J omits s" + std::to_string(s));
        }
      }
      auto [wj, rest] = L.parabolic_factorization(sys.longest(), J);
      if (wj != top || sys.multiply(wj, rest) != sys.longest()) {
        return fail({top}, "factorization of w0");
      }
    }
    return std::nullopt;
  });

  rec.run("left-multiplication-interval-isomorphism", "all covers and generators",
          [&]() -> Check {
            for (std::size_t i = 0; i < n; ++i) {
              Element x = elem(i);
              for (Element y : L.covers_up(x)) {
                for (Generator s = 0; s < rank; ++s) {
                  bool in_upper = sys.left_descents(x).contains(s);
                  bool in_lower = !sys.left_descents(y).contains(s);
                  if (!in_upper && !in_lower) continue;
                  Element sx = sys.left_mul(x, s), sy = sys.left_mul(y, s);
                  const auto& up = L.covers_up(sx);
                  if (std::find(up.begin(), up.end(), sy) == up.end()) {
                    return fail({x, y}, "s" + std::to_string(s));
                  }
                }
              }
            }
            return std::nullopt;
          });

  rec.run("cover-generator-join", "all elements and generators", [&]() -> Check {
    for (std::size_t i = 0; i < n; ++i) {
      Element w = elem(i);
      ReflectionSet cov = L.cover_reflections(w);
      for (Generator s = 0; s < rank; ++s) {
        ReflectionSet rs = generator_reflection(sys, s);
        if ((cov & rs).none()) continue;
        GeneratorSet J = sys.generators().without(s);
        if (((cov & ~rs) & ~L.parabolic_reflections(J)).any()) continue;
        if (w != L.join(sys.generator(s), L.parabolic_projection(w, J))) {
          return fail({w}, "s" + std::to_string(s));
        }
      }
    }
    return std::nullopt;
  });

  rec.run("join-with-generator-covers", "every maximal J and every x in it", [&]() -> Check {
    for (Generator s = 0; s < rank; ++s) {
      GeneratorSet J = sys.generators().without(s);
      for (std::size_t i = 0; i < n; ++i) {
        Element x = elem(i);
        if (!L.in_parabolic(x, J)) continue;
        Element j = L.join(sys.generator(s), x);
        if (L.cover_reflections(j) != (L.cover_reflections(x) | generator_reflection(sys, s))) {
          return fail({x}, "s" + std::to_string(s));
        }
      }
    }
    return std::nullopt;
  });

  rec.run("join-irreducibles-have-one-descent", "all elements", [&]() -> Check {
    std::vector<Element> expected;
    for (std::size_t i = 0; i < n; ++i) {
      if (sys.right_descents(elem(i)).size() == 1) expected.push_back(elem(i));
    }
    std::vector<Element> got;
    for (const auto& ji : L.join_irreducibles()) {
      got.push_back(ji.element);
      if (!L.leq(ji.lower_cover, ji.element) ||
          sys.length(ji.lower_cover) + 1 != sys.length(ji.element)) {
        return fail({ji.element, ji.lower_cover}, "lower cover");
      }
    }
    if (got != expected) return fail({}, "join-irreducible set differs from descent scan");
    return std::nullopt;
  });
}

// ------------------------------------------------------------- per context

/// Result of trying every initial-letter choice at every step of the
/// recursive test. nullopt when two choices disagree.
class LetterExplorer {
 public:
  explicit LetterExplorer(const WeakOrderLattice& L) : L_(&L) {}

  std::optional<bool> run(const CoxeterElement& c, Element w) {
    const CoxeterSystem& sys = L_->system();
    if (w == sys.identity()) return true;
    std::string key = c.to_string() + "/" + std::to_string(w.index);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::optional<bool> agreed;
    bool consistent = true;
    for (Generator s : c.initial_letters().members()) {
      std::optional<bool> r;
      if (sys.left_descents(w).contains(s)) {
        r = run(c.rotate(s), sys.left_mul(w, s));
      } else {
        CoxeterElement sub = c.restrict_without(s);
        r = L_->in_parabolic(w, sub.support()) ? run(sub, w) : std::optional<bool>(false);
      }
      if (!r || (agreed && *agreed != *r)) {
        consistent = false;
        break;
      }
      agreed = r;
    }
    std::optional<bool> out = consistent ? agreed : std::nullopt;
    memo_.emplace(std::move(key), out);
    return out;
  }

 private:
  const WeakOrderLattice* L_;
  std::map<std::string, std::optional<bool>> memo_;
};

struct ContextData {
  const CoxeterElement* c;
  std::vector<bool> sortable;
  std::vector<Element> sortables;
  ProjectionTable table;
  ProjectionTable inverse_table;
};

inline void verify_sortable(const WeakOrderLattice& L, const ContextData& d,
                            const std::string& scope, Recorder& rec) {
  const CoxeterSystem& sys = L.system();
  const CoxeterElement& c = *d.c;
  const std::size_t n = sys.size();
  const std::size_t rank = sys.rank();

  rec.run("sortable-tests-agree", scope, [&]() -> Check {
    for (std::size_t i = 0; i < n; ++i) {
      if (d.sortable[i] != is_sortable_recursive(L, c, elem(i))) return fail({elem(i)});
    }
    return std::nullopt;
  });

  rec.run("recursive-test-letter-independent", scope + ", every choice at every step",
          [&]() -> Check {
            LetterExplorer explore(L);
            for (std::size_t i = 0; i < n; ++i) {
              auto r = explore.run(c, elem(i));
              if (!r) return fail({elem(i)}, "choices disagree");
              if (*r != d.sortable[i]) return fail({elem(i)}, "differs from block test");
            }
            return std::nullopt;
          });

  rec.run("sorting-blocks-commutation-invariant", scope + ", every reduced word of c",
          [&]() -> Check {
            for (const Word& word : coxeter_words(c)) {
              CoxeterElement c2(sys, word);
              if (c2.element() != c.element()) return fail({c2.element()}, "not a word for c");
              for (std::size_t i = 0; i < n; ++i) {
                if (c_sorting_word(c2, elem(i)).block_sets() !=
                    c_sorting_word(c, elem(i)).block_sets()) {
                  return fail({elem(i)}, "word " + c2.to_string());
                }
              }
            }
            return std::nullopt;
          });

  rec.run("parabolic-restriction-sortable", scope + ", every maximal J", [&]() -> Check {
    for (Generator s = 0; s < rank; ++s) {
      CoxeterElement sub = c.restrict_without(s);
      for (Element w : d.sortables) {
        if (!is_sortable(sub, L.parabolic_projection(w, sub.support()))) {
          return fail({w}, "J omits s" + std::to_string(s));
        }
      }
    }
    return std::nullopt;
  });

  rec.run("parabolic-sortable-lifts", scope + ", every maximal J", [&]() -> Check {
    for (Generator s = 0; s < rank; ++s) {
      CoxeterElement sub = c.restrict_without(s);
      for (std::size_t i = 0; i < n; ++i) {
        if (L.in_parabolic(elem(i), sub.support()) && is_sortable(sub, elem(i)) &&
            !d.sortable[i]) {
          return fail({elem(i)}, "J omits s" + std::to_string(s));
        }
      }
    }
    return std::nullopt;
  });

  rec.run("cover-reflections-distinguish-sortables", scope, [&]() -> Check {
    std::map<std::string, Element> seen;
    for (Element w : d.sortables) {
      auto [it, fresh] = seen.emplace(L.cover_reflections(w).to_string(), w);
      if (!fresh) return fail({it->second, w});
    }
    return std::nullopt;
  });

  rec.run("initial-generator-join-sortable", scope + ", every initial s", [&]() -> Check {
    for (Generator s : c.initial_letters().members()) {
      CoxeterElement sub = c.restrict_without(s);
      for (Element x : enumerate_sortables(L, sub)) {
        Element j = L.join(sys.generator(s), x);
        if (!d.sortable[j.index]) return fail({x}, "s v x not sortable, s" + std::to_string(s));
        if (L.cover_reflections(j) != (L.cover_reflections(x) | generator_reflection(sys, s))) {
          return fail({x}, "cover reflections, s" + std::to_string(s));
        }
      }
    }
    return std::nullopt;
  });

  rec.run("final-generator-join", scope + ", every final s", [&]() -> Check {
    for (Generator s : c.final_letters().members()) {
      GeneratorSet J = sys.generators().without(s);
      for (Element w : d.sortables) {
        if (!sys.left_descents(w).contains(s)) continue;
        if (w != L.join(L.parabolic_projection(w, J), sys.generator(s))) {
          return fail({w}, "s" + std::to_string(s));
        }
      }
    }
    return std::nullopt;
  });

  rec.run("rotation-bijection", scope + ", every initial s", [&]() -> Check {
    for (Generator s : c.initial_letters().members()) {
      GeneratorSet J = sys.generators().without(s);
      CoxeterElement rotated = c.rotate(s);
      std::set<Element> domain, image, target;
      for (Element w : d.sortables) {
        if (!sys.left_descents(w).contains(s)) domain.insert(w);
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (sys.left_descents(elem(i)).contains(s) && is_sortable(rotated, elem(i))) {
          target.insert(elem(i));
        }
      }
      for (Element w : domain) {
        Element x = L.join(sys.generator(s), w);
        if (!target.contains(x)) return fail({w}, "image outside target, s" + std::to_string(s));
        if (L.parabolic_projection(x, J) != w) return fail({w}, "inverse, s" + std::to_string(s));
        image.insert(x);
      }
      if (image != target) return fail({}, "not onto, s" + std::to_string(s));
    }
    return std::nullopt;
  });
}

inline void verify_projections(const WeakOrderLattice& L, Projector& proj,
                               const ContextData& d, const VerifyOptions& opt,
                               const std::string& scope, Recorder& rec) {
  const CoxeterSystem& sys = L.system();
  const CoxeterElement& c = *d.c;
  const std::size_t n = sys.size();
  const auto& down = d.table.down;
  const auto& up = d.table.up;

  rec.run("theta-classes-are-projection-intervals", scope, [&]() -> Check {
    auto theta = theta_congruence(L, d.table);
    if (theta.bottoms() != d.sortables) return fail({}, "class bottoms differ from sortables");
    if (auto check = is_lattice_congruence(L, theta); !check) {
      return Failure{{}, check.describe()};
    }
    return std::nullopt;
  });

  rec.run("pi-down-order-preserving", scope + ", all covers", [&]() -> Check {
    for (std::size_t i = 0; i < n; ++i) {
      for (Element y : L.covers_up(elem(i))) {
        if (!L.leq(down[i], down[y.index])) return fail({elem(i), y});
        if (!L.leq(up[i], up[y.index])) return fail({elem(i), y}, "pi_up");
      }
    }
    return std::nullopt;
  });

  rec.run("pi-down-is-maximum-sortable-below", scope, [&]() -> Check {
    for (std::size_t i = 0; i < n; ++i) {
      Element w = elem(i), p = down[i];
      if (!L.leq(p, w) || !d.sortable[p.index] || down[p.index] != p) return fail({w});
      for (Element x : d.sortables) {
        if (L.leq(x, w) && !L.leq(x, p)) return fail({w, x}, "larger sortable below");
      }
    }
    return std::nullopt;
  });

  rec.run("pi-down-letter-independent", scope + ", every top-level initial letter",
          [&]() -> Check {
            for (Generator s : c.initial_letters().members()) {
              for (std::size_t i = 0; i < n; ++i) {
                if (proj.down(c, elem(i), s) != down[i]) {
                  return fail({elem(i)}, "s" + std::to_string(s));
                }
              }
            }
            return std::nullopt;
          });

  {
    PairSource pairs(d.sortables.size(), opt);
    rec.run("sortables-form-sublattice", scope + ", " + pairs.scope() + " of sortables",
            [&]() -> Check {
              return pairs.each([&](std::size_t a, std::size_t b) -> Check {
                Element x = d.sortables[a], y = d.sortables[b];
                if (!d.sortable[L.join(x, y).index]) return fail({x, y}, "join");
                if (!d.sortable[L.meet(x, y).index]) return fail({x, y}, "meet");
                return std::nullopt;
              });
            });
  }

  rec.run("projection-fibers-agree", scope, [&]() -> Check {
    std::vector<std::int64_t> up_of(n, -1), down_of(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
      auto& u = up_of[down[i].index];
      if (u >= 0 && u != up[i].index) return fail({elem(i)}, "down fiber splits");
      u = up[i].index;
      auto& dn = down_of[up[i].index];
      if (dn >= 0 && dn != down[i].index) return fail({elem(i)}, "up fiber splits");
      dn = down[i].index;
    }
    return std::nullopt;
  });

  rec.run("projections-absorb", scope, [&]() -> Check {
    for (std::size_t i = 0; i < n; ++i) {
      if (up[down[i].index] != up[i] || down[up[i].index] != down[i]) return fail({elem(i)});
    }
    return std::nullopt;
  });

  rec.run("pi-down-final-letter-join", scope + ", every final s", [&]() -> Check {
    for (Generator s : c.final_letters().members()) {
      CoxeterElement sub = c.restrict_without(s);
      for (std::size_t i = 0; i < n; ++i) {
        Element w = elem(i);
        if (!sys.left_descents(w).contains(s)) continue;
        Element rhs =
            L.join(sys.generator(s), proj.down(sub, L.parabolic_projection(w, sub.support())));
        if (down[i] != rhs) return fail({w}, "s" + std::to_string(s));
      }
    }
    return std::nullopt;
  });

  rec.run("pi-up-initial-letter-meet", scope + ", every initial s", [&]() -> Check {
    for (Generator s : c.initial_letters().members()) {
      CoxeterElement sub = c.restrict_without(s);
      Element quotient = L.parabolic_factorization(sys.longest(), sub.support()).second;
      Element sw0 = sys.left_mul(sys.longest(), s);
      for (std::size_t i = 0; i < n; ++i) {
        Element w = elem(i);
        if (sys.left_descents(w).contains(s)) continue;
        Element inner = proj.up(sub, L.parabolic_projection(w, sub.support()));
        Element rhs = L.meet(sw0, sys.multiply(inner, quotient));
        if (up[i] != rhs) return fail({w}, "s" + std::to_string(s));
      }
    }
    return std::nullopt;
  });

  rec.run("pi-up-final-letter-recursion", scope + ", every final s", [&]() -> Check {
    for (Generator s : c.final_letters().members()) {
      CoxeterElement sub = c.restrict_without(s);
      CoxeterElement rotated = c.rotate_final(s);
      Element quotient = L.parabolic_factorization(sys.longest(), sub.support()).second;
      for (std::size_t i = 0; i < n; ++i) {
        Element w = elem(i);
        Element rhs;
        if (!sys.left_descents(w).contains(s)) {
          rhs = sys.left_mul(proj.up(rotated, sys.left_mul(w, s)), s);
        } else {
          rhs = sys.multiply(proj.up(sub, L.parabolic_projection(w, sub.support())), quotient);
        }
        if (up[i] != rhs) return fail({w}, "s" + std::to_string(s));
      }
    }
    return std::nullopt;
  });

  rec.run("pi-down-cover-rotation", scope + ", every initial s and qualifying cover",
          [&]() -> Check {
            for (Generator s : c.initial_letters().members()) {
              CoxeterElement rotated = c.rotate(s);
              for (std::size_t i = 0; i < n; ++i) {
                Element y = elem(i);
                if (!sys.left_descents(y).contains(s)) continue;
                Element sy = sys.left_mul(y, s);
                for (Element x : L.covers_down(y)) {
                  if (x == sy) continue;
                  bool same = down[x.index] == down[i];
                  bool same_rot = proj.down(rotated, sys.left_mul(x, s)) == proj.down(rotated, sy);
                  if (same != same_rot) return fail({x, y}, "s" + std::to_string(s));
                }
              }
            }
            return std::nullopt;
          });

  rec.run("w0-maps-theta-to-inverse-theta", scope, [&]() -> Check {
    const auto& down_inv = d.inverse_table.down;
    const auto& up_inv = d.inverse_table.up;
    for (std::size_t i = 0; i < n; ++i) {
      Element f = L.times_w0(elem(i));
      if (down_inv[f.index] != L.times_w0(up[i]) || up_inv[f.index] != L.times_w0(down[i])) {
        return fail({elem(i)});
      }
    }
    return std::nullopt;
  });
}

inline void verify_congruence(const WeakOrderLattice& L, const ContextData& d,
                              const std::string& scope, Recorder& rec) {
  const CoxeterSystem& sys = L.system();
  const CoxeterElement& c = *d.c;
  const std::size_t rank = sys.rank();

  std::optional<CongruencePartition> camb;
  rec.run("theta-equals-cambrian-congruence", scope, [&]() -> Check {
    camb = cambrian_congruence(L, c);
    auto theta = theta_congruence(L, d.table);
    if (!(*camb == theta)) {
      for (std::size_t i = 0; i < sys.size(); ++i) {
        if (camb->bottom_of(elem(i)) != theta.bottom_of(elem(i))) return fail({elem(i)});
      }
      return fail({}, "partitions differ");
    }
    return std::nullopt;
  });
  if (!camb) return;

  rec.run("cambrian-keeps-sortable-join-irreducibles", scope, [&]() -> Check {
    for (const auto& ji : L.join_irreducibles()) {
      if (d.sortable[ji.element.index] && camb->same_class(ji.element, ji.lower_cover)) {
        return fail({ji.element});
      }
    }
    return std::nullopt;
  });

  rec.run("cambrian-contracts-nonsortable-join-irreducibles", scope, [&]() -> Check {
    for (const auto& ji : L.join_irreducibles()) {
      if (!d.sortable[ji.element.index] && !camb->same_class(ji.element, ji.lower_cover)) {
        return fail({ji.element});
      }
    }
    return std::nullopt;
  });

  rec.run("cambrian-restricts-to-parabolic", scope + ", every maximal J", [&]() -> Check {
    for (Generator s = 0; s < rank; ++s) {
      CoxeterElement sub = c.restrict_without(s);
      auto sub_camb = cambrian_congruence(L, sub);
      for (const auto& ji : L.join_irreducibles()) {
        if (!L.in_parabolic(ji.element, sub.support())) continue;
        if (camb->same_class(ji.element, ji.lower_cover) !=
            sub_camb.same_class(ji.element, ji.lower_cover)) {
          return fail({ji.element}, "J omits s" + std::to_string(s));
        }
      }
    }
    return std::nullopt;
  });

  rec.run("cambrian-contracts-outside-parabolic", scope + ", every initial s", [&]() -> Check {
    for (Generator s : c.initial_letters().members()) {
      GeneratorSet J = sys.generators().without(s);
      for (const auto& ji : L.join_irreducibles()) {
        if (sys.left_descents(ji.element).contains(s) || L.in_parabolic(ji.element, J)) continue;
        if (!camb->same_class(ji.element, ji.lower_cover)) {
          return fail({ji.element}, "s" + std::to_string(s));
        }
      }
    }
    return std::nullopt;
  });

  rec.run("rank-two-nonsortables-are-join-irreducible", scope, [&]() -> Check {
    for (std::size_t i = 0; i < sys.size(); ++i) {
      if (d.sortable[i] || degree(sys, elem(i)) > 2) continue;
      if (!L.is_join_irreducible(elem(i))) return fail({elem(i)});
    }
    return std::nullopt;
  });

  rec.run("cambrian-from-degree-two", scope, [&]() -> Check {
    std::vector<Element> gens;
    for (const auto& ji : L.join_irreducibles()) {
      if (!d.sortable[ji.element.index] && degree(sys, ji.element) == 2) {
        gens.push_back(ji.element);
      }
    }
    if (!(congruence_contracting(L, gens) == *camb)) return fail({}, "partitions differ");
    return std::nullopt;
  });

  rec.run("congruence-rebuilt-from-contracted", scope, [&]() -> Check {
    auto jis = contracted_join_irreducibles(L, *camb);
    if (!(congruence_contracting(L, jis) == *camb)) return fail({}, "partitions differ");
    return std::nullopt;
  });

  rec.run("quotient-matches-sortable-subposet", scope, [&]() -> Check {
    auto q = quotient_lattice(L, *camb);
    if (!(q.order == induced_subposet(L, d.sortables))) return fail({}, "Hasse diagrams differ");
    return std::nullopt;
  });
}

inline void verify_forcing(const WeakOrderLattice& L, const VerifyOptions& opt,
                           Recorder& rec) {
  const CoxeterSystem& sys = L.system();
  if (sys.size() > opt.forcing_limit) {
    std::string why = "group order above " + std::to_string(opt.forcing_limit);
    rec.skip("forcing-lowers-degree", "all join-irreducible pairs", why);
    rec.skip("congruence-determined-by-contracted", "every Cg(j)", why);
    return;
  }
  auto forcing = forcing_poset(L);
  rec.run("forcing-lowers-degree", "all join-irreducible pairs", [&]() -> Check {
    for (std::size_t a = 0; a < forcing.ji.size(); ++a) {
      for (std::size_t b = 0; b < forcing.ji.size(); ++b) {
        if (!forcing.leq[a][b]) continue;
        if (degree(sys, forcing.ji[b].element) > degree(sys, forcing.ji[a].element)) {
          return fail({forcing.ji[a].element, forcing.ji[b].element});
        }
      }
    }
    return std::nullopt;
  });
  rec.run("congruence-determined-by-contracted", "every Cg(j)", [&]() -> Check {
    std::vector<CongruencePartition> cgs;
    for (const auto& ji : forcing.ji) cgs.push_back(cg(L, ji.element));
    for (std::size_t a = 0; a < cgs.size(); ++a) {
      auto contracted = contracted_join_irreducibles(L, cgs[a]);
      if (!(congruence_contracting(L, contracted) == cgs[a])) {
        return fail({forcing.ji[a].element}, "rebuild");
      }
      for (std::size_t b = 0; b < cgs.size(); ++b) {
        bool same = cgs[a] == cgs[b];
        if (same != (contracted == contracted_join_irreducibles(L, cgs[b]))) {
          return fail({forcing.ji[a].element, forcing.ji[b].element});
        }
      }
    }
    return std::nullopt;
  });
}

}  // namespace detail

/// Runs every property over `L`, with the per-Coxeter-element properties
/// for each of `contexts` (all Coxeter elements when empty).
inline VerifyReport verify_group(const WeakOrderLattice& L, std::string name,
                                 std::vector<CoxeterElement> contexts = {},
                                 const VerifyOptions& opt = {}) {
  using detail::elem;
  const CoxeterSystem& sys = L.system();
  VerifyReport report;
  report.group = std::move(name);
  detail::Recorder rec(report);

  detail::verify_core(L, rec);
  detail::verify_weak_order(L, opt, rec);

  auto all_c = enumerate_coxeter_elements(sys);
  if (contexts.empty()) contexts = all_c;

  rec.run("sortable-count-independent-of-c", "every Coxeter element", [&]() -> detail::Check {
    std::optional<std::size_t> count;
    for (const auto& c : all_c) {
      std::size_t k = enumerate_sortables(L, c).size();
      if (count && *count != k) {
        return detail::Failure{{c.element().index}, "c = " + c.to_string()};
      }
      count = k;
    }
    return std::nullopt;
  });

  Projector proj(L);
  std::vector<CongruencePartition> thetas;
  for (const auto& c : contexts) {
    std::string scope = "c = " + c.to_string();
    detail::ContextData d{&c, std::vector<bool>(sys.size(), false), {}, proj.table(c),
                          proj.table(c.inverse())};
    for (std::size_t i = 0; i < sys.size(); ++i) {
      if (is_sortable(c, elem(i))) {
        d.sortable[i] = true;
        d.sortables.push_back(elem(i));
      }
    }
    detail::verify_sortable(L, d, scope, rec);
    detail::verify_projections(L, proj, d, opt, scope, rec);
    detail::verify_congruence(L, d, scope, rec);
    try {
      thetas.push_back(theta_congruence(L, d.table));
    } catch (const Error&) {
      // already reported by theta-classes-are-projection-intervals
    }
  }

  rec.run("distinct-c-distinct-contracted-sets", "listed Coxeter elements",
          [&]() -> detail::Check {
            for (std::size_t a = 0; a < thetas.size(); ++a) {
              for (std::size_t b = 0; b < thetas.size(); ++b) {
                bool same = thetas[a] == thetas[b];
                bool same_ji = contracted_join_irreducibles(L, thetas[a]) ==
                               contracted_join_irreducibles(L, thetas[b]);
                if (same != same_ji) {
                  return detail::Failure{{}, "contexts " + std::to_string(a) + " and " +
                                                 std::to_string(b)};
                }
              }
            }
            return std::nullopt;
          });

  detail::verify_forcing(L, opt, rec);
  return report;
}

}  // namespace cambrian
