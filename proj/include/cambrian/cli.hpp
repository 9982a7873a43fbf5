#pragma once

// The `cambrian` command line. run_command() is the whole program minus
// main(), so tests can drive it with string streams.
//
// Exit codes: 0 success, 1 user error, 2 a verification failed.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cambrian/congruence.hpp"
#include "cambrian/coxeter.hpp"
#include "cambrian/errors.hpp"
#include "cambrian/group_spec.hpp"
#include "cambrian/io.hpp"
#include "cambrian/projections.hpp"
#include "cambrian/sortable.hpp"
#include "cambrian/verify.hpp"
#include "cambrian/weak_order.hpp"

namespace cambrian {

inline constexpr std::size_t kDefaultMaxOrder = 20000;

namespace cli {

struct Options {
  std::string group;
  std::string matrix_path;
  std::size_t max_order = kDefaultMaxOrder;
  std::string format = "text";
  std::string output;
  std::string coxeter;
  std::string word;
  bool compact = false;
  bool count = false;
  bool down = false;
  bool up = false;
  bool all_c = false;
  bool forcing = false;
};

/// The group, its lattice and the label used in output.
struct Loaded {
  std::string label;
  CoxeterSystem sys;
  std::optional<WeakOrderLattice> lattice;
};

inline void load(const Options& o, Loaded& g) {
  if (o.group.empty() == o.matrix_path.empty()) {
    throw ParseError("give exactly one of a group name or --matrix <path>");
  }
  CoxeterMatrix m = o.matrix_path.empty() ? parse_group_spec(o.group)
                                          : read_matrix_file(o.matrix_path);
  g.label = o.matrix_path.empty() ? o.group : o.matrix_path;
  g.sys = build_system(m, o.max_order);
  g.lattice.emplace(g.sys);
}

inline CoxeterElement coxeter_from(const Options& o, const CoxeterSystem& sys) {
  if (o.coxeter.empty()) throw ParseError("this command needs a Coxeter element (-c)");
  return CoxeterElement(sys, parse_word(o.coxeter, sys.rank()));
}

inline Element element_from(const Options& o, const CoxeterSystem& sys) {
  return sys.from_word(parse_word(o.word, sys.rank()));
}

inline std::string word_text(const CoxeterSystem& sys, Element w) {
  return format_word(sys.reduced_word(w));
}

inline void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.output.empty()) {
    out << text;
  } else {
    write_text_file(o.output, text);
  }
}

inline void require_format(const Options& o, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (o.format == f) return;
  }
  std::string list;
  for (const char* f : allowed) list += std::string(list.empty() ? "" : ", ") + f;
  throw ParseError("format '" + o.format + "' not available here (use " + list + ")");
}

inline int cmd_info(const Options& o, std::ostream& out) {
  require_format(o, {"text", "json"});
  Loaded g;
  load(o, g);
  const auto& sys = g.sys;
  auto cs = enumerate_coxeter_elements(sys);
  if (o.format == "json") {
    Json doc{{"group", g.label},
             {"rank", sys.rank()},
             {"order", sys.size()},
             {"reflections", sys.num_reflections()},
             {"longest", word_text(sys, sys.longest())},
             {"coxeter_elements", cs.size()},
             {"matrix", matrix_to_json(sys.matrix())["m"]}};
    emit(o, out, doc.dump() + "\n");
    return 0;
  }
  std::ostringstream os;
  os << "group: " << g.label << "\n"
     << "rank: " << sys.rank() << "\n"
     << "order: " << sys.size() << "\n"
     << "reflections: " << sys.num_reflections() << "\n"
     << "longest element: " << word_text(sys, sys.longest()) << " (length "
     << sys.length(sys.longest()) << ")\n"
     << "coxeter elements: " << cs.size() << "\n"
     << "matrix:\n";
  for (std::size_t s = 0; s < sys.rank(); ++s) {
    os << " ";
    for (std::size_t t = 0; t < sys.rank(); ++t) os << ' ' << sys.matrix()(s, t);
    os << "\n";
  }
  os << "generators are numbered from 0: s0 .. s" << sys.rank() - 1
     << " (a 1-based label s_i is s" << "{i-1} here)\n";
  emit(o, out, os.str());
  return 0;
}

inline int cmd_sortables(const Options& o, std::ostream& out) {
  require_format(o, {"text", "json"});
  Loaded g;
  load(o, g);
  auto c = coxeter_from(o, g.sys);
  auto list = enumerate_sortables(*g.lattice, c);
  if (o.format == "json") {
    Json doc{{"coxeter_element", c.to_string()}, {"count", list.size()}};
    if (!o.count) {
      Json rows = Json::array();
      for (Element w : list) {
        rows.push_back({{"id", w.index}, {"word", c_sorting_word(c, w).render(o.compact)}});
      }
      doc["elements"] = rows;
    }
    emit(o, out, doc.dump() + "\n");
    return 0;
  }
  std::ostringstream os;
  if (o.count) {
    os << list.size() << "\n";
  } else {
    for (Element w : list) {
      std::string word = c_sorting_word(c, w).render(o.compact);
      os << w.index << (word.empty() ? "" : " ") << word << "\n";
    }
  }
  emit(o, out, os.str());
  return 0;
}

inline int cmd_sorting_word(const Options& o, std::ostream& out) {
  require_format(o, {"text", "json"});
  Loaded g;
  load(o, g);
  auto c = coxeter_from(o, g.sys);
  Element w = element_from(o, g.sys);
  SortingWord sw = c_sorting_word(c, w);
  if (o.format == "json") {
    Json doc{{"id", w.index},
             {"word", sw.render(o.compact)},
             {"sortable", is_sortable(c, w)}};
    emit(o, out, doc.dump() + "\n");
    return 0;
  }
  emit(o, out, sw.render(o.compact) + "\n");
  return 0;
}

inline int cmd_project(const Options& o, std::ostream& out) {
  require_format(o, {"text", "json"});
  if (o.down == o.up) throw ParseError("give exactly one of --down or --up");
  Loaded g;
  load(o, g);
  auto c = coxeter_from(o, g.sys);
  Element w = element_from(o, g.sys);
  Projector proj(*g.lattice);
  Element r = o.down ? proj.down(c, w) : proj.up(c, w);
  if (o.format == "json") {
    emit(o, out, Json{{"id", r.index}, {"word", word_text(g.sys, r)}}.dump() + "\n");
    return 0;
  }
  emit(o, out, word_text(g.sys, r) + "\n");
  return 0;
}

inline int cmd_congruence(const Options& o, std::ostream& out) {
  require_format(o, {"text", "json"});
  Loaded g;
  load(o, g);
  const auto& L = *g.lattice;
  if (o.forcing) {
    auto f = forcing_poset(L);
    if (o.format == "json") {
      emit(o, out, forcing_to_json(f).dump() + "\n");
      return 0;
    }
    std::ostringstream os;
    for (std::size_t a = 0; a < f.ji.size(); ++a) {
      os << f.ji[a].element.index << " forces:";
      for (std::size_t b = 0; b < f.ji.size(); ++b) {
        if (f.leq[b][a] && a != b) os << ' ' << f.ji[b].element.index;
      }
      os << "\n";
    }
    emit(o, out, os.str());
    return 0;
  }
  auto c = coxeter_from(o, g.sys);
  auto p = cambrian_congruence(L, c);
  if (o.format == "json") {
    emit(o, out, partition_to_json(p).dump() + "\n");
    return 0;
  }
  std::ostringstream os;
  for (std::size_t k = 0; k < p.num_classes(); ++k) {
    os << "bottom " << p.bottoms()[k].index << " top " << p.tops()[k].index << ":";
    for (Element e : p.classes()[k]) os << ' ' << e.index;
    os << "\n";
  }
  emit(o, out, os.str());
  return 0;
}

inline int cmd_lattice(const Options& o, std::ostream& out) {
  require_format(o, {"text", "json", "dot"});
  Loaded g;
  load(o, g);
  const auto& L = *g.lattice;
  LatticeExport ex;
  std::optional<CoxeterElement> c;
  if (!o.coxeter.empty()) {
    c = coxeter_from(o, g.sys);
    ex = induced_export(L, cambrian_lattice(L, *c), &*c);
  } else {
    ex = weak_order_export(L);
  }
  if (o.format == "dot") {
    emit(o, out, export_lattice(ex, LatticeFormat::Dot));
  } else if (o.format == "json") {
    emit(o, out, export_lattice(ex, LatticeFormat::Json));
  } else {
    std::ostringstream os;
    os << ex.nodes.size() << " elements, " << ex.covers.size() << " covers\n";
    for (const auto& [w, label] : ex.nodes) {
      os << w.index << (label.empty() ? "" : " ") << label << "\n";
    }
    for (auto [a, b] : ex.covers) os << a.index << " -> " << b.index << "\n";
    emit(o, out, os.str());
  }
  return 0;
}

inline int cmd_catalan(const Options& o, std::ostream& out) {
  require_format(o, {"text", "json"});
  Loaded g;
  load(o, g);
  std::vector<CoxeterElement> cs;
  if (o.coxeter.empty()) {
    cs = enumerate_coxeter_elements(g.sys);
  } else {
    cs.push_back(coxeter_from(o, g.sys));
  }
  std::vector<std::size_t> counts;
  for (const auto& c : cs) counts.push_back(enumerate_sortables(*g.lattice, c).size());
  bool agree = std::adjacent_find(counts.begin(), counts.end(), std::not_equal_to<>()) ==
               counts.end();
  if (o.format == "json") {
    Json rows = Json::array();
    for (std::size_t k = 0; k < cs.size(); ++k) {
      rows.push_back({{"coxeter_element", cs[k].to_string()}, {"count", counts[k]}});
    }
    emit(o, out, Json{{"counts", rows}, {"agree", agree}}.dump() + "\n");
  } else {
    std::ostringstream os;
    if (cs.size() == 1) {
      os << counts.front() << "\n";
    } else {
      for (std::size_t k = 0; k < cs.size(); ++k) {
        os << cs[k].to_string() << ": " << counts[k] << "\n";
      }
    }
    emit(o, out, os.str());
  }
  if (!agree) throw VerificationFailed("sortable counts differ between Coxeter elements");
  return 0;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  require_format(o, {"text", "json"});
  if (o.all_c && !o.coxeter.empty()) throw ParseError("-c and --all-c are exclusive");
  Loaded g;
  load(o, g);
  std::vector<CoxeterElement> cs;
  if (!o.coxeter.empty()) cs.push_back(coxeter_from(o, g.sys));
  auto report = verify_group(*g.lattice, g.label, cs);
  emit(o, out, o.format == "json" ? report.to_json().dump() + "\n" : report.to_text());
  if (!report.passed()) {
    throw VerificationFailed(std::to_string(report.failures()) + " properties failed");
  }
  return 0;
}

/// Runs `body`, mapping errors to exit codes and messages on `err`.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const VerificationFailed& e) {
    err << "verification failed: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace cli

/// Runs one invocation. `args` excludes the program name.
inline int run_command(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  using cli::Options;
  Options o;
  CLI::App app{"Coxeter-sortable elements, Cambrian congruences and Cambrian lattices",
               "cambrian"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub, bool needs_c) {
    sub->add_option("group", o.group, "A<n>, B<n>, D<n>, E6-E8, F4, H3, H4 or I2(<m>)");
    sub->add_option("--matrix", o.matrix_path, "Coxeter matrix JSON file instead of a name");
    sub->add_option("--max-order", o.max_order, "Refuse groups larger than this")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", o.format, "text, json or dot");
    sub->add_option("-o,--output", o.output, "Write to this file instead of stdout");
    auto* c = sub->add_option("-c,--coxeter", o.coxeter, "Coxeter element, e.g. s0,s1");
    if (needs_c) c->required();
  };

  auto* info = app.add_subcommand("info", "Group order, rank and matrix");
  common(info, false);

  auto* sortables = app.add_subcommand("sortables", "List the c-sortable elements");
  common(sortables, true);
  sortables->add_flag("--count", o.count, "Print only how many there are");
  sortables->add_flag("--compact", o.compact, "Digit form of sorting words");

  auto* sorting = app.add_subcommand("sorting-word", "The c-sorting word of an element");
  common(sorting, true);
  sorting->add_option("-w,--word", o.word, "Element as a word, e.g. s1,s0")->required();
  sorting->add_flag("--compact", o.compact, "Digit form");

  auto* project = app.add_subcommand("project", "Apply pi_down or pi_up");
  common(project, true);
  project->add_option("-w,--word", o.word, "Element as a word, e.g. s1,s0")->required();
  project->add_flag("--down", o.down, "Largest c-sortable element below");
  project->add_flag("--up", o.up, "Smallest c-antisortable element above");

  auto* congruence = app.add_subcommand("congruence", "Classes of the Cambrian congruence");
  common(congruence, false);
  congruence->add_flag("--forcing", o.forcing, "Print the forcing order instead");

  auto* lattice = app.add_subcommand("lattice", "Cambrian lattice (or weak order without -c)");
  common(lattice, false);

  auto* catalan = app.add_subcommand("catalan", "Count c-sortables for every c");
  common(catalan, false);

  auto* verify = app.add_subcommand("verify", "Check every property on the group");
  common(verify, false);
  verify->add_flag("--all-c", o.all_c, "Every Coxeter element (the default)");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  return cli::guarded(err, [&] {
    if (info->parsed()) return cli::cmd_info(o, out);
    if (sortables->parsed()) return cli::cmd_sortables(o, out);
    if (sorting->parsed()) return cli::cmd_sorting_word(o, out);
    if (project->parsed()) return cli::cmd_project(o, out);
    if (congruence->parsed()) {
      if (!o.forcing && o.coxeter.empty()) {
        throw ParseError("congruence needs -c (or --forcing)");
      }
      return cli::cmd_congruence(o, out);
    }
    if (lattice->parsed()) return cli::cmd_lattice(o, out);
    if (catalan->parsed()) return cli::cmd_catalan(o, out);
    return cli::cmd_verify(o, out);
  });
}

}  // namespace cambrian
