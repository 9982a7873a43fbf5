#pragma once

// Text, JSON and DOT encodings.
//
//   matrix file:  {"rank": n, "m": [[...], ...]}
//   partition:    {"bottoms": [...], "classes": [[...], ...], "tops": [...]}
//   forcing:      {"ji": [{"element": i, "lower_cover": j}, ...], "leq": [[bool]]}
//   lattice:      {"covers": [[lo, hi], ...], "elements": [{"id": i, "word": "..."}]}
//
// JSON objects use sorted keys.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cambrian/congruence.hpp"
#include "cambrian/coxeter.hpp"
#include "cambrian/errors.hpp"
#include "cambrian/sortable.hpp"
#include "cambrian/weak_order.hpp"

namespace cambrian {

using Json = nlohmann::json;

inline CoxeterMatrix matrix_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("rank") || !doc.contains("m")) {
    throw ParseError("matrix file must be an object with \"rank\" and \"m\"");
  }
  if (!doc["rank"].is_number_unsigned() || doc["rank"].get<std::size_t>() == 0) {
    throw ParseError("\"rank\" must be a positive integer");
  }
  const auto n = doc["rank"].get<std::size_t>();
  const Json& rows = doc["m"];
  if (!rows.is_array() || rows.size() != n) {
    throw ParseError("\"m\" must be an array of " + std::to_string(n) + " rows");
  }
  std::vector<std::vector<int>> m(n);
  for (std::size_t s = 0; s < n; ++s) {
    if (!rows[s].is_array() || rows[s].size() != n) {
      throw ParseError("row " + std::to_string(s) + " must have " + std::to_string(n) +
                       " entries");
    }
    for (const Json& v : rows[s]) {
      if (!v.is_number_integer()) {
        throw ParseError("infinite or non-integer entries are not supported");
      }
      int x = v.get<int>();
      if (x <= 0) throw ParseError("infinite or non-positive entries are not supported");
      m[s].push_back(x);
    }
  }
  try {
    return CoxeterMatrix::from_rows(m);
  } catch (const BadMatrix& e) {
    throw ParseError(e.what());
  }
}

inline CoxeterMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open matrix file '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError("malformed JSON in '" + path + "': " + e.what());
  }
  return matrix_from_json(doc);
}

inline Json matrix_to_json(const CoxeterMatrix& m) {
  Json rows = Json::array();
  for (std::size_t s = 0; s < m.rank(); ++s) {
    Json row = Json::array();
    for (std::size_t t = 0; t < m.rank(); ++t) row.push_back(m(s, t));
    rows.push_back(row);
  }
  return Json{{"rank", m.rank()}, {"m", rows}};
}

/// Parses "s1,s0", "s1 s0", "1,0" or the compact digit form "10" / "1|0".
/// Dividers are ignored. The empty string is the empty word.
inline Word parse_word(const std::string& text, std::size_t rank) {
  Word out;
  bool tokenised = false;
  for (char ch : text) {
    if (ch == ',' || ch == 's' || ch == ' ') tokenised = true;
  }
  auto push = [&](std::size_t s) {
    if (s >= rank) {
      throw ParseError("generator s" + std::to_string(s) + " out of range for rank " +
                       std::to_string(rank));
    }
    out.push_back(s);
  };
  if (!tokenised) {
    for (char ch : text) {
      if (ch == '|') continue;
      if (!std::isdigit(static_cast<unsigned char>(ch))) {
        throw ParseError("bad character '" + std::string(1, ch) + "' in word '" + text + "'");
      }
      push(static_cast<std::size_t>(ch - '0'));
    }
    return out;
  }
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    std::string digits = token.front() == 's' ? token.substr(1) : token;
    if (digits.empty() || digits.size() > 3 ||
        !std::all_of(digits.begin(), digits.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      throw ParseError("bad generator '" + token + "' in word '" + text + "'");
    }
    push(static_cast<std::size_t>(std::stoul(digits)));
    token.clear();
  };
  for (char ch : text) {
    if (ch == ',' || ch == ' ' || ch == '|') {
      flush();
    } else {
      token += ch;
    }
  }
  flush();
  return out;
}

/// "s1 s0 s1"; empty for the identity.
inline std::string format_word(const Word& w) {
  std::string out;
  for (Generator s : w) {
    if (!out.empty()) out += ' ';
    out += 's' + std::to_string(s);
  }
  return out;
}

/// "101"; empty for the identity.
inline std::string format_word_compact(const Word& w) {
  std::string out;
  for (Generator s : w) out += std::to_string(s);
  return out;
}

inline Json partition_to_json(const CongruencePartition& p) {
  Json classes = Json::array(), bottoms = Json::array(), tops = Json::array();
  for (const auto& cls : p.classes()) {
    Json c = Json::array();
    for (Element e : cls) c.push_back(e.index);
    classes.push_back(c);
  }
  for (Element e : p.bottoms()) bottoms.push_back(e.index);
  for (Element e : p.tops()) tops.push_back(e.index);
  return Json{{"bottoms", bottoms}, {"classes", classes}, {"tops", tops}};
}

inline Json forcing_to_json(const ForcingPoset& f) {
  Json ji = Json::array();
  for (const auto& j : f.ji) {
    ji.push_back(Json{{"element", j.element.index}, {"lower_cover", j.lower_cover.index}});
  }
  Json leq = Json::array();
  for (const auto& row : f.leq) {
    Json r = Json::array();
    for (bool b : row) r.push_back(b);
    leq.push_back(r);
  }
  return Json{{"ji", ji}, {"leq", leq}};
}

enum class LatticeFormat { Dot, Json };

/// A lattice ready for export: element ids, labels and cover pairs.
struct LatticeExport {
  std::vector<std::pair<Element, std::string>> nodes;
  std::vector<std::pair<Element, Element>> covers;
};

/// Labels an element by its c-sorting word (compact, with dividers) when a
/// Coxeter element is given, otherwise by its compact reduced word.
inline std::string element_label(const CoxeterSystem& sys, Element w,
                                 const CoxeterElement* context) {
  if (context) return c_sorting_word(*context, w).render(true);
  return format_word_compact(sys.reduced_word(w));
}

inline LatticeExport weak_order_export(const WeakOrderLattice& L,
                                       const CoxeterElement* context = nullptr) {
  LatticeExport out;
  for (std::uint32_t i = 0; i < L.size(); ++i) {
    Element w{i};
    out.nodes.emplace_back(w, element_label(L.system(), w, context));
    for (Element v : L.covers_up(w)) out.covers.emplace_back(w, v);
  }
  std::sort(out.covers.begin(), out.covers.end());
  return out;
}

inline LatticeExport induced_export(const WeakOrderLattice& L, const InducedLattice& lat,
                                    const CoxeterElement* context = nullptr) {
  LatticeExport out;
  for (Element w : lat.elements) out.nodes.emplace_back(w, element_label(L.system(), w, context));
  for (auto [a, b] : lat.covers) out.covers.emplace_back(lat.elements[a], lat.elements[b]);
  std::sort(out.covers.begin(), out.covers.end());
  return out;
}

inline std::string export_lattice(const LatticeExport& lat, LatticeFormat format) {
  if (format == LatticeFormat::Json) {
    Json elements = Json::array(), covers = Json::array();
    for (const auto& [w, label] : lat.nodes) {
      elements.push_back(Json{{"id", w.index}, {"word", label}});
    }
    for (auto [a, b] : lat.covers) covers.push_back(Json::array({a.index, b.index}));
    return Json{{"covers", covers}, {"elements", elements}}.dump() + "\n";
  }
  std::ostringstream os;
  os << "digraph {\n  rankdir=BT;\n";
  for (const auto& [w, label] : lat.nodes) {
    os << "  " << w.index << " [label=\"" << label << "\"];\n";
  }
  for (auto [a, b] : lat.covers) os << "  " << a.index << " -> " << b.index << ";\n";
  os << "}\n";
  return os.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace cambrian
