#pragma once

// Text formats: graph files declaring a presentation (graph + vertex groups)
// and automorphism files declaring a vertex permutation with per-vertex
// group isomorphisms and an optional character.  Parsing is strict and every
// syntax error carries its line number; shape mismatches against the
// declared groups surface as SpecMismatch so callers can distinguish
// malformed text from structurally invalid data.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ccgp/errors.hpp"
#include "ccgp/graph.hpp"
#include "ccgp/group.hpp"
#include "ccgp/morphisms.hpp"
#include "ccgp/word.hpp"

namespace ccgp {

namespace detail {

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Comment-stripped, trimmed lines paired with their 1-based line numbers.
inline std::vector<std::pair<std::size_t, std::string>> effective_lines(
    const std::string& text) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const std::size_t hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = trim(line);
    if (!t.empty()) out.emplace_back(number, t);
  }
  return out;
}

// Next whitespace-delimited token starting at pos; advances pos past it.
inline std::string next_token(const std::string& s, std::size_t& pos) {
  while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  const std::size_t start = pos;
  while (pos < s.size() && s[pos] != ' ' && s[pos] != '\t') ++pos;
  return s.substr(start, pos - start);
}

[[noreturn]] inline void line_error(std::size_t number, const std::string& what) {
  throw ParseError("line " + std::to_string(number) + ": " + what);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Graph files
//
//   # comment
//   graph <name>
//   vertex <id> group <spec>        e.g.  vertex w1 group Z/2
//   edge <a> <b>
//
// The graph line comes first; vertices are declared before the edges that
// use them; duplicate vertices and duplicate (also reversed) edges are
// rejected.  Group specs use the element-literal grammar: Z, Z/n, Fk,
// sum(...), wreath(base, acting).

inline Presentation parse_graph_text(const std::string& text) {
  std::string graph_name;
  bool have_graph = false;
  std::vector<std::string> names;
  std::vector<VertexGroupSpec> specs;
  std::map<std::string, int> index;
  std::set<std::pair<std::string, std::string>> edge_seen;
  std::vector<std::pair<std::string, std::string>> edges;

  for (const auto& [number, line] : detail::effective_lines(text)) {
    std::size_t pos = 0;
    const std::string head = detail::next_token(line, pos);
    if (head == "graph") {
      if (have_graph) detail::line_error(number, "duplicate graph line");
      graph_name = detail::trim(line.substr(pos));
      if (graph_name.empty())
        detail::line_error(number, "graph line needs a name");
      have_graph = true;
      continue;
    }
    if (!have_graph)
      detail::line_error(number, "expected 'graph <name>' before '" + head + "'");
    if (head == "vertex") {
      const std::string id = detail::next_token(line, pos);
      if (id.empty()) detail::line_error(number, "vertex line needs a name");
      const std::string keyword = detail::next_token(line, pos);
      if (keyword != "group")
        detail::line_error(number,
                           "expected 'group' after the vertex name, got '" +
                               keyword + "'");
      const std::string spec_text = detail::trim(line.substr(pos));
      if (spec_text.empty())
        detail::line_error(number, "vertex line needs a group spec");
      if (index.count(id))
        detail::line_error(number, "duplicate vertex '" + id + "'");
      index.emplace(id, static_cast<int>(names.size()));
      names.push_back(id);
      try {
        specs.push_back(parse_spec(spec_text));
      } catch (const ParseError& e) {
        detail::line_error(number, e.what());
      }
      continue;
    }
    if (head == "edge") {
      const std::string a = detail::next_token(line, pos);
      const std::string b = detail::next_token(line, pos);
      if (a.empty() || b.empty())
        detail::line_error(number, "edge line needs two vertex names");
      if (!detail::trim(line.substr(pos)).empty())
        detail::line_error(number, "edge line has trailing text");
      if (!index.count(a))
        detail::line_error(number, "unknown vertex '" + a + "'");
      if (!index.count(b))
        detail::line_error(number, "unknown vertex '" + b + "'");
      if (a == b) detail::line_error(number, "self-loop on '" + a + "'");
      const auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
      if (!edge_seen.insert(key).second)
        detail::line_error(number, "duplicate edge " + a + " " + b);
      edges.emplace_back(a, b);
      continue;
    }
    detail::line_error(number, "unknown directive '" + head + "'");
  }

  if (!have_graph) throw ParseError("graph file is empty");
  if (names.empty()) throw ParseError("graph file declares no vertices");
  return Presentation(Graph(graph_name, names, edges), specs);
}

inline Presentation read_graph_file(const std::string& path) {
  return parse_graph_text(detail::read_text_file(path));
}

// ---------------------------------------------------------------------------
// Automorphism files
//
//   source <graph-file>
//   target <graph-file>
//   sigma: <v>-><w>                 every source vertex exactly once
//   phi <v>: <descriptor>           defaults to identity when omitted
//   char <v>: <value>               defaults to zero when omitted
//
// Descriptors: identity | unit <k> | sign + | sign - |
//              free [<word>...] ; [<word>...] | sum(<d>, ...) |
//              wreath(<base d>, <acting d>).
// Character values: p/q per vertex kind — a single fraction for cyclic
// (must be a multiple of 1/n) and integer groups, one fraction per letter
// for free groups, (v1, v2, ...) for direct sums and {base | acting} for
// wreath products.

struct AutomorphismFile {
  std::string source_ref;
  std::string target_ref;
  LocalAutomorphism map;
  Character character;
  bool has_character = false;
};

namespace detail {

inline Phase parse_phase_literal(const std::string& text) {
  const std::vector<std::string> parts = split_top(trim(text), '/');
  if (parts.size() == 1) return Phase::of(parse_int(parts[0]), 1);
  if (parts.size() == 2)
    return Phase::of(parse_int(parts[0]), parse_int(parts[1]));
  throw ParseError("expected p or p/q, got '" + text + "'");
}

// Splits "[..] [..] [..]" into the bracketed chunks.
inline std::vector<std::string> bracket_chunks(const std::string& text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == ' ' || text[pos] == '\t') {
      ++pos;
      continue;
    }
    if (text[pos] != '[')
      throw ParseError("expected a bracketed free word at '" +
                       text.substr(pos) + "'");
    const std::size_t close = text.find(']', pos);
    if (close == std::string::npos)
      throw ParseError("unbalanced '[' in '" + text + "'");
    out.push_back(text.substr(pos, close - pos + 1));
    pos = close + 1;
  }
  return out;
}

inline GroupIso parse_descriptor(const std::string& text,
                                 const VertexGroupSpec& src,
                                 const VertexGroupSpec& dst) {
  using Kind = VertexGroupSpec::Kind;
  const std::string t = trim(text);
  if (t.empty()) throw ParseError("empty descriptor");
  if (t == "identity") return GroupIso::identity();
  std::size_t pos = 0;
  const std::string head = next_token(t, pos);
  const std::string rest = trim(t.substr(pos));
  if (head == "unit") return GroupIso::cyclic_unit(parse_int(rest));
  if (head == "sign") {
    if (rest == "+") return GroupIso::integer_sign(1);
    if (rest == "-") return GroupIso::integer_sign(-1);
    throw ParseError("sign descriptor needs + or -, got '" + rest + "'");
  }
  if (head == "free") {
    if (src.kind() != Kind::Free || dst.kind() != Kind::Free)
      throw SpecMismatch("free descriptor given for groups " + src.to_text() +
                         " and " + dst.to_text());
    const std::vector<std::string> halves = split_top(rest, ';');
    if (halves.size() != 2)
      throw ParseError(
          "free descriptor needs images ; preimages, got '" + rest + "'");
    std::vector<GroupElement> images, preimages;
    for (const std::string& chunk : bracket_chunks(trim(halves[0])))
      images.push_back(parse_element(dst, chunk));
    for (const std::string& chunk : bracket_chunks(trim(halves[1])))
      preimages.push_back(parse_element(src, chunk));
    return GroupIso::free_images(std::move(images), std::move(preimages));
  }
  if (t.rfind("sum(", 0) == 0 && t.back() == ')') {
    if (src.kind() != Kind::DirectSum || dst.kind() != Kind::DirectSum)
      throw SpecMismatch("sum descriptor given for groups " + src.to_text() +
                         " and " + dst.to_text());
    const std::vector<std::string> parts =
        split_top(t.substr(4, t.size() - 5), ',');
    if (parts.size() != src.parts().size() ||
        parts.size() != dst.parts().size())
      throw SpecMismatch("sum descriptor has " +
                         std::to_string(parts.size()) + " parts but " +
                         src.to_text() + " -> " + dst.to_text() +
                         " needs " + std::to_string(src.parts().size()));
    std::vector<GroupIso> sub;
    for (std::size_t i = 0; i < parts.size(); ++i)
      sub.push_back(parse_descriptor(parts[i], src.parts()[i],
                                     dst.parts()[i]));
    return GroupIso::direct_sum(std::move(sub));
  }
  if (t.rfind("wreath(", 0) == 0 && t.back() == ')') {
    if (src.kind() != Kind::SplitWreath || dst.kind() != Kind::SplitWreath)
      throw SpecMismatch("wreath descriptor given for groups " +
                         src.to_text() + " and " + dst.to_text());
    const std::vector<std::string> parts =
        split_top(t.substr(7, t.size() - 8), ',');
    if (parts.size() != 2)
      throw ParseError("wreath descriptor needs two parts, got '" + t + "'");
    return GroupIso::wreath_pair(
        parse_descriptor(parts[0], src.base(), dst.base()),
        parse_descriptor(parts[1], src.acting(), dst.acting()));
  }
  throw ParseError("unknown descriptor '" + t + "'");
}

inline CharacterPart parse_character_part(const std::string& text,
                                          const VertexGroupSpec& spec) {
  using Kind = VertexGroupSpec::Kind;
  const std::string t = trim(text);
  if (t.empty()) throw ParseError("empty character value");
  switch (spec.kind()) {
    case Kind::Cyclic: {
      const Phase ph = parse_phase_literal(t);
      if (ph.is_zero()) return CharacterPart::cyclic(0);
      if (spec.modulus() % ph.denominator() != 0)
        throw SpecMismatch("character value " + ph.to_text() +
                           " is not a multiple of 1/" + spec.modulus().str() +
                           " on " + spec.to_text());
      return CharacterPart::cyclic(ph.numerator() *
                                   (spec.modulus() / ph.denominator()));
    }
    case Kind::Integers:
      return CharacterPart::integers(parse_phase_literal(t));
    case Kind::Free: {
      std::vector<Phase> phases;
      std::size_t pos = 0;
      for (std::string tok = next_token(t, pos); !tok.empty();
           tok = next_token(t, pos))
        phases.push_back(parse_phase_literal(tok));
      if (phases.size() != static_cast<std::size_t>(spec.rank()))
        throw SpecMismatch("character for " + spec.to_text() + " needs " +
                           std::to_string(spec.rank()) + " phases, got " +
                           std::to_string(phases.size()));
      return CharacterPart::free_letters(std::move(phases));
    }
    case Kind::DirectSum: {
      if (t.front() != '(' || t.back() != ')')
        throw ParseError("sum character needs the form (v1, v2, ...), got '" +
                         t + "'");
      const std::vector<std::string> parts =
          split_top(t.substr(1, t.size() - 2), ',');
      if (parts.size() != spec.parts().size())
        throw SpecMismatch("character for " + spec.to_text() + " needs " +
                           std::to_string(spec.parts().size()) +
                           " parts, got " + std::to_string(parts.size()));
      std::vector<CharacterPart> sub;
      for (std::size_t i = 0; i < parts.size(); ++i)
        sub.push_back(parse_character_part(parts[i], spec.parts()[i]));
      return CharacterPart::direct_sum(std::move(sub));
    }
    case Kind::SplitWreath: {
      if (t.front() != '{' || t.back() != '}')
        throw ParseError(
            "wreath character needs the form {base | acting}, got '" + t +
            "'");
      const std::vector<std::string> parts =
          split_top(t.substr(1, t.size() - 2), '|');
      if (parts.size() != 2)
        throw ParseError("wreath character needs two parts, got '" + t + "'");
      return CharacterPart::wreath(
          parse_character_part(parts[0], spec.base()),
          parse_character_part(parts[1], spec.acting()));
    }
  }
  throw ParseError("unhandled group kind in character value");
}

}  // namespace detail

inline AutomorphismFile parse_automorphism_text(const std::string& text,
                                                const Presentation& source,
                                                const Presentation& target) {
  const Graph& sg = source.graph();
  const Graph& tg = target.graph();
  std::string source_ref, target_ref;
  std::vector<int> sigma(sg.size(), -1);
  std::map<int, std::pair<std::size_t, std::string>> phi_lines;
  std::map<int, std::pair<std::size_t, std::string>> char_lines;
  bool any_char = false;

  for (const auto& [number, line] : detail::effective_lines(text)) {
    std::size_t pos = 0;
    const std::string head = detail::next_token(line, pos);
    if (head == "source" || head == "target") {
      std::string& ref = head == "source" ? source_ref : target_ref;
      if (!ref.empty())
        detail::line_error(number, "duplicate " + head + " line");
      ref = detail::trim(line.substr(pos));
      if (ref.empty())
        detail::line_error(number, head + " line needs a file name");
      continue;
    }
    if (head == "sigma:") {
      const std::string rest = detail::trim(line.substr(pos));
      const std::size_t arrow = rest.find("->");
      if (arrow == std::string::npos)
        detail::line_error(number, "sigma line needs the form v->w");
      const std::string from = detail::trim(rest.substr(0, arrow));
      const std::string to = detail::trim(rest.substr(arrow + 2));
      if (!sg.has_vertex(from))
        detail::line_error(number, "unknown source vertex '" + from + "'");
      if (!tg.has_vertex(to))
        detail::line_error(number, "unknown target vertex '" + to + "'");
      const int v = sg.index_of(from);
      if (sigma[v] != -1)
        detail::line_error(number, "duplicate sigma line for '" + from + "'");
      sigma[v] = tg.index_of(to);
      continue;
    }
    if (head == "phi" || head == "char") {
      const std::string rest = line.substr(pos);
      const std::size_t colon = rest.find(':');
      if (colon == std::string::npos)
        detail::line_error(number, head + " line needs 'vertex: value'");
      const std::string vname = detail::trim(rest.substr(0, colon));
      const std::string value = detail::trim(rest.substr(colon + 1));
      if (!sg.has_vertex(vname))
        detail::line_error(number, "unknown source vertex '" + vname + "'");
      if (value.empty()) detail::line_error(number, head + " value is empty");
      auto& slot = head == "phi" ? phi_lines : char_lines;
      const int v = sg.index_of(vname);
      if (slot.count(v))
        detail::line_error(number,
                           "duplicate " + head + " line for '" + vname + "'");
      slot.emplace(v, std::make_pair(number, value));
      if (head == "char") any_char = true;
      continue;
    }
    detail::line_error(number, "unknown directive '" + head + "'");
  }

  for (int v = 0; v < sg.size(); ++v)
    if (sigma[v] == -1)
      throw ParseError("sigma does not cover vertex '" + sg.vertex_name(v) +
                       "'");
  const GraphIsometry iso(sg, tg, sigma);

  std::vector<GroupIso> phi;
  for (int v = 0; v < sg.size(); ++v) {
    const auto it = phi_lines.find(v);
    if (it == phi_lines.end()) {
      phi.push_back(GroupIso::identity());
      continue;
    }
    try {
      phi.push_back(detail::parse_descriptor(it->second.second,
                                             source.group_of(v),
                                             target.group_of(iso.apply(v))));
    } catch (const ParseError& e) {
      detail::line_error(it->second.first, e.what());
    }
  }

  std::vector<CharacterPart> parts;
  for (int v = 0; v < sg.size(); ++v) {
    const auto it = char_lines.find(v);
    if (it == char_lines.end()) {
      parts.push_back(CharacterPart::zero());
      continue;
    }
    try {
      parts.push_back(
          detail::parse_character_part(it->second.second, source.group_of(v)));
    } catch (const ParseError& e) {
      detail::line_error(it->second.first, e.what());
    }
  }

  return AutomorphismFile{std::move(source_ref), std::move(target_ref),
                          make_local(source, target, iso, std::move(phi)),
                          Character(source, std::move(parts)), any_char};
}

inline AutomorphismFile read_automorphism_file(const std::string& path) {
  const std::string text = detail::read_text_file(path);
  std::string source_ref, target_ref;
  for (const auto& [number, line] : detail::effective_lines(text)) {
    std::size_t pos = 0;
    const std::string head = detail::next_token(line, pos);
    if (head == "source" && source_ref.empty())
      source_ref = detail::trim(line.substr(pos));
    if (head == "target" && target_ref.empty())
      target_ref = detail::trim(line.substr(pos));
  }
  if (source_ref.empty())
    throw ParseError("automorphism file '" + path + "' has no source line");
  if (target_ref.empty())
    throw ParseError("automorphism file '" + path + "' has no target line");
  const std::filesystem::path base =
      std::filesystem::path(path).parent_path();
  const Presentation source =
      read_graph_file((base / source_ref).string());
  const Presentation target =
      read_graph_file((base / target_ref).string());
  return parse_automorphism_text(text, source, target);
}

}  // namespace ccgp
