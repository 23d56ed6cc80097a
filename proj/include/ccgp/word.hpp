// Words over a graph product presentation and their normal forms.
//
// A presentation assigns a vertex group to every vertex of a graph; the
// group it presents is the free product of the vertex groups modulo
// commutation of groups at adjacent vertices.  A word is a sequence of
// syllables (vertex, nontrivial element).  Two reduced words represent the
// same element exactly when they differ by swaps of adjacent syllables at
// adjacent vertices, so the lexicographically least such shuffle is a
// complete equality invariant.
#pragma once

#include <cassert>
#include <string>
#include <utility>
#include <vector>

#include "ccgp/graph.hpp"
#include "ccgp/group.hpp"

namespace ccgp {

class Presentation {
 public:
  Presentation(Graph g, std::vector<VertexGroupSpec> specs)
      : graph_(std::move(g)), specs_(std::move(specs)) {
    if (static_cast<int>(specs_.size()) != graph_.size())
      throw Error("presentation: one group spec per vertex required");
  }

  // Same group on every vertex.
  Presentation(Graph g, const VertexGroupSpec& uniform)
      : graph_(std::move(g)), specs_(graph_.size(), uniform) {}

  const Graph& graph() const { return graph_; }
  const VertexGroupSpec& group_of(int v) const {
    if (v < 0 || v >= graph_.size())
      throw SpecMismatch("presentation: vertex index out of range");
    return specs_[static_cast<std::size_t>(v)];
  }

  friend bool operator==(const Presentation& a, const Presentation& b) {
    return a.graph_ == b.graph_ && a.specs_ == b.specs_;
  }

 private:
  Graph graph_;
  std::vector<VertexGroupSpec> specs_;
};

// One syllable.  The element is never the identity of its vertex group.
struct Syllable {
  int vertex;
  GroupElement element;
  friend bool operator==(const Syllable&, const Syllable&) = default;
  friend bool operator<(const Syllable& a, const Syllable& b) {
    if (a.vertex != b.vertex) return a.vertex < b.vertex;
    return a.element < b.element;
  }
};

using Word = std::vector<Syllable>;

// Validates vertices, payload shapes, and nontriviality.
inline void check_word(const Presentation& p, const Word& w) {
  for (const Syllable& s : w) {
    const VertexGroupSpec& spec = p.group_of(s.vertex);
    if (!spec.valid(s.element))
      throw SpecMismatch("word: syllable at '" +
                         p.graph().vertex_name(s.vertex) +
                         "' does not belong to " + spec.to_text());
    if (s.element.is_identity())
      throw SpecMismatch("word: identity syllable at '" +
                         p.graph().vertex_name(s.vertex) + "'");
  }
}

// Assembles a word from raw (vertex, element) pairs, dropping identity
// factors (they contribute nothing to the product).
inline Word make_word(const Presentation& p,
                      const std::vector<std::pair<int, GroupElement>>& raw) {
  Word w;
  for (const auto& [v, a] : raw) {
    p.group_of(v).check(a);
    if (!a.is_identity()) w.push_back(Syllable{v, a});
  }
  return w;
}

// True when no further reduction applies: no identity syllables, and no two
// same-vertex syllables separated only by syllables commuting with them.
inline bool is_normal_form(const Presentation& p, const Word& w) {
  for (const Syllable& s : w)
    if (s.element.is_identity() || !p.group_of(s.vertex).valid(s.element))
      return false;
  const Graph& g = p.graph();
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      if (w[i].vertex != w[j].vertex) continue;
      bool clear = true;
      for (std::size_t k = i + 1; k < j && clear; ++k)
        clear = g.adjacent(w[k].vertex, w[i].vertex);
      if (clear) return false;
    }
  return true;
}

// A word certified to be in normal form (minimal syllable count, unique up
// to shuffles of adjacent commuting syllables).
class NormalWord {
 public:
  const Word& word() const { return word_; }
  std::size_t size() const { return word_.size(); }
  friend bool operator==(const NormalWord&, const NormalWord&) = default;

 private:
  friend NormalWord normalize(const Presentation&, const Word&);
  friend class CanonicalWord;
  explicit NormalWord(Word w) : word_(std::move(w)) {}
  Word word_;
};

namespace detail {

// Append one syllable to a normal form, keeping it normal.  Four cases:
// identity input is dropped; if a same-vertex syllable can shuffle to the
// tail the two merge there (cancelling entirely when the product is
// trivial); otherwise the syllable is appended.
inline void append_reduced(const Presentation& p, Word& nf, int v,
                           const GroupElement& a) {
  if (a.is_identity()) return;
  const Graph& g = p.graph();
  // Scan from the tail.  A same-vertex hit ends the scan because a vertex is
  // never adjacent to itself, which is also why the mergeable candidate is
  // unique: anything earlier is blocked by the hit itself.
  int candidate = -1;
  for (int k = static_cast<int>(nf.size()) - 1; k >= 0; --k) {
    if (nf[k].vertex == v) {
      candidate = k;
      break;
    }
    if (!g.adjacent(nf[k].vertex, v)) break;
  }
  if (candidate >= 0) {
    GroupElement m = p.group_of(v).mul(nf[candidate].element, a);
    nf.erase(nf.begin() + candidate);
    if (!m.is_identity()) nf.push_back(Syllable{v, std::move(m)});
    return;
  }
  nf.push_back(Syllable{v, a});
}

}  // namespace detail

// Left-to-right reduction of an arbitrary word.
inline NormalWord normalize(const Presentation& p, const Word& w) {
  check_word(p, w);
  Word nf;
  nf.reserve(w.size());
  for (const Syllable& s : w) detail::append_reduced(p, nf, s.vertex, s.element);
  assert(is_normal_form(p, nf));
  return NormalWord(std::move(nf));
}

// The lexicographically least shuffle of the normal form: complete
// invariant for group equality.  Ordered by (vertex, element) per position.
class CanonicalWord {
 public:
  CanonicalWord() = default;
  const Word& word() const { return word_; }
  std::size_t size() const { return word_.size(); }
  bool empty() const { return word_.empty(); }
  friend bool operator==(const CanonicalWord&, const CanonicalWord&) = default;
  friend bool operator<(const CanonicalWord& a, const CanonicalWord& b) {
    return a.word_ < b.word_;
  }

 private:
  friend CanonicalWord canonicalize(const Presentation&, const Word&);
  explicit CanonicalWord(Word w) : word_(std::move(w)) {}
  Word word_;
};

// Greedy selection: at each step emit, among the syllables every earlier
// syllable commutes past, the one at the smallest vertex.  Two such
// candidates can never share a vertex (the word is normal), so the result
// is the unique lexicographically least shuffle.
inline CanonicalWord canonicalize(const Presentation& p, const Word& w) {
  Word nf = normalize(p, w).word();
  const Graph& g = p.graph();
  Word out;
  out.reserve(nf.size());
  while (!nf.empty()) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < nf.size(); ++j) {
      if (nf[j].vertex >= nf[best].vertex) continue;
      bool avail = true;
      for (std::size_t k = 0; k < j && avail; ++k)
        avail = g.adjacent(nf[k].vertex, nf[j].vertex);
      if (avail) best = j;
    }
    out.push_back(nf[best]);
    nf.erase(nf.begin() + best);
  }
  return CanonicalWord(std::move(out));
}

inline Word concat(const Word& u, const Word& v) {
  Word w = u;
  w.insert(w.end(), v.begin(), v.end());
  return w;
}

inline NormalWord multiply(const Presentation& p, const Word& u, const Word& v) {
  return normalize(p, concat(u, v));
}

inline Word inverse_word(const Presentation& p, const Word& u) {
  check_word(p, u);
  Word out;
  out.reserve(u.size());
  for (auto it = u.rbegin(); it != u.rend(); ++it)
    out.push_back(Syllable{it->vertex, p.group_of(it->vertex).inv(it->element)});
  return out;
}

inline NormalWord invert(const Presentation& p, const Word& u) {
  return normalize(p, inverse_word(p, u));
}

inline bool equal(const Presentation& p, const Word& u, const Word& v) {
  return canonicalize(p, u) == canonicalize(p, v);
}

// Vertices appearing in the normal form; well-defined because shuffles
// preserve the syllable multiset.
inline VertexSet support(const Presentation& p, const Word& u) {
  const NormalWord nf = normalize(p, u);
  std::vector<int> vs;
  for (const Syllable& s : nf.word()) vs.push_back(s.vertex);
  return VertexSet(std::move(vs));
}

inline std::size_t syllable_length(const Presentation& p, const Word& u) {
  return normalize(p, u).size();
}

// Membership in the full subgroup generated by the vertex groups over t.
inline bool in_full_subgroup(const Presentation& p, const Word& u,
                             const VertexSet& t) {
  return is_subset(support(p, u), t);
}

// ----- word literals -----
//
//   word  = 'e' | syllable (' . ' syllable)*
//   syllable = <vertex-name> '^' <element-literal>

inline std::string format_word(const Presentation& p, const Word& w) {
  check_word(p, w);
  if (w.empty()) return "e";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += " . ";
    s += p.graph().vertex_name(w[i].vertex) + "^" +
         format_element(p.group_of(w[i].vertex), w[i].element);
  }
  return s;
}

inline std::string format_word(const Presentation& p, const NormalWord& w) {
  return format_word(p, w.word());
}
inline std::string format_word(const Presentation& p, const CanonicalWord& w) {
  return format_word(p, w.word());
}

inline Word parse_word(const Presentation& p, const std::string& text) {
  const std::string t = detail::trim(text);
  if (t.empty()) throw ParseError("empty word literal; use 'e'");
  if (t == "e") return Word{};
  std::vector<std::pair<int, GroupElement>> raw;
  for (const std::string& part : detail::split_top(t, '.')) {
    const std::string s = detail::trim(part);
    std::size_t caret = s.find('^');
    if (caret == std::string::npos || caret == 0)
      throw ParseError("syllable needs the form vertex^element: '" + s + "'");
    const std::string vname = detail::trim(s.substr(0, caret));
    if (!p.graph().has_vertex(vname))
      throw ParseError("unknown vertex '" + vname + "'");
    const int v = p.graph().index_of(vname);
    raw.emplace_back(v, parse_element(p.group_of(v), s.substr(caret + 1)));
  }
  return make_word(p, raw);
}

// Compact serialization used as a hash/dedup key.
inline std::string word_key(const Presentation& p, const Word& w) {
  std::string s;
  for (const Syllable& syl : w) {
    s += std::to_string(syl.vertex);
    s += '^';
    s += format_element(p.group_of(syl.vertex), syl.element);
    s += '|';
  }
  return s;
}

}  // namespace ccgp
