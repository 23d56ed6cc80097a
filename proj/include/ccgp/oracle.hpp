// Brute-force reference implementations used to cross-check the word
// machinery.  Nothing here calls normalize/canonicalize: reduction is a
// repeated full-scan rewriting loop, equality goes through explicit shuffle
// closures.  Slow by design and only meant for small instances.
#pragma once

#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "ccgp/rng.hpp"
#include "ccgp/word.hpp"

namespace ccgp {

// Caps for bounded searches and enumerations.
struct Budget {
  std::size_t max_syllables = 4;
  std::size_t max_count = 1u << 20;
  std::uint64_t seed = 12345;
  std::size_t trials = 1000;
};

// Fixpoint rewriting: repeatedly drop identity syllables and merge the first
// same-vertex pair separated only by commuting syllables, until no rule
// fires.  Returns some normal form of the input (not a canonical shuffle).
inline Word oracle_normal_form(const Presentation& p, Word w) {
  const Graph& g = p.graph();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i].element.is_identity()) {
        w.erase(w.begin() + i);
        changed = true;
        break;
      }
    if (changed) continue;
    for (std::size_t i = 0; i < w.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < w.size() && !changed; ++j) {
        if (w[i].vertex != w[j].vertex) continue;
        bool clear = true;
        for (std::size_t k = i + 1; k < j && clear; ++k)
          clear = g.adjacent(w[k].vertex, w[i].vertex);
        if (!clear) continue;
        w[i].element = p.group_of(w[i].vertex).mul(w[i].element, w[j].element);
        w.erase(w.begin() + j);
        changed = true;
      }
  }
  return w;
}

// All words reachable from w by swapping adjacent syllables at adjacent
// vertices.  Breadth-first; the closure of an n-syllable word has at most
// n! members.
inline std::vector<Word> shuffle_closure(const Presentation& p, const Word& w) {
  check_word(p, w);
  const Graph& g = p.graph();
  std::vector<Word> out{w};
  std::unordered_set<std::string> seen{word_key(p, w)};
  for (std::size_t head = 0; head < out.size(); ++head) {
    Word cur = out[head];
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      if (!g.adjacent(cur[i].vertex, cur[i + 1].vertex)) continue;
      std::swap(cur[i], cur[i + 1]);
      if (seen.insert(word_key(p, cur)).second) out.push_back(cur);
      std::swap(cur[i], cur[i + 1]);
    }
  }
  return out;
}

// Reference equality: reduce both sides independently, then test whether one
// reduction lies in the shuffle closure of the other.
inline bool oracle_equal(const Presentation& p, const Word& u, const Word& v) {
  Word nu = oracle_normal_form(p, u);
  Word nv = oracle_normal_form(p, v);
  if (nu.size() != nv.size()) return false;
  const std::string target = word_key(p, nv);
  for (const Word& s : shuffle_closure(p, nu))
    if (word_key(p, s) == target) return true;
  return false;
}

// A complete equality invariant on the oracle side: the least member of the
// shuffle closure of the reduction, serialized.  Computed by exhaustive
// closure scan, not by greedy selection.
inline std::string oracle_identity_key(const Presentation& p, const Word& w) {
  Word nf = oracle_normal_form(p, w);
  const Word* least = nullptr;
  std::vector<Word> closure = shuffle_closure(p, nf);
  for (const Word& cand : closure)
    if (least == nullptr || cand < *least) least = &cand;
  return word_key(p, *least);
}

// All distinct group elements of the full subgroup over `allowed` that are
// products of at most budget.max_syllables single-syllable factors, as
// canonical words.  Factors run over every nontrivial element of finite
// vertex groups and over the exponent ball |e| <= element_bound otherwise.
// Deduplication uses canonical forms, so suites checking equality itself
// must enumerate raw sequences instead.  Throws BudgetExhausted when the
// element count would pass budget.max_count.
inline std::vector<CanonicalWord> enumerate_elements(
    const Presentation& p, const VertexSet& allowed, const Budget& budget,
    Int element_bound = 1) {
  std::vector<CanonicalWord> out;
  if (budget.max_count == 0) return out;
  std::vector<std::pair<int, GroupElement>> gens;
  for (int v : allowed)
    for (const auto& a : p.group_of(v).small_elements(element_bound,
                                                      budget.max_count))
      gens.emplace_back(v, a);

  std::set<CanonicalWord> seen;
  CanonicalWord empty = canonicalize(p, Word{});
  seen.insert(empty);
  out.push_back(empty);
  std::vector<CanonicalWord> frontier{empty};
  for (std::size_t level = 1; level <= budget.max_syllables; ++level) {
    std::vector<CanonicalWord> next;
    for (const CanonicalWord& w : frontier)
      for (const auto& [v, a] : gens) {
        Word ext = w.word();
        ext.push_back(Syllable{v, a});
        CanonicalWord c = canonicalize(p, ext);
        if (!seen.insert(c).second) continue;
        if (out.size() >= budget.max_count)
          throw BudgetExhausted("enumerate_elements: more than " +
                                std::to_string(budget.max_count) +
                                " elements");
        out.push_back(c);
        next.push_back(std::move(c));
      }
    frontier = std::move(next);
  }
  return out;
}

inline std::vector<CanonicalWord> enumerate_elements(const Presentation& p,
                                                     const Budget& budget) {
  return enumerate_elements(p, p.graph().vertices(), budget);
}

// A uniformly drawn raw syllable sequence (not reduced) with the given
// length bound, over the whole vertex set.
inline Word random_sequence(const Presentation& p, SplitMix64& rng,
                            std::size_t max_len, Int element_bound = 1) {
  std::vector<std::pair<int, GroupElement>> gens;
  for (int v : p.graph().vertices())
    for (const auto& a : p.group_of(v).small_elements(element_bound))
      gens.emplace_back(v, a);
  Word w;
  const std::size_t len = rng.below(max_len + 1);
  for (std::size_t i = 0; i < len; ++i) {
    const auto& [v, a] = gens[rng.below(gens.size())];
    w.push_back(Syllable{v, a});
  }
  return w;
}

}  // namespace ccgp
