// Constructive decompositions over a cycle of cliques: the amalgam split at
// a removed vertex, the normalizer of a full subgroup, a one-sided
// quasinormalizer probe for clique subgroups, the certified conjugate
// intersection of finite parabolics, two three-factor cancellation
// decompositions, the six-block factorization over two consecutive cliques,
// and the block decomposition of a cyclic relation.
//
// Every operation is pure.  Preconditions are checked up front; a failed
// check raises HypothesisViolation with a machine-readable tag, a support
// escape raises SupportViolation, and enumeration-backed searches raise
// BudgetExhausted rather than return an uncertified answer.
#pragma once

#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ccgp/cycle.hpp"
#include "ccgp/errors.hpp"
#include "ccgp/oracle.hpp"
#include "ccgp/word.hpp"

namespace ccgp {

namespace detail {

inline void check_vertex(const Presentation& p, int v, const char* role) {
  if (v < 0 || v >= p.graph().size())
    throw SpecMismatch(std::string(role) + ": unknown vertex index " +
                       std::to_string(v));
}

inline void check_vertex_set(const Presentation& p, const VertexSet& s,
                             const char* role) {
  for (int v : s) check_vertex(p, v, role);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Amalgam split at a vertex.

// Removing one vertex w splits the whole group as an amalgamated free
// product: the factor over everything-but-w and the factor over star(w),
// glued along the subgroup over link(w).  The split is degenerate exactly
// when star(w) already covers every vertex, so the right factor is the whole
// group.
struct AmalgamSplit {
  int removed;      // the vertex w
  VertexSet left;   // all vertices except w
  VertexSet edge;   // link(w), the glued subgroup's support
  VertexSet right;  // star(w) = {w} plus link(w)
  bool degenerate;  // star(w) equals the whole vertex set
};

inline AmalgamSplit amalgam_split(const Presentation& p, int w) {
  detail::check_vertex(p, w, "amalgam_split");
  const Graph& g = p.graph();
  const VertexSet lk = g.link(VertexSet{w});
  const VertexSet st = g.star(VertexSet{w});
  return AmalgamSplit{w, minus(g.vertices(), VertexSet{w}), lk, st,
                      st == g.vertices()};
}

// ---------------------------------------------------------------------------
// Normalizer of a full subgroup.

// The set of vertices supporting the normalizer of the full subgroup over t:
// t itself together with the common link of t.
inline VertexSet normalizer_of_full(const Presentation& p,
                                    const VertexSet& t) {
  detail::check_vertex_set(p, t, "normalizer_of_full");
  return join(t, p.graph().link(t));
}

// ---------------------------------------------------------------------------
// One-sided quasinormalizer probe for a clique subgroup.

// The probed word already lies in the clique subgroup.
struct CliqueMembership {
  CanonicalWord element;  // the input, reduced; support inside the clique
};

// A single-syllable generator of the clique subgroup whose conjugate under
// the probed word escapes the clique, witnessing that the word normalizes
// nothing beyond membership.
struct EscapeWitness {
  Syllable generator;      // x, with vertex in the clique
  CanonicalWord conjugate; // g x g^-1, reduced
  VertexSet escaped;       // support of the conjugate, not inside the clique
};

using QuasinormalizerProbe = std::variant<CliqueMembership, EscapeWitness>;

// Probe whether g left-normalizes the full subgroup over clique i: confirm
// membership when support(g) lies in the clique, otherwise produce an escape
// witness.  A witness always exists among single syllables, because the set
// of elements whose conjugates stay in a full subgroup is closed under
// products, so if every generator conjugate stayed inside then every
// conjugate would.
inline QuasinormalizerProbe clique_quasinormalizer_witness(
    const Presentation& p, const CliqueDecomposition& d, int i,
    const Word& g) {
  const VertexSet& c = d.clique(i);
  const CanonicalWord reduced = canonicalize(p, g);
  if (in_full_subgroup(p, reduced.word(), c)) return CliqueMembership{reduced};
  const Word ginv = inverse_word(p, g);
  for (int v : c) {
    for (const GroupElement& e : p.group_of(v).small_elements(1)) {
      const Word x{Syllable{v, e}};
      const CanonicalWord conj = canonicalize(p, concat(concat(g, x), ginv));
      const VertexSet sup = support(p, conj.word());
      if (!is_subset(sup, c)) return EscapeWitness{Syllable{v, e}, conj, sup};
    }
  }
  throw Error(
      "clique_quasinormalizer_witness: no single-syllable witness found for "
      "a word outside the clique subgroup");
}

// ---------------------------------------------------------------------------
// Certified conjugate intersection of finite parabolics.

// A base-change certificate: the intersection of the g-conjugated full
// subgroup over s with the full subgroup over t equals the h-conjugated full
// subgroup over d.
struct ConjugateIntersection {
  CanonicalWord h;  // element of the full subgroup over t
  VertexSet d;      // subset of s /\ t
};

// Compute the certificate by exhaustive enumeration.  Requires every vertex
// group to be finite.  Certification needs all of the subgroup over s, which
// is finite exactly when s spans a complete subgraph; anything else fails
// loudly.  The conjugating element h is searched over the syllable ball of
// the subgroup over t given by budget.max_syllables; candidate sets d are
// tried smallest first, then lexicographically, and for each d the h-ball in
// enumeration order, so results are deterministic.
inline ConjugateIntersection conjugate_intersection_finite(
    const Presentation& p, const VertexSet& s, const VertexSet& t,
    const Word& g, const Budget& budget = {}) {
  detail::check_vertex_set(p, s, "conjugate_intersection_finite");
  detail::check_vertex_set(p, t, "conjugate_intersection_finite");
  const Graph& graph = p.graph();
  for (int v : graph.vertices())
    if (!p.group_of(v).is_finite())
      throw Error("conjugate_intersection_finite: vertex " +
                  graph.vertex_name(v) + " carries an infinite group " +
                  p.group_of(v).to_text());

  // Conjugation by the identity keeps the subgroup over s, and two full
  // subgroups intersect in the full subgroup over the intersection of their
  // supports, so d = s /\ t and h = identity certify this case exactly.
  if (normalize(p, g).size() == 0)
    return ConjugateIntersection{canonicalize(p, Word{}), meet(s, t)};

  if (!graph.is_complete(s))
    throw BudgetExhausted(
        "conjugate_intersection_finite: the left support does not span a "
        "complete subgraph, so its full subgroup is infinite and exhaustive "
        "enumeration cannot certify the intersection");
  Int s_order = 1;
  for (int v : s) s_order *= p.group_of(v).order();
  if (s_order > Int(budget.max_count))
    throw BudgetExhausted(
        "conjugate_intersection_finite: the full subgroup over the left "
        "support has order " + s_order.str() + ", past the element cap");

  // Over a complete subgraph every element is a product of at most |s|
  // syllables, so this ball is the entire subgroup.
  Budget s_ball = budget;
  s_ball.max_syllables = s.size();
  const std::vector<CanonicalWord> left = enumerate_elements(p, s, s_ball);

  const Word ginv = inverse_word(p, g);
  std::set<CanonicalWord> target;
  for (const CanonicalWord& x : left) {
    const CanonicalWord c = canonicalize(p, concat(concat(g, x.word()), ginv));
    if (in_full_subgroup(p, c.word(), t)) target.insert(c);
  }

  // Candidate supports d, smallest first then lexicographic, kept only when
  // the subgroup over d has exactly as many elements as the filtered set.
  const VertexSet core = meet(s, t);
  std::vector<VertexSet> candidates;
  const std::vector<int>& pool = core.values();
  for (std::size_t mask = 0; mask < (std::size_t{1} << pool.size()); ++mask) {
    VertexSet d;
    Int d_order = 1;
    for (std::size_t j = 0; j < pool.size(); ++j)
      if (mask & (std::size_t{1} << j)) {
        d.insert(pool[j]);
        d_order *= p.group_of(pool[j]).order();
      }
    if (d_order == Int(target.size())) candidates.push_back(std::move(d));
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const VertexSet& a, const VertexSet& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });

  const std::vector<CanonicalWord> hs = enumerate_elements(p, t, budget);
  for (const VertexSet& d : candidates) {
    Budget d_ball = budget;
    d_ball.max_syllables = d.size();
    const std::vector<CanonicalWord> small = enumerate_elements(p, d, d_ball);
    for (const CanonicalWord& h : hs) {
      const Word hinv = inverse_word(p, h.word());
      std::set<CanonicalWord> got;
      bool inside = true;
      for (const CanonicalWord& x : small) {
        CanonicalWord c =
            canonicalize(p, concat(concat(h.word(), x.word()), hinv));
        if (target.find(c) == target.end()) {
          inside = false;
          break;
        }
        got.insert(std::move(c));
      }
      if (inside && got.size() == target.size())
        return ConjugateIntersection{h, d};
    }
  }
  throw BudgetExhausted(
      "conjugate_intersection_finite: no conjugator within " +
      std::to_string(budget.max_syllables) +
      " syllables reproduces the enumerated intersection of " +
      std::to_string(target.size()) + " elements");
}

// ---------------------------------------------------------------------------
// Three-factor cancellation decompositions.

// A cancellation certificate a, s, b with the vertex sets each factor is
// asserted to live over; the product relations are g = a*s and the second
// input word = s^-1 * b.
struct TriDecomposition {
  CanonicalWord a, s, b;
  VertexSet a_set, s_set, b_set;
};

// Cancellation across one clique of the cycle.  Inputs: g supported in the
// symmetric difference of cliques i-1 and i, h supported in the symmetric
// difference of cliques i and i+1, and the product g*h avoiding the interior
// of clique i.  Output: g = a*s and h = s^-1*b where s carries the interior
// syllables of g, a is supported in (C[i-1] minus C[i-1,i]) plus C[i,i+1],
// and b in (C[i+1] minus C[i,i+1]) plus C[i-1,i].  The interior syllables of
// the normal form of g are shuffled to its tail; when a non-interior,
// non-commuting syllable blocks that shuffle the hypotheses cannot all hold
// and the operation reports it.
inline TriDecomposition prop42_part1(const Presentation& p,
                                     const CliqueDecomposition& d, int i,
                                     const Word& g, const Word& h) {
  const Graph& graph = p.graph();
  const VertexSet& interior = d.interior(i);
  const VertexSet g_allowed = sym_diff(d.clique(i - 1), d.clique(i));
  const VertexSet h_allowed = sym_diff(d.clique(i), d.clique(i + 1));
  const VertexSet a_set =
      join(minus(d.clique(i - 1), d.intersection(i - 1)), d.intersection(i));
  const VertexSet b_set =
      join(minus(d.clique(i + 1), d.intersection(i)), d.intersection(i - 1));

  if (!in_full_subgroup(p, g, g_allowed))
    throw HypothesisViolation(
        Hypothesis::GSupport,
        "g must be supported in the symmetric difference of cliques " +
            std::to_string(i - 1) + " and " + std::to_string(i));
  if (!in_full_subgroup(p, h, h_allowed))
    throw HypothesisViolation(
        Hypothesis::HSupport,
        "h must be supported in the symmetric difference of cliques " +
            std::to_string(i) + " and " + std::to_string(i + 1));
  if (!are_disjoint(support(p, concat(g, h)), interior))
    throw HypothesisViolation(
        Hypothesis::ProductSupport,
        "the product g*h must avoid the interior of clique " +
            std::to_string(i));

  const Word nf = normalize(p, g).word();
  Word head, tail;
  for (std::size_t j = 0; j < nf.size(); ++j) {
    if (!interior.contains(nf[j].vertex)) {
      head.push_back(nf[j]);
      continue;
    }
    for (std::size_t k = j + 1; k < nf.size(); ++k)
      if (!interior.contains(nf[k].vertex) &&
          !graph.adjacent(nf[j].vertex, nf[k].vertex))
        throw HypothesisViolation(
            Hypothesis::InteriorShuffle,
            "an interior syllable of g at " +
                graph.vertex_name(nf[j].vertex) + " is blocked by " +
                graph.vertex_name(nf[k].vertex));
    tail.push_back(nf[j]);
  }

  const CanonicalWord a = canonicalize(p, head);
  const CanonicalWord s = canonicalize(p, tail);
  if (!in_full_subgroup(p, a.word(), a_set))
    throw HypothesisViolation(Hypothesis::MembershipA,
                              "the leading factor of g escapes its block");
  const CanonicalWord b = canonicalize(p, concat(tail, h));
  if (!in_full_subgroup(p, b.word(), b_set))
    throw HypothesisViolation(Hypothesis::MembershipB,
                              "s*h escapes the block asserted for b");
  return TriDecomposition{a, s, b, a_set, interior, b_set};
}

// Cancellation across two cliques of the cycle.  Inputs: g supported in
// C[i-2,i-1] plus C[i,i+1], h in C[i-1,i] plus C[i+1,i+2], k in C[i,i+1]
// plus C[i+2,i+3], and the product g*h*k supported in the four blocks
// C[i-2,i-1], C[i-1,i], C[i+1,i+2], C[i+2,i+3].  Output: g = a*s and
// k = s^-1*b with a over C[i-2,i-1], s over C[i,i+1], b over C[i+2,i+3].
// The two blocks carrying g are mutually non-adjacent, so the normal form of
// g splits as an unambiguous prefix/suffix when the hypotheses hold.
inline TriDecomposition prop42_part2(const Presentation& p,
                                     const CliqueDecomposition& d, int i,
                                     const Word& g, const Word& h,
                                     const Word& k) {
  const VertexSet& a_set = d.intersection(i - 2);
  const VertexSet& s_set = d.intersection(i);
  const VertexSet& b_set = d.intersection(i + 2);
  const VertexSet g_allowed = join(a_set, s_set);
  const VertexSet h_allowed = join(d.intersection(i - 1), d.intersection(i + 1));
  const VertexSet k_allowed = join(s_set, b_set);
  const VertexSet product_allowed =
      join(join(a_set, d.intersection(i - 1)),
           join(d.intersection(i + 1), b_set));

  if (!in_full_subgroup(p, g, g_allowed))
    throw HypothesisViolation(
        Hypothesis::GSupport, "g must be supported in C[" +
                                  std::to_string(i - 2) + "," +
                                  std::to_string(i - 1) + "] plus C[" +
                                  std::to_string(i) + "," +
                                  std::to_string(i + 1) + "]");
  if (!in_full_subgroup(p, h, h_allowed))
    throw HypothesisViolation(
        Hypothesis::HSupport, "h must be supported in C[" +
                                  std::to_string(i - 1) + "," +
                                  std::to_string(i) + "] plus C[" +
                                  std::to_string(i + 1) + "," +
                                  std::to_string(i + 2) + "]");
  if (!in_full_subgroup(p, k, k_allowed))
    throw HypothesisViolation(
        Hypothesis::KSupport, "k must be supported in C[" +
                                  std::to_string(i) + "," +
                                  std::to_string(i + 1) + "] plus C[" +
                                  std::to_string(i + 2) + "," +
                                  std::to_string(i + 3) + "]");
  if (!in_full_subgroup(p, concat(concat(g, h), k), product_allowed))
    throw HypothesisViolation(
        Hypothesis::ProductSupport,
        "the product g*h*k must stay in the four outer blocks");

  Word head, tail;
  bool seen_separator = false;
  const NormalWord nf = normalize(p, g);
  for (const Syllable& syl : nf.word()) {
    if (s_set.contains(syl.vertex)) {
      seen_separator = true;
      tail.push_back(syl);
    } else {
      if (seen_separator)
        throw HypothesisViolation(
            Hypothesis::SeparatorShuffle,
            "the normal form of g interleaves its two blocks, so no prefix "
            "and suffix split exists");
      head.push_back(syl);
    }
  }

  const CanonicalWord a = canonicalize(p, head);
  const CanonicalWord s = canonicalize(p, tail);
  if (!in_full_subgroup(p, a.word(), a_set))
    throw HypothesisViolation(Hypothesis::MembershipA,
                              "the leading factor of g escapes its block");
  const CanonicalWord b = canonicalize(p, concat(tail, k));
  if (!in_full_subgroup(p, b.word(), b_set))
    throw HypothesisViolation(Hypothesis::MembershipB,
                              "s*k escapes the block asserted for b");
  return TriDecomposition{a, s, b, a_set, s_set, b_set};
}

// ---------------------------------------------------------------------------
// Six-block factorization over two consecutive cliques.

// The subgroup over C[i] plus C[i+1] is the direct product of the subgroup
// over C[i,i+1] with the free product of the subgroups over the two clique
// remainders.  Accordingly a word supported there factors as
//
//   left_edge * left_interior * central * right_interior * right_edge *
//   residue
//
// where central collects the C[i,i+1] syllables, left_edge/left_interior
// split the leading C[i]-side block into its C[i-1,i] and interior parts,
// right_interior/right_edge split the following C[i+1]-side block, and the
// residue concatenates all remaining alternation blocks.  The product of the
// six parts in field order equals the input.
struct SixBlockSplit {
  CanonicalWord left_edge;       // over C[i-1,i]
  CanonicalWord left_interior;   // over the interior of C[i]
  CanonicalWord central;         // over C[i,i+1]
  CanonicalWord right_interior;  // over the interior of C[i+1]
  CanonicalWord right_edge;      // over C[i+1,i+2]
  CanonicalWord residue;         // over C[i] plus C[i+1]
  VertexSet left_edge_set, left_interior_set, central_set,
      right_interior_set, right_edge_set, residue_set;
};

inline SixBlockSplit six_block_split(const Presentation& p,
                                     const CliqueDecomposition& d, int i,
                                     const Word& x) {
  const VertexSet scope = join(d.clique(i), d.clique(i + 1));
  if (!in_full_subgroup(p, x, scope))
    throw SupportViolation(
        "six_block_split: the input word must be supported in cliques " +
        std::to_string(i) + " and " + std::to_string(i + 1));
  const VertexSet& central_set = d.intersection(i);
  const VertexSet left_set = join(d.intersection(i - 1), d.interior(i));

  // Central syllables commute with the whole scope, so removing them is
  // shuffle-invariant; the rest alternates between the two clique
  // remainders, which carry no edges between them, so the block pattern is
  // shuffle-invariant too.
  Word central;
  std::vector<std::pair<bool, Word>> blocks;  // (left side?, syllables)
  const NormalWord nf = normalize(p, x);
  for (const Syllable& syl : nf.word()) {
    if (central_set.contains(syl.vertex)) {
      central.push_back(syl);
      continue;
    }
    const bool left = left_set.contains(syl.vertex);
    if (blocks.empty() || blocks.back().first != left)
      blocks.emplace_back(left, Word{});
    blocks.back().second.push_back(syl);
  }

  Word le, li, ri, re, rest;
  std::size_t pos = 0;
  if (pos < blocks.size() && blocks[pos].first) {
    for (const Syllable& syl : blocks[pos].second)
      (d.intersection(i - 1).contains(syl.vertex) ? le : li).push_back(syl);
    ++pos;
  }
  if (pos < blocks.size() && !blocks[pos].first) {
    for (const Syllable& syl : blocks[pos].second)
      (d.interior(i + 1).contains(syl.vertex) ? ri : re).push_back(syl);
    ++pos;
  }
  for (; pos < blocks.size(); ++pos)
    rest.insert(rest.end(), blocks[pos].second.begin(),
                blocks[pos].second.end());

  return SixBlockSplit{canonicalize(p, le),
                       canonicalize(p, li),
                       canonicalize(p, central),
                       canonicalize(p, ri),
                       canonicalize(p, re),
                       canonicalize(p, rest),
                       d.intersection(i - 1),
                       d.interior(i),
                       central_set,
                       d.interior(i + 1),
                       d.intersection(i + 1),
                       scope};
}

// ---------------------------------------------------------------------------
// Block decomposition of a cyclic relation.

// Blocks of a length-n cyclic relation: entry j (0-based) holds the blocks
// for input word j+1, with a over C[i-1,i], b over the interior of C[i], and
// c over C[i,i+1], satisfying for every i (1-based, wrapping)
//
//   x_i = a_i * b_i * c_i * b_{i+1}^-1 * a_{i+2}^-1 * c_{i+1}^-1.
struct CyclicBlocks {
  std::vector<CanonicalWord> a, b, c;
};

// Decompose a tuple of words, one per clique pair, whose cyclic product is
// the identity.  Each word is six-block split; a cyclic relation forces the
// residues to vanish, consecutive interior blocks to cancel, and the three
// edge blocks meeting at each intersection to cancel, which is checked and
// reported distinctly.
inline CyclicBlocks cyclic_decompose(const Presentation& p,
                                     const CliqueDecomposition& d,
                                     const std::vector<Word>& xs) {
  const int n = d.count();
  if (static_cast<int>(xs.size()) != n)
    throw HypothesisViolation(
        Hypothesis::CycleLength,
        "expected " + std::to_string(n) + " words, got " +
            std::to_string(xs.size()));
  for (int i = 1; i <= n; ++i)
    if (!in_full_subgroup(p, xs[i - 1], join(d.clique(i), d.clique(i + 1))))
      throw HypothesisViolation(
          Hypothesis::CycleSupport,
          "word " + std::to_string(i) + " must be supported in cliques " +
              std::to_string(i) + " and " + std::to_string(i + 1));
  Word prod;
  for (const Word& x : xs) prod = concat(prod, x);
  if (normalize(p, prod).size() != 0)
    throw HypothesisViolation(Hypothesis::CycleProduct,
                              "the cyclic product is not the identity");

  std::vector<SixBlockSplit> split;
  split.reserve(n);
  for (int i = 1; i <= n; ++i)
    split.push_back(six_block_split(p, d, i, xs[i - 1]));

  const auto at = [n](int i) { return ((i - 1) % n + n) % n; };
  for (int i = 1; i <= n; ++i)
    if (!split[at(i)].residue.empty())
      throw HypothesisViolation(
          Hypothesis::ResidueBlock,
          "word " + std::to_string(i) + " leaves a nontrivial residue block");
  for (int i = 1; i <= n; ++i) {
    const Word pairing = concat(split[at(i)].left_interior.word(),
                                split[at(i - 1)].right_interior.word());
    if (normalize(p, pairing).size() != 0)
      throw HypothesisViolation(
          Hypothesis::BlockPairing,
          "the interior block of word " + std::to_string(i) +
              " does not cancel the trailing interior block of word " +
              std::to_string(i - 1));
  }
  for (int i = 1; i <= n; ++i) {
    const Word triple =
        concat(concat(split[at(i)].right_edge.word(),
                      split[at(i + 1)].central.word()),
               split[at(i + 2)].left_edge.word());
    if (normalize(p, triple).size() != 0)
      throw HypothesisViolation(
          Hypothesis::BlockTriple,
          "the edge blocks meeting at intersection " + std::to_string(i + 1) +
              " do not cancel");
  }

  CyclicBlocks out;
  out.a.reserve(n);
  out.b.reserve(n);
  out.c.reserve(n);
  for (int i = 1; i <= n; ++i) {
    out.a.push_back(split[at(i)].left_edge);
    out.b.push_back(split[at(i)].left_interior);
    out.c.push_back(split[at(i)].central);
  }
  return out;
}

}  // namespace ccgp
