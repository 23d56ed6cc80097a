#pragma once

// Self-contained verification suites.  Each suite checks one layer of the
// library against either the independent oracle (rewriting, minimality) or
// the defining identities of a decomposition (cancellation, cyclic relations,
// normalizers, wreath structure) over a small fixed presentation, and
// returns a deterministic report.  The suites are the machinery behind the
// `verify` command and the acceptance checks.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ccgp/cycle.hpp"
#include "ccgp/decomp.hpp"
#include "ccgp/errors.hpp"
#include "ccgp/graph.hpp"
#include "ccgp/group.hpp"
#include "ccgp/oracle.hpp"
#include "ccgp/rng.hpp"
#include "ccgp/word.hpp"

namespace ccgp {

// ---------------------------------------------------------------------------
// Report

struct SuiteReport {
  std::string suite;
  std::size_t tested = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;  // instances rejected by a stated precondition
  std::uint64_t seed = 0;
  std::string counterexample;  // empty when every tested instance passed

  bool vacuous() const { return tested == 0; }

  // One-line summary.  The format is part of the interface: tools parse it
  // and golden tests pin it byte for byte.
  std::string line() const {
    std::string s = "suite=" + suite + " tested=" + std::to_string(tested) +
                    " passed=" + std::to_string(passed) +
                    " failed=" + std::to_string(failed) +
                    " skipped=" + std::to_string(skipped) +
                    " seed=" + std::to_string(seed);
    if (vacuous()) s += " vacuous=true";
    return s;
  }
};

namespace detail {

inline void record_pass(SuiteReport& r) {
  ++r.tested;
  ++r.passed;
}

// Keeps the lexicographically least counterexample so the report does not
// depend on the order in which instances were visited.
inline void record_fail(SuiteReport& r, std::string cx) {
  ++r.tested;
  ++r.failed;
  if (r.counterexample.empty() || cx < r.counterexample)
    r.counterexample = std::move(cx);
}

// One syllable per vertex per small nontrivial element: the alphabet from
// which raw input sequences are built.
inline std::vector<Syllable> generator_alphabet(const Presentation& p) {
  std::vector<Syllable> out;
  for (int v = 0; v < p.graph().size(); ++v)
    for (const GroupElement& e : p.group_of(v).small_elements(1))
      out.push_back(Syllable{v, e});
  return out;
}

// Visits every raw sequence over the alphabet of length at most max_len, in
// length order and then alphabet order, without materializing the list.
// Throws once more than max_count sequences would be visited; visits nothing
// when max_count is zero, which the callers report as a vacuous run.
template <typename Visit>
inline void for_each_sequence(const std::vector<Syllable>& alphabet,
                              std::size_t max_len, std::size_t max_count,
                              Visit&& visit) {
  if (max_count == 0) return;
  std::size_t visited = 0;
  const auto step = [&](const Word& w) {
    if (visited == max_count)
      throw BudgetExhausted("sequence enumeration exceeded the budget of " +
                            std::to_string(max_count) + " sequences");
    ++visited;
    visit(w);
  };
  step(Word{});
  if (alphabet.empty()) return;
  const std::size_t k = alphabet.size();
  Word w;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::size_t> idx(len, 0);
    bool more = true;
    while (more) {
      w.clear();
      for (std::size_t j = 0; j < len; ++j) w.push_back(alphabet[idx[j]]);
      step(w);
      more = false;
      std::size_t j = len;
      while (j > 0) {
        --j;
        if (++idx[j] < k) {
          more = true;
          break;
        }
        idx[j] = 0;
      }
    }
  }
}

inline CliqueDecomposition flower_decomposition(const Presentation& p) {
  Cc1Result res = recognize_cc1(p.graph());
  return std::get<CliqueDecomposition>(std::move(res));
}

inline std::string yes_no(bool b) { return b ? "true" : "false"; }

}  // namespace detail

// ---------------------------------------------------------------------------
// Suite: normal-form
//
// Fixture: the four-petal flower with order-two vertex groups.  Two layers:
//
//  * Exhaustive: every raw sequence of length at most budget.max_syllables
//    is reduced twice, by the rewriting system under test (canonical key)
//    and by the oracle (least member of the shuffle closure of its fixpoint
//    normal form).  Both keys are complete equality invariants on their
//    side, so the two sides agree on EVERY pair of visited sequences if and
//    only if the correspondence between the two key spaces is one-to-one on
//    the visited set.  The two maps check exactly that, which certifies all
//    pairwise comparisons at linear cost.
//
//  * Sampled: budget.trials seeded pairs of longer sequences (length up to
//    max_syllables + 2) compared directly with equal vs oracle_equal; odd
//    trials use a deliberately equivalent respelling of the first word so
//    equal pairs stay frequent.

inline SuiteReport suite_normal_form(const Budget& budget) {
  SuiteReport r;
  r.suite = "normal-form";
  r.seed = budget.seed;
  const Presentation p(make_flower(4), VertexGroupSpec::cyclic(2));
  if (budget.max_count == 0) return r;
  const std::vector<Syllable> alphabet = detail::generator_alphabet(p);

  std::map<std::string, std::pair<std::string, std::string>> by_canonical;
  std::map<std::string, std::pair<std::string, std::string>> by_oracle;
  detail::for_each_sequence(
      alphabet, budget.max_syllables, budget.max_count, [&](const Word& w) {
        const CanonicalWord cw = canonicalize(p, w);
        const std::string ck = word_key(p, cw.word());
        const std::string ok = oracle_identity_key(p, w);
        const std::string text = format_word(p, w);
        const auto [cit, cnew] = by_canonical.try_emplace(ck, ok, text);
        if (!cnew && cit->second.first != ok) {
          detail::record_fail(r, "u=" + text + " v=" + cit->second.second +
                                     " equal=true oracle=false");
          return;
        }
        const auto [oit, onew] = by_oracle.try_emplace(ok, ck, text);
        if (!onew && oit->second.first != ck) {
          detail::record_fail(r, "u=" + text + " v=" + oit->second.second +
                                     " equal=false oracle=true");
          return;
        }
        detail::record_pass(r);
      });

  SplitMix64 rng{budget.seed};
  for (std::size_t t = 0; t < budget.trials; ++t) {
    const Word u = random_sequence(p, rng, budget.max_syllables + 2);
    Word v;
    if (t % 2 == 0) {
      v = random_sequence(p, rng, budget.max_syllables + 2);
    } else {
      const Word pad = random_sequence(p, rng, 2);
      v = concat(u, concat(pad, inverse_word(p, pad)));
    }
    const bool fast = equal(p, u, v);
    const bool slow = oracle_equal(p, u, v);
    if (fast == slow)
      detail::record_pass(r);
    else
      detail::record_fail(r, "u=" + format_word(p, u) +
                                 " v=" + format_word(p, v) +
                                 " equal=" + detail::yes_no(fast) +
                                 " oracle=" + detail::yes_no(slow));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Suite: minimal-length
//
// Fixture: the four-petal flower with order-two vertex groups.  First pass
// visits every raw sequence of length at most max_syllables + 2 in length
// order and records, per oracle identity key, the length of its first
// spelling — the true minimum over that universe.  Second pass checks that
// every sequence of length at most max_syllables normalizes to exactly that
// minimum, i.e. no shorter spelling exists among all sequences with up to
// two extra syllables.

inline SuiteReport suite_minimal_length(const Budget& budget) {
  SuiteReport r;
  r.suite = "minimal-length";
  r.seed = budget.seed;
  const Presentation p(make_flower(4), VertexGroupSpec::cyclic(2));
  if (budget.max_count == 0) return r;
  const std::vector<Syllable> alphabet = detail::generator_alphabet(p);

  std::map<std::string, std::size_t> min_length;
  detail::for_each_sequence(
      alphabet, budget.max_syllables + 2, budget.max_count,
      [&](const Word& w) {
        min_length.try_emplace(oracle_identity_key(p, w), w.size());
      });

  detail::for_each_sequence(
      alphabet, budget.max_syllables, budget.max_count, [&](const Word& w) {
        const std::size_t actual = syllable_length(p, w);
        const std::size_t best = min_length.at(oracle_identity_key(p, w));
        if (actual == best)
          detail::record_pass(r);
        else
          detail::record_fail(
              r, "word=" + format_word(p, w) +
                     " normal-form-length=" + std::to_string(actual) +
                     " minimal=" + std::to_string(best));
      });
  return r;
}

// ---------------------------------------------------------------------------
// Suite: part1
//
// Fixture: the four-petal flower with order-two vertex groups, clique index
// one.  Exhausts pairs (g, h) over the stated support balls.  Pairs whose
// product meets the interior of the shared clique must be refused with the
// product-support tag and count as skipped; admissible pairs must decompose
// as g = a*s and h = s^-1*b with the stated block supports.

inline SuiteReport suite_part1(const Budget& budget) {
  SuiteReport r;
  r.suite = "part1";
  r.seed = budget.seed;
  const Presentation p(make_flower(4), VertexGroupSpec::cyclic(2));
  const CliqueDecomposition d = detail::flower_decomposition(p);
  const int i = 1;
  const VertexSet g_allowed = sym_diff(d.clique(i - 1), d.clique(i));
  const VertexSet h_allowed = sym_diff(d.clique(i), d.clique(i + 1));
  const VertexSet& interior = d.interior(i);

  const std::vector<CanonicalWord> gs = enumerate_elements(p, g_allowed, budget);
  const std::vector<CanonicalWord> hs = enumerate_elements(p, h_allowed, budget);
  for (const CanonicalWord& gu : gs)
    for (const CanonicalWord& hu : hs) {
      const Word& g = gu.word();
      const Word& h = hu.word();
      const std::string instance =
          "g=" + format_word(p, g) + " h=" + format_word(p, h);
      if (!are_disjoint(support(p, concat(g, h)), interior)) {
        try {
          prop42_part1(p, d, i, g, h);
          detail::record_fail(r, instance + " accepted despite the product "
                                            "meeting the interior");
        } catch (const HypothesisViolation& v) {
          if (v.which == Hypothesis::ProductSupport)
            ++r.skipped;
          else
            detail::record_fail(r, instance + " rejected with tag " +
                                       to_string(v.which) +
                                       " instead of product-support");
        }
        continue;
      }
      try {
        const TriDecomposition t = prop42_part1(p, d, i, g, h);
        const bool ok =
            in_full_subgroup(p, t.a.word(), t.a_set) &&
            in_full_subgroup(p, t.s.word(), t.s_set) &&
            in_full_subgroup(p, t.b.word(), t.b_set) &&
            equal(p, g, concat(t.a.word(), t.s.word())) &&
            equal(p, h, concat(inverse_word(p, t.s.word()), t.b.word()));
        if (ok)
          detail::record_pass(r);
        else
          detail::record_fail(r, instance + " decomposition identities fail");
      } catch (const Error& e) {
        detail::record_fail(r, instance + " error=" + std::string(e.what()));
      }
    }
  return r;
}

// ---------------------------------------------------------------------------
// Suite: part2
//
// Fixture: the six-petal flower with order-two vertex groups, clique index
// one.  Exhausts triples (g, h, k) over the stated two-block supports.
// Triples whose product leaves the four outer blocks must be refused with
// the product-support tag and count as skipped; admissible triples must
// yield g = a*s and k = s^-1*b with the stated block supports.

inline SuiteReport suite_part2(const Budget& budget) {
  SuiteReport r;
  r.suite = "part2";
  r.seed = budget.seed;
  const Presentation p(make_flower(6), VertexGroupSpec::cyclic(2));
  const CliqueDecomposition d = detail::flower_decomposition(p);
  const int i = 1;
  const VertexSet g_allowed = join(d.intersection(i - 2), d.intersection(i));
  const VertexSet h_allowed =
      join(d.intersection(i - 1), d.intersection(i + 1));
  const VertexSet k_allowed = join(d.intersection(i), d.intersection(i + 2));
  const VertexSet product_allowed =
      join(join(d.intersection(i - 2), d.intersection(i - 1)),
           join(d.intersection(i + 1), d.intersection(i + 2)));

  const std::vector<CanonicalWord> gs = enumerate_elements(p, g_allowed, budget);
  const std::vector<CanonicalWord> hs = enumerate_elements(p, h_allowed, budget);
  const std::vector<CanonicalWord> ks = enumerate_elements(p, k_allowed, budget);
  for (const CanonicalWord& gu : gs)
    for (const CanonicalWord& hu : hs)
      for (const CanonicalWord& ku : ks) {
        const Word& g = gu.word();
        const Word& h = hu.word();
        const Word& k = ku.word();
        const std::string instance = "g=" + format_word(p, g) +
                                     " h=" + format_word(p, h) +
                                     " k=" + format_word(p, k);
        const Word product = concat(concat(g, h), k);
        if (!in_full_subgroup(p, product, product_allowed)) {
          try {
            prop42_part2(p, d, i, g, h, k);
            detail::record_fail(r, instance + " accepted despite the product "
                                              "leaving the outer blocks");
          } catch (const HypothesisViolation& v) {
            if (v.which == Hypothesis::ProductSupport)
              ++r.skipped;
            else
              detail::record_fail(r, instance + " rejected with tag " +
                                         to_string(v.which) +
                                         " instead of product-support");
          }
          continue;
        }
        try {
          const TriDecomposition t = prop42_part2(p, d, i, g, h, k);
          const bool ok =
              in_full_subgroup(p, t.a.word(), t.a_set) &&
              in_full_subgroup(p, t.s.word(), t.s_set) &&
              in_full_subgroup(p, t.b.word(), t.b_set) &&
              equal(p, g, concat(t.a.word(), t.s.word())) &&
              equal(p, k, concat(inverse_word(p, t.s.word()), t.b.word()));
          if (ok)
            detail::record_pass(r);
          else
            detail::record_fail(r,
                                instance + " decomposition identities fail");
        } catch (const Error& e) {
          detail::record_fail(r, instance + " error=" + std::string(e.what()));
        }
      }
  return r;
}

// ---------------------------------------------------------------------------
// Suite: cyclic
//
// Fixture: the four-petal flower with order-three vertex groups.  Two
// seeded halves of budget.trials instances each:
//
//  * Round trips: blocks a_j, b_j, c_j are drawn at random from the
//    intersection / interior / intersection subgroups, assembled through
//    the reassembly formula into a tuple whose cyclic product is the
//    identity, decomposed, and the recovered blocks are checked for the
//    stated supports and for reassembling each input word.
//
//  * Perturbations: one extra nontrivial syllable is appended to one word
//    of an assembled tuple, drawn from that word's two-clique scope so that
//    every stated support still holds and exactly the product condition
//    breaks; the decomposition must refuse with the cycle-product tag.

inline SuiteReport suite_cyclic(const Budget& budget) {
  SuiteReport r;
  r.suite = "cyclic";
  r.seed = budget.seed;
  if (budget.max_count == 0) return r;
  const Presentation p(make_flower(4), VertexGroupSpec::cyclic(3));
  const CliqueDecomposition d = detail::flower_decomposition(p);
  const int n = d.count();
  SplitMix64 rng{budget.seed};

  const auto at = [n](int i) { return ((i - 1) % n + n) % n; };
  const auto pick = [&](int vertex) {
    const int e = static_cast<int>(rng.below(3));
    return e == 0 ? Word{}
                  : Word{Syllable{vertex, p.group_of(vertex).from_int(e)}};
  };
  const auto draw_blocks = [&](std::vector<Word>& a, std::vector<Word>& b,
                               std::vector<Word>& c) {
    for (int j = 0; j < n; ++j) {
      a[j] = pick(d.intersection(j).values()[0]);
      b[j] = pick(d.interior(j + 1).values()[0]);
      c[j] = pick(d.intersection(j + 1).values()[0]);
    }
  };
  const auto assemble = [&](const std::vector<Word>& a,
                            const std::vector<Word>& b,
                            const std::vector<Word>& c) {
    std::vector<Word> xs;
    for (int i = 1; i <= n; ++i) {
      Word x = concat(concat(a[at(i)], b[at(i)]), c[at(i)]);
      x = concat(x, inverse_word(p, b[at(i + 1)]));
      x = concat(x, inverse_word(p, a[at(i + 2)]));
      x = concat(x, inverse_word(p, c[at(i + 1)]));
      xs.push_back(std::move(x));
    }
    return xs;
  };
  const auto tuple_text = [&](const std::vector<Word>& xs) {
    std::string s;
    for (int j = 0; j < n; ++j) {
      if (j) s += " ; ";
      s += "x" + std::to_string(j + 1) + "=" + format_word(p, xs[j]);
    }
    return s;
  };

  for (std::size_t trial = 0; trial < budget.trials; ++trial) {
    std::vector<Word> a(n), b(n), c(n);
    draw_blocks(a, b, c);
    const std::vector<Word> xs = assemble(a, b, c);
    try {
      const CyclicBlocks blocks = cyclic_decompose(p, d, xs);
      bool ok = true;
      for (int i = 1; i <= n && ok; ++i) {
        ok = in_full_subgroup(p, blocks.a[at(i)].word(),
                              d.intersection(i - 1)) &&
             in_full_subgroup(p, blocks.b[at(i)].word(), d.interior(i)) &&
             in_full_subgroup(p, blocks.c[at(i)].word(), d.intersection(i));
        if (!ok) break;
        Word back = concat(concat(blocks.a[at(i)].word(),
                                  blocks.b[at(i)].word()),
                           blocks.c[at(i)].word());
        back = concat(back, inverse_word(p, blocks.b[at(i + 1)].word()));
        back = concat(back, inverse_word(p, blocks.a[at(i + 2)].word()));
        back = concat(back, inverse_word(p, blocks.c[at(i + 1)].word()));
        ok = equal(p, back, xs[i - 1]);
      }
      if (ok)
        detail::record_pass(r);
      else
        detail::record_fail(r, "round-trip " + tuple_text(xs) +
                                   " block identities fail");
    } catch (const Error& e) {
      detail::record_fail(r, "round-trip " + tuple_text(xs) +
                                 " error=" + std::string(e.what()));
    }
  }

  for (std::size_t trial = 0; trial < budget.trials; ++trial) {
    std::vector<Word> a(n), b(n), c(n);
    draw_blocks(a, b, c);
    std::vector<Word> xs = assemble(a, b, c);
    const int which = static_cast<int>(rng.below(n));
    const VertexSet scope = join(d.clique(which + 1), d.clique(which + 2));
    const int v = scope.values()[rng.below(scope.size())];
    const int e = 1 + static_cast<int>(rng.below(2));
    xs[which].push_back(Syllable{v, p.group_of(v).from_int(e)});
    try {
      cyclic_decompose(p, d, xs);
      detail::record_fail(r, "perturbed " + tuple_text(xs) +
                                 " accepted despite a broken product");
    } catch (const HypothesisViolation& viol) {
      if (viol.which == Hypothesis::CycleProduct)
        detail::record_pass(r);
      else
        detail::record_fail(r, "perturbed " + tuple_text(xs) +
                                   " rejected with tag " +
                                   to_string(viol.which) +
                                   " instead of cycle-product");
    } catch (const Error& e2) {
      detail::record_fail(r, "perturbed " + tuple_text(xs) +
                                 " error=" + std::string(e2.what()));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Suite: normalizer
//
// Fixture: the four-petal flower with order-two vertex groups.  For each of
// three probe sets (one separator vertex, one full clique, one interior
// vertex) and every element g of the whole-graph ball, membership of g in
// the full subgroup over the probe set joined with its link must coincide
// with every single-syllable generator of the probe subgroup staying inside
// it under conjugation by g.  Both directions are checked.

inline SuiteReport suite_normalizer(const Budget& budget) {
  SuiteReport r;
  r.suite = "normalizer";
  r.seed = budget.seed;
  const Presentation p(make_flower(4), VertexGroupSpec::cyclic(2));
  const Graph& graph = p.graph();
  const CliqueDecomposition d = detail::flower_decomposition(p);

  const std::vector<std::pair<std::string, VertexSet>> probes = {
      {"separator", graph.set_of({"b2"})},
      {"clique", d.clique(1)},
      {"interior-vertex", graph.set_of({"w1"})},
  };

  const std::vector<CanonicalWord> ball = enumerate_elements(p, budget);
  for (const auto& [label, t] : probes) {
    const VertexSet nt = normalizer_of_full(p, t);
    for (const CanonicalWord& gu : ball) {
      const Word& g = gu.word();
      const Word gi = inverse_word(p, g);
      const bool member = in_full_subgroup(p, g, nt);
      bool all_stay = true;
      for (int v : t.values())
        for (const GroupElement& e : p.group_of(v).small_elements(1)) {
          const Word x{Syllable{v, e}};
          if (!in_full_subgroup(p, concat(concat(g, x), gi), t)) {
            all_stay = false;
            break;
          }
        }
      if (member == all_stay)
        detail::record_pass(r);
      else
        detail::record_fail(
            r, "probe=" + label + " g=" + format_word(p, g) +
                   " member=" + detail::yes_no(member) +
                   " conjugates-stay=" + detail::yes_no(all_stay));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Suite: wreath
//
// Fixture-group checks, no randomness: the split wreath products of the
// order-two group by the order-two and order-three groups.  Each spec runs
// the summand conjugation audit (the top projection is a surjective
// homomorphism, its kernel is the base sum, and conjugating a base summand
// by a top element lands in the translated summand) plus the order count.

inline SuiteReport suite_wreath(const Budget& budget) {
  SuiteReport r;
  r.suite = "wreath";
  r.seed = budget.seed;
  if (budget.max_count == 0) return r;
  const std::vector<VertexGroupSpec> specs = {
      VertexGroupSpec::split_wreath(VertexGroupSpec::cyclic(2),
                                    VertexGroupSpec::cyclic(2)),
      VertexGroupSpec::split_wreath(VertexGroupSpec::cyclic(2),
                                    VertexGroupSpec::cyclic(3)),
  };
  for (const VertexGroupSpec& spec : specs) {
    const WreathReport rep =
        wreath_summand_conjugation_check(spec, budget.max_count);
    const auto flag = [&](bool ok, const std::string& what) {
      if (ok)
        detail::record_pass(r);
      else
        detail::record_fail(r, "spec=" + spec.to_text() + " " + what);
    };
    flag(rep.order_total == rep.order_expected,
         "order=" + rep.order_total.str() +
             " expected=" + rep.order_expected.str());
    flag(rep.projection_is_homomorphism, "top projection not a homomorphism");
    flag(rep.projection_onto, "top projection not onto");
    flag(rep.kernel_is_base_sum, "projection kernel differs from base sum");
    for (std::size_t j = 0; j < rep.summand_checks; ++j) {
      if (j < rep.summand_failures)
        detail::record_fail(r, "spec=" + spec.to_text() +
                                   " summand conjugation failure");
      else
        detail::record_pass(r);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Dispatch

inline std::vector<std::string> suite_names() {
  return {"normal-form", "minimal-length", "part1", "part2",
          "cyclic",      "normalizer",     "wreath"};
}

inline SuiteReport verify_suite(const std::string& name,
                                const Budget& budget) {
  if (name == "normal-form") return suite_normal_form(budget);
  if (name == "minimal-length") return suite_minimal_length(budget);
  if (name == "part1") return suite_part1(budget);
  if (name == "part2") return suite_part2(budget);
  if (name == "cyclic") return suite_cyclic(budget);
  if (name == "normalizer") return suite_normalizer(budget);
  if (name == "wreath") return suite_wreath(budget);
  std::string known;
  for (const std::string& s : suite_names()) {
    if (!known.empty()) known += ", ";
    known += s;
  }
  throw Error("unknown suite '" + name + "'; known suites: " + known);
}

}  // namespace ccgp
