// Word reduction, canonical shuffles, equality, and agreement with the
// brute-force oracle on small exhaustive families.
#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <string>
#include <vector>

#include "ccgp/oracle.hpp"
#include "ccgp/word.hpp"
#include "fixtures.hpp"

using namespace ccgp;
using ccgp_tests::W;
using ccgp_tests::flower_presentation;

namespace {

// Every syllable sequence of length <= max_len over the single-syllable
// generators of p (finite vertex groups only).
std::vector<Word> all_sequences(const Presentation& p, std::size_t max_len) {
  std::vector<std::pair<int, GroupElement>> gens;
  for (int v : p.graph().vertices())
    for (const auto& a : p.group_of(v).small_elements())
      gens.emplace_back(v, a);
  std::vector<Word> out{Word{}};
  std::size_t level_begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i)
      for (const auto& [v, a] : gens) {
        Word w = out[i];
        w.push_back(Syllable{v, a});
        out.push_back(std::move(w));
      }
    level_begin = level_end;
  }
  return out;
}

}  // namespace

TEST_CASE("reduction cases") {
  Presentation p = flower_presentation(4, VertexGroupSpec::cyclic(2));

  // Cancellation of an immediate inverse pair.
  REQUIRE(normalize(p, W(p, "b1^1 . b1^1")).size() == 0);
  // Cancellation across a commuting separator: w1 commutes with b1.
  NormalWord n1 = normalize(p, W(p, "b1^1 . w1^1 . b1^1"));
  REQUIRE(n1.word() == W(p, "w1^1"));
  // A non-adjacent separator blocks everything.
  REQUIRE(normalize(p, W(p, "b1^1 . b3^1 . b1^1")).size() == 3);
  REQUIRE(is_normal_form(p, normalize(p, W(p, "b1^1 . b3^1 . b1^1")).word()));

  // Merge without cancellation needs a bigger group.
  Presentation q = flower_presentation(4, VertexGroupSpec::cyclic(3));
  NormalWord n2 = normalize(q, W(q, "b1^1 . w1^2 . b1^1"));
  REQUIRE(n2.word() == W(q, "w1^2 . b1^2"));
  // Identity literals contribute nothing.
  REQUIRE(normalize(q, W(q, "b1^0")).size() == 0);
  REQUIRE(normalize(q, W(q, "b1^3 . w1^1")).word() == W(q, "w1^1"));
}

TEST_CASE("canonical form is the least shuffle") {
  // Two adjacent vertices declared in the order b1 < w1.
  Presentation p(Graph("pair", {"b1", "w1"}, {{"b1", "w1"}}),
                 VertexGroupSpec::cyclic(2));
  CanonicalWord c = canonicalize(p, W(p, "w1^1 . b1^1"));
  REQUIRE(format_word(p, c) == "b1^1 . w1^1");

  // On the flower the petals come first in declaration order.
  Presentation t4 = flower_presentation(4, VertexGroupSpec::cyclic(2));
  REQUIRE(format_word(t4, canonicalize(t4, W(t4, "b1^1 . w1^1"))) ==
          "w1^1 . b1^1");
  // Non-adjacent syllables keep their order.
  REQUIRE(format_word(t4, canonicalize(t4, W(t4, "b3^1 . b1^1"))) ==
          "b3^1 . b1^1");
}

TEST_CASE("equality, support, length") {
  Presentation p = flower_presentation(4, VertexGroupSpec::cyclic(2));
  REQUIRE(equal(p, W(p, "b1^1 . w1^1"), W(p, "w1^1 . b1^1")));
  REQUIRE_FALSE(equal(p, W(p, "b1^1 . b3^1"), W(p, "b3^1 . b1^1")));
  REQUIRE(equal(p, W(p, "e"), W(p, "b1^1 . b1^1")));

  REQUIRE(support(p, W(p, "b1^1 . w1^1 . b1^1")) == p.graph().set_of({"w1"}));
  REQUIRE(syllable_length(p, W(p, "b1^1 . w1^1 . b1^1")) == 1);
  REQUIRE(in_full_subgroup(p, W(p, "b1^1 . w1^1 . b1^1"),
                           p.graph().set_of({"w1"})));
  REQUIRE_FALSE(in_full_subgroup(p, W(p, "b1^1 . w1^1"),
                                 p.graph().set_of({"w1"})));
}

TEST_CASE("multiply and invert") {
  Presentation p = flower_presentation(4, VertexGroupSpec::cyclic(3));
  SplitMix64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    Word u = random_sequence(p, rng, 5);
    Word v = random_sequence(p, rng, 5);
    REQUIRE(multiply(p, u, inverse_word(p, u)).size() == 0);
    REQUIRE(equal(p, inverse_word(p, concat(u, v)),
                  concat(inverse_word(p, v), inverse_word(p, u))));
    REQUIRE(equal(p, concat(u, v), multiply(p, u, v).word()));
  }
}

TEST_CASE("word literals round-trip") {
  Presentation p = flower_presentation(4, VertexGroupSpec::cyclic(3));
  for (const char* text : {"e", "b1^1", "b1^2 . w1^1 . b2^2"}) {
    Word w = W(p, text);
    REQUIRE(format_word(p, w) == text);
    REQUIRE(W(p, format_word(p, w)) == w);
  }
  REQUIRE(W(p, "  b1^1 .   w1^2 ") == W(p, "b1^1 . w1^2"));
  REQUIRE(W(p, "b1^0").empty());  // identity literal drops out

  REQUIRE_THROWS_AS(W(p, "b9^1"), ParseError);
  REQUIRE_THROWS_AS(W(p, "b1"), ParseError);
  REQUIRE_THROWS_AS(W(p, "^1"), ParseError);
  REQUIRE_THROWS_AS(W(p, "b1^x"), ParseError);
  REQUIRE_THROWS_AS(W(p, ""), ParseError);

  // Rich payloads embed in word literals.
  Presentation q(Graph("pair", {"a", "b"}, {{"a", "b"}}),
                 {parse_spec("F2"), parse_spec("sum(Z/2, Z)")});
  Word w = W(q, "a^[x1 x2^-3] . b^(1, -4)");
  REQUIRE(format_word(q, w) == "a^[x1 x2^-3] . b^(1, -4)");
}

TEST_CASE("mismatched words are a hard error") {
  Presentation p2 = flower_presentation(4, VertexGroupSpec::cyclic(2));
  Presentation p3 = flower_presentation(4, VertexGroupSpec::cyclic(3));
  Word w = W(p3, "b1^2");  // residue 2 does not exist in Z/2
  REQUIRE_THROWS_AS(normalize(p2, w), SpecMismatch);
  Word far{Syllable{11, VertexGroupSpec::cyclic(2).from_int(1)}};
  REQUIRE_THROWS_AS(normalize(p2, far), SpecMismatch);
}

TEST_CASE("shuffle closure sizes") {
  Presentation p = flower_presentation(4, VertexGroupSpec::cyclic(2));
  REQUIRE(shuffle_closure(p, W(p, "w1^1 . b1^1")).size() == 2);
  REQUIRE(shuffle_closure(p, W(p, "b1^1 . b3^1")).size() == 1);
  REQUIRE(shuffle_closure(p, W(p, "e")).size() == 1);
  // w3 commutes with b3 but nothing else here: partial closure.
  REQUIRE(shuffle_closure(p, W(p, "b1^1 . b3^1 . w3^1")).size() == 2);
}

TEST_CASE("implementation agrees with the oracle exhaustively") {
  Presentation p = flower_presentation(4, VertexGroupSpec::cyclic(2));
  auto seqs = all_sequences(p, 3);
  REQUIRE(seqs.size() == 1 + 8 + 64 + 512);

  // Precompute both invariants per sequence.
  std::vector<std::string> impl_key, orac_key;
  std::vector<std::size_t> impl_len, orac_len;
  for (const Word& w : seqs) {
    CanonicalWord c = canonicalize(p, w);
    impl_key.push_back(word_key(p, c.word()));
    impl_len.push_back(c.size());
    orac_key.push_back(oracle_identity_key(p, w));
    orac_len.push_back(oracle_normal_form(p, w).size());
    REQUIRE(is_normal_form(p, c.word()));
  }
  // Lengths of independently computed normal forms coincide.
  for (std::size_t i = 0; i < seqs.size(); ++i)
    REQUIRE(impl_len[i] == orac_len[i]);
  // Pairwise equality verdicts coincide.
  for (std::size_t i = 0; i < seqs.size(); ++i)
    for (std::size_t j = 0; j < seqs.size(); ++j) {
      bool impl_eq = impl_key[i] == impl_key[j];
      bool orac_eq = orac_key[i] == orac_key[j];
      if (impl_eq != orac_eq) {
        INFO("u = " << format_word(p, seqs[i]));
        INFO("v = " << format_word(p, seqs[j]));
        REQUIRE(impl_eq == orac_eq);
      }
    }
  // Spot-check the pair invariant against direct oracle_equal calls.
  SplitMix64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const Word& u = seqs[rng.below(seqs.size())];
    const Word& v = seqs[rng.below(seqs.size())];
    REQUIRE(oracle_equal(p, u, v) == equal(p, u, v));
  }
}

TEST_CASE("element ball enumeration") {
  Presentation p = flower_presentation(4, VertexGroupSpec::cyclic(2));
  Budget b;
  b.max_syllables = 2;
  auto ball = enumerate_elements(p, b);
  // 1 identity + 8 single syllables + products of two generators.
  REQUIRE(ball.size() > 9);
  for (const auto& c : ball) REQUIRE(c.size() <= 2);
  // All distinct by construction.
  for (std::size_t i = 0; i < ball.size(); ++i)
    for (std::size_t j = i + 1; j < ball.size(); ++j)
      REQUIRE_FALSE(ball[i] == ball[j]);

  Budget zero;
  zero.max_count = 0;
  REQUIRE(enumerate_elements(p, zero).empty());

  Budget tight;
  tight.max_syllables = 3;
  tight.max_count = 10;
  REQUIRE_THROWS_AS(enumerate_elements(p, tight), BudgetExhausted);

  // Restricted to a clique the ball is the whole finite subgroup.
  Budget b3;
  b3.max_syllables = 3;
  auto clique_ball =
      enumerate_elements(p, p.graph().set_of({"w1", "b1", "b2"}), b3);
  REQUIRE(clique_ball.size() == 8);  // Z/2 x Z/2 x Z/2
}
