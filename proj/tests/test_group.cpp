// Vertex group menu: exact arithmetic, enumeration, literals, and the
// wreath product axioms.
#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "ccgp/group.hpp"
#include "ccgp/rng.hpp"

using namespace ccgp;

namespace {

// Independent free reduction: expand to single letters, cancel adjacent
// inverse pairs until none remain, recompress runs.
std::vector<std::pair<int, Int>> reduce_by_scanning(
    const std::vector<std::pair<int, Int>>& raw) {
  std::vector<std::pair<int, int>> letters;
  for (const auto& [l, e] : raw) {
    for (Int k = 0; k < abs(e); ++k) letters.emplace_back(l, e > 0 ? 1 : -1);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < letters.size(); ++i)
      if (letters[i].first == letters[i + 1].first &&
          letters[i].second == -letters[i + 1].second) {
        letters.erase(letters.begin() + i, letters.begin() + i + 2);
        changed = true;
        break;
      }
  }
  std::vector<std::pair<int, Int>> runs;
  for (auto [l, s] : letters) {
    if (!runs.empty() && runs.back().first == l)
      runs.back().second += s;
    else
      runs.emplace_back(l, s);
  }
  return runs;
}

void check_axioms_exhaustively(const VertexGroupSpec& g) {
  auto all = g.elements();
  const GroupElement e = g.identity();
  for (const auto& x : all) {
    REQUIRE(g.mul(x, e) == x);
    REQUIRE(g.mul(e, x) == x);
    REQUIRE(g.mul(x, g.inv(x)) == e);
    REQUIRE(g.mul(g.inv(x), x) == e);
  }
  for (const auto& x : all)
    for (const auto& y : all)
      for (const auto& z : all)
        REQUIRE(g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z)));
}

}  // namespace

TEST_CASE("cyclic groups") {
  auto z5 = VertexGroupSpec::cyclic(5);
  REQUIRE(z5.is_finite());
  REQUIRE(z5.order() == 5);
  REQUIRE(z5.mul(z5.from_int(3), z5.from_int(4)) == z5.from_int(2));
  REQUIRE(z5.inv(z5.from_int(2)) == z5.from_int(3));
  REQUIRE(z5.from_int(-1) == z5.from_int(4));
  REQUIRE(z5.elements().size() == 5);
  REQUIRE(z5.elements().front().is_identity());
  check_axioms_exhaustively(z5);
  REQUIRE_THROWS_AS(VertexGroupSpec::cyclic(1), Error);
}

TEST_CASE("integers are arbitrary precision") {
  auto z = VertexGroupSpec::integers();
  REQUIRE_FALSE(z.is_finite());
  Int big = Int(1) << 100;
  GroupElement x = z.from_int(big);
  REQUIRE(z.mul(x, x).scalar() == big * 2);
  REQUIRE(z.inv(x).scalar() == -big);
  REQUIRE(format_element(z, x) == big.str());
  REQUIRE(parse_element(z, big.str()) == x);
  REQUIRE_THROWS_AS(z.elements(), Error);
  auto small = z.small_elements(2);
  REQUIRE(small.size() == 4);  // -2 -1 1 2
}

TEST_CASE("free group reduction matches a naive scanner") {
  auto f2 = VertexGroupSpec::free_group(2);
  REQUIRE(f2.free_word({{0, 1}, {0, -1}}).is_identity());
  REQUIRE(f2.free_word({{0, 2}, {0, -3}}) == f2.free_word({{0, -1}}));
  REQUIRE(f2.mul(f2.free_word({{0, 1}, {1, 1}}), f2.free_word({{1, -1}, {0, 1}})) ==
          f2.free_word({{0, 2}}));

  SplitMix64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::pair<int, Int>> raw;
    const int len = static_cast<int>(rng.below(8));
    for (int i = 0; i < len; ++i)
      raw.emplace_back(static_cast<int>(rng.below(2)),
                       Int(rng.below(7)) - 3);
    REQUIRE(f2.free_word(raw).runs() == reduce_by_scanning(raw));
  }
  // Associativity and inverses on random triples.
  for (int trial = 0; trial < 100; ++trial) {
    auto rand_word = [&] {
      std::vector<std::pair<int, Int>> raw;
      const int len = static_cast<int>(rng.below(6));
      for (int i = 0; i < len; ++i)
        raw.emplace_back(static_cast<int>(rng.below(2)),
                         Int(rng.below(5)) - 2);
      return f2.free_word(raw);
    };
    GroupElement x = rand_word(), y = rand_word(), z = rand_word();
    REQUIRE(f2.mul(f2.mul(x, y), z) == f2.mul(x, f2.mul(y, z)));
    REQUIRE(f2.mul(x, f2.inv(x)).is_identity());
  }
}

TEST_CASE("direct sums") {
  auto s = VertexGroupSpec::direct_sum(
      {VertexGroupSpec::cyclic(2), VertexGroupSpec::cyclic(3)});
  REQUIRE(s.order() == 6);
  REQUIRE(s.elements().size() == 6);
  check_axioms_exhaustively(s);
  auto x = s.tuple({s.parts()[0].from_int(1), s.parts()[1].from_int(2)});
  auto y = s.tuple({s.parts()[0].from_int(1), s.parts()[1].from_int(2)});
  REQUIRE(s.mul(x, y) ==
          s.tuple({s.parts()[0].from_int(0), s.parts()[1].from_int(1)}));
  REQUIRE_THROWS_AS(s.tuple({s.parts()[0].from_int(1)}), SpecMismatch);

  auto mixed = VertexGroupSpec::direct_sum(
      {VertexGroupSpec::cyclic(2), VertexGroupSpec::integers()});
  REQUIRE_FALSE(mixed.is_finite());
  REQUIRE(mixed.small_elements(1).size() == 3);  // (1,0), (0,-1), (0,1)
}

TEST_CASE("split wreath products satisfy the wreath axioms") {
  auto w8 = VertexGroupSpec::split_wreath(VertexGroupSpec::cyclic(2),
                                          VertexGroupSpec::cyclic(2));
  REQUIRE(w8.order() == 8);
  REQUIRE(w8.elements().size() == 8);
  check_axioms_exhaustively(w8);
  WreathReport r8 = wreath_summand_conjugation_check(w8);
  REQUIRE(r8.all_pass());
  REQUIRE(r8.summand_checks == 16);  // 8 elements x 2 indices
  REQUIRE(r8.order_total == 8);

  auto w24 = VertexGroupSpec::split_wreath(VertexGroupSpec::cyclic(2),
                                           VertexGroupSpec::cyclic(3));
  REQUIRE(w24.order() == 24);
  check_axioms_exhaustively(w24);
  WreathReport r24 = wreath_summand_conjugation_check(w24);
  REQUIRE(r24.all_pass());
  REQUIRE(r24.summand_checks == 72);  // 24 elements x 3 indices

  REQUIRE_FALSE(w24.is_abelian());
  // Nonabelian witness: the product order matters.
  auto a = w24.wreath({{0, w24.base().from_int(1)}}, w24.acting().identity());
  auto b = w24.wreath({}, w24.acting().from_int(1));
  REQUIRE(w24.mul(a, b) != w24.mul(b, a));

  REQUIRE_THROWS_AS(VertexGroupSpec::split_wreath(VertexGroupSpec::integers(),
                                                  VertexGroupSpec::cyclic(2)),
                    Error);
}

TEST_CASE("spec literals round-trip") {
  for (const char* text :
       {"Z", "Z/7", "F2", "sum(Z/2, Z)", "wreath(Z/2, Z/3)",
        "sum(Z/2, sum(Z, F1))", "sum(wreath(Z/2, Z/2), Z/5)"}) {
    VertexGroupSpec spec = parse_spec(text);
    REQUIRE(spec.to_text() == text);
    REQUIRE(parse_spec(spec.to_text()) == spec);
  }
  REQUIRE_THROWS_AS(parse_spec("Q"), ParseError);
  REQUIRE_THROWS_AS(parse_spec("Z/1"), ParseError);
  REQUIRE_THROWS_AS(parse_spec("F0"), ParseError);
  REQUIRE_THROWS_AS(parse_spec("wreath(Z, Z/2)"), ParseError);
  REQUIRE_THROWS_AS(parse_spec("sum()"), ParseError);
}

TEST_CASE("element literals round-trip") {
  auto z = VertexGroupSpec::integers();
  auto z5 = VertexGroupSpec::cyclic(5);
  auto f2 = VertexGroupSpec::free_group(2);
  auto sum = parse_spec("sum(Z/2, Z)");
  auto w = parse_spec("wreath(Z/2, Z/3)");

  auto roundtrip = [](const VertexGroupSpec& spec, const std::string& lit) {
    GroupElement x = parse_element(spec, lit);
    REQUIRE(parse_element(spec, format_element(spec, x)) == x);
    return format_element(spec, x);
  };
  REQUIRE(roundtrip(z, "-12") == "-12");
  REQUIRE(roundtrip(z5, "7") == "2");
  REQUIRE(roundtrip(f2, "[x1 x2^-3 x1^2]") == "[x1 x2^-3 x1^2]");
  REQUIRE(roundtrip(f2, "[x1 x1^-1]") == "[]");
  REQUIRE(roundtrip(sum, "(1, -4)") == "(1, -4)");
  REQUIRE(roundtrip(w, "{0:1, 2:1 | 1}") == "{0:1, 2:1|1}");
  REQUIRE(roundtrip(w, "{|0}") == "{|0}");
  REQUIRE(parse_element(w, "{1:0 | 2}").base_entries().empty());

  REQUIRE_THROWS_AS(parse_element(z, "abc"), ParseError);
  REQUIRE_THROWS_AS(parse_element(f2, "[x3]"), ParseError);
  REQUIRE_THROWS_AS(parse_element(sum, "(1)"), ParseError);
  REQUIRE_THROWS_AS(parse_element(w, "{0:1}"), ParseError);
  REQUIRE_THROWS_AS(parse_element(w, "{5:1 | 0}"), SpecMismatch);
}

TEST_CASE("cross-kind payloads are rejected") {
  auto z5 = VertexGroupSpec::cyclic(5);
  auto f2 = VertexGroupSpec::free_group(2);
  GroupElement w = f2.free_word({{0, 1}});
  REQUIRE_THROWS_AS(z5.mul(z5.from_int(1), w), SpecMismatch);
  REQUIRE_THROWS_AS(f2.from_int(3), SpecMismatch);
  auto z7 = VertexGroupSpec::cyclic(7);
  REQUIRE_FALSE(z5.valid(z7.from_int(6)));  // residue out of range for Z/5
  REQUIRE(z5.valid(z7.from_int(3)));        // payloads carry no modulus
}
