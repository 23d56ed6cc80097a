// Graph layer: vertex sets, clique enumeration, links/stars, isometries,
// cycle-of-cliques recognition and flower retraction.
#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "ccgp/cycle.hpp"
#include "ccgp/graph.hpp"

using namespace ccgp;

namespace {

// Independent clique oracle: test every vertex subset.  Usable up to ~12
// vertices; completeness and maximality are checked by definition.
std::vector<VertexSet> cliques_by_subsets(const Graph& g) {
  const int n = g.size();
  REQUIRE(n <= 12);
  std::vector<VertexSet> complete;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> vs;
    for (int v = 0; v < n; ++v)
      if (mask & (1u << v)) vs.push_back(v);
    VertexSet s(vs);
    if (g.is_complete(s)) complete.push_back(s);
  }
  std::vector<VertexSet> out;
  for (const auto& c : complete) {
    bool maximal = true;
    for (const auto& d : complete)
      if (c != d && is_subset(c, d)) maximal = false;
    if (maximal) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Independent isometry oracle: try all n! bijections.
std::size_t isometries_by_permutations(const Graph& g, const Graph& h) {
  if (g.size() != h.size()) return 0;
  std::vector<int> perm(g.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t found = 0;
  do {
    bool ok = true;
    for (int u = 0; u < g.size() && ok; ++u)
      for (int v = u + 1; v < g.size() && ok; ++v)
        ok = g.adjacent(u, v) == h.adjacent(perm[u], perm[v]);
    if (ok) ++found;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return found;
}

Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph("k" + std::to_string(n), n, edges);
}

// Four triangles glued in a path (no closing edge): b1..b5 path plus petals.
Graph triangle_path(int len) {
  std::vector<std::string> names;
  for (int i = 1; i <= len; ++i) names.push_back("w" + std::to_string(i));
  for (int i = 1; i <= len + 1; ++i) names.push_back("b" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 1; i <= len; ++i) {
    edges.emplace_back("b" + std::to_string(i), "b" + std::to_string(i + 1));
    edges.emplace_back("w" + std::to_string(i), "b" + std::to_string(i));
    edges.emplace_back("w" + std::to_string(i), "b" + std::to_string(i + 1));
  }
  return Graph("path" + std::to_string(len), std::move(names), edges);
}

// Flower with petal w1 doubled into adjacent twins w1a, w1b.
Graph inflated_flower4() {
  std::vector<std::string> names{"w1a", "w1b", "w2", "w3", "w4",
                                 "b1",  "b2",  "b3", "b4"};
  std::vector<std::pair<std::string, std::string>> edges{
      {"b1", "b2"}, {"b2", "b3"}, {"b3", "b4"}, {"b4", "b1"},
      {"w1a", "b1"}, {"w1a", "b2"}, {"w1b", "b1"}, {"w1b", "b2"},
      {"w1a", "w1b"},
      {"w2", "b2"}, {"w2", "b3"},
      {"w3", "b3"}, {"w3", "b4"},
      {"w4", "b4"}, {"w4", "b1"}};
  return Graph("t4fat", std::move(names), edges);
}

// One clique of the cycle is exactly the union of its two intersections.
Graph hollow_cycle() {
  std::vector<std::string> names{"x", "y", "p", "z", "q", "w", "r"};
  std::vector<std::pair<std::string, std::string>> edges{
      {"x", "y"},
      {"y", "p"}, {"y", "z"}, {"p", "z"},
      {"z", "q"}, {"z", "w"}, {"q", "w"},
      {"w", "r"}, {"w", "x"}, {"r", "x"}};
  return Graph("hollow", std::move(names), edges);
}

}  // namespace

TEST_CASE("vertex set operations") {
  VertexSet a{3, 1, 2, 1};
  REQUIRE(a.size() == 3);
  REQUIRE(a.contains(1));
  REQUIRE_FALSE(a.contains(4));
  VertexSet b{2, 4};
  REQUIRE(join(a, b) == VertexSet{1, 2, 3, 4});
  REQUIRE(meet(a, b) == VertexSet{2});
  REQUIRE(minus(a, b) == VertexSet{1, 3});
  REQUIRE(sym_diff(a, b) == VertexSet{1, 3, 4});
  REQUIRE(is_subset(VertexSet{1, 3}, a));
  REQUIRE_FALSE(is_subset(a, b));
  REQUIRE(are_disjoint(VertexSet{1}, VertexSet{2}));
  REQUIRE(is_subset(VertexSet{}, b));
}

TEST_CASE("graph construction rejects malformed input") {
  REQUIRE_THROWS_AS(Graph("g", {"a", "a"}, {}), Error);
  REQUIRE_THROWS_AS(Graph("g", {"a", "b"}, {{"a", "a"}}), Error);
  REQUIRE_THROWS_AS(Graph("g", {"a", "b"}, {{"a", "c"}}), Error);
  Graph g("g", {"a", "b"}, {{"a", "b"}, {"b", "a"}});
  REQUIRE(g.edge_count() == 1);
}

TEST_CASE("flower graph shape") {
  Graph t4 = make_flower(4);
  REQUIRE(t4.size() == 8);
  REQUIRE(t4.edge_count() == 12);
  REQUIRE(t4.adjacent(t4.index_of("w1"), t4.index_of("b1")));
  REQUIRE(t4.adjacent(t4.index_of("w1"), t4.index_of("b2")));
  REQUIRE_FALSE(t4.adjacent(t4.index_of("w1"), t4.index_of("b3")));
  REQUIRE_FALSE(t4.adjacent(t4.index_of("b1"), t4.index_of("b3")));
}

TEST_CASE("maximal cliques agree with the subset oracle") {
  for (const Graph& g :
       {make_flower(4), make_flower(5), complete_graph(5), triangle_path(4),
        hollow_cycle(), inflated_flower4(), make_flower(3)}) {
    auto fast = g.maximal_cliques();
    auto slow = cliques_by_subsets(g);
    INFO("graph " << g.name());
    REQUIRE(fast == slow);
    // Every vertex is covered and every returned set is a complete subgraph.
    VertexSet covered;
    for (const auto& c : fast) {
      REQUIRE(g.is_complete(c));
      covered = join(covered, c);
    }
    REQUIRE(covered == g.vertices());
  }
}

TEST_CASE("flower cliques are the triangles") {
  Graph t4 = make_flower(4);
  auto cl = t4.maximal_cliques();
  REQUIRE(cl.size() == 4);
  for (int i = 1; i <= 4; ++i) {
    VertexSet tri = t4.set_of(
        {("w" + std::to_string(i)).c_str(), ("b" + std::to_string(i)).c_str(),
         ("b" + std::to_string(i % 4 + 1)).c_str()});
    REQUIRE(std::count(cl.begin(), cl.end(), tri) == 1);
  }
  // The 3-petal flower grows a fourth clique: its base cycle is complete.
  REQUIRE(make_flower(3).maximal_cliques().size() == 4);
}

TEST_CASE("link and star") {
  Graph t4 = make_flower(4);
  REQUIRE(t4.link(t4.set_of({"b2"})) == t4.set_of({"b1", "b3", "w1", "w2"}));
  REQUIRE(t4.link(VertexSet{}) == t4.vertices());
  REQUIRE(t4.star(t4.set_of({"w1"})) == t4.set_of({"w1", "b1", "b2"}));
  REQUIRE(t4.star(VertexSet{}) == t4.vertices());
  // U and lk(U) are disjoint; st(U) contains U.
  for (VertexSet u : {t4.set_of({"b1"}), t4.set_of({"b1", "b2"}),
                      t4.set_of({"w1", "w3"}), t4.vertices()}) {
    REQUIRE(are_disjoint(u, t4.link(u)));
    REQUIRE(is_subset(u, t4.star(u)));
  }
  // Link of a maximal clique is empty.
  REQUIRE(t4.link(t4.set_of({"w1", "b1", "b2"})).empty());
}

TEST_CASE("isometry group of the 4-petal flower has order 8") {
  Graph t4 = make_flower(4);
  auto autos = isometries(t4, t4);
  REQUIRE(autos.size() == 8);
  REQUIRE(isometries_by_permutations(t4, t4) == 8);
  // Identity is present, the set is closed under inverse and composition.
  bool has_id = false;
  for (const auto& f : autos) has_id = has_id || f.is_identity();
  REQUIRE(has_id);
  for (const auto& f : autos) {
    REQUIRE(std::count(autos.begin(), autos.end(), f.inverse()) == 1);
    for (const auto& g : autos)
      REQUIRE(std::count(autos.begin(), autos.end(), f.then(g)) == 1);
  }
}

TEST_CASE("isometries between different flowers do not exist") {
  REQUIRE(isometries(make_flower(4), make_flower(5)).empty());
  Graph t4 = make_flower(4);
  Graph k8 = complete_graph(8);
  REQUIRE(isometries(t4, k8).empty());
}

TEST_CASE("flowers are recognized as cycles of cliques") {
  for (int n = 4; n <= 8; ++n) {
    Graph t = make_flower(n);
    auto res = recognize_cc1(t);
    REQUIRE(std::holds_alternative<CliqueDecomposition>(res));
    const auto& dec = std::get<CliqueDecomposition>(res);
    REQUIRE(dec.count() == n);
    for (int i = 1; i <= n; ++i) {
      std::string wi = "w" + std::to_string(i);
      std::string bi1 = "b" + std::to_string(i % n + 1);
      REQUIRE(dec.interior(i) == t.set_of({wi.c_str()}));
      REQUIRE(dec.intersection(i) == t.set_of({bi1.c_str()}));
      REQUIRE(dec.clique(i).size() >= 3);
    }
    // 1-based indices wrap cyclically.
    REQUIRE(dec.clique(0) == dec.clique(n));
    REQUIRE(dec.clique(n + 1) == dec.clique(1));
    REQUIRE(dec.intersection(0) == dec.intersection(n));
  }
}

TEST_CASE("non-examples are rejected with the right reason") {
  auto r1 = recognize_cc1(complete_graph(5));
  REQUIRE(std::holds_alternative<Cc1Rejection>(r1));
  REQUIRE(std::get<Cc1Rejection>(r1).reason ==
          Cc1Rejection::Reason::TooFewCliques);
  REQUIRE(std::get<Cc1Rejection>(r1).index == 1);

  // The 3-petal flower has four maximal cliques (three petals plus the
  // complete base cycle), and every pair of them intersects.
  auto r2 = recognize_cc1(make_flower(3));
  REQUIRE(std::holds_alternative<Cc1Rejection>(r2));
  REQUIRE(std::get<Cc1Rejection>(r2).reason ==
          Cc1Rejection::Reason::BadIntersectionPattern);

  auto r3 = recognize_cc1(triangle_path(4));
  REQUIRE(std::holds_alternative<Cc1Rejection>(r3));
  REQUIRE(std::get<Cc1Rejection>(r3).reason ==
          Cc1Rejection::Reason::BadIntersectionPattern);

  auto r4 = recognize_cc1(hollow_cycle());
  REQUIRE(std::holds_alternative<Cc1Rejection>(r4));
  REQUIRE(std::get<Cc1Rejection>(r4).reason ==
          Cc1Rejection::Reason::EmptyInterior);
  REQUIRE(std::get<Cc1Rejection>(r4).index == 1);
}

TEST_CASE("inflated flower is recognized and retracts onto the flower") {
  Graph fat = inflated_flower4();
  auto res = recognize_cc1(fat);
  REQUIRE(std::holds_alternative<CliqueDecomposition>(res));
  const auto& dec = std::get<CliqueDecomposition>(res);
  REQUIRE(dec.count() == 4);

  // The doubled petal forms a 2-vertex interior whose vertices are adjacent.
  int fat_interior = 0;
  for (int i = 1; i <= 4; ++i)
    if (dec.interior(i).size() == 2) {
      ++fat_interior;
      auto vs = dec.interior(i).values();
      REQUIRE(fat.adjacent(vs[0], vs[1]));
      REQUIRE(dec.interior(i) == fat.set_of({"w1a", "w1b"}));
    }
  REQUIRE(fat_interior == 1);

  FlowerRetraction ret = retract_to_flower(dec);
  REQUIRE_FALSE(isometries(ret.flower, make_flower(4)).empty());

  // Fibers are complete.
  for (int t = 0; t < ret.flower.size(); ++t) {
    std::vector<int> fiber;
    for (int v = 0; v < fat.size(); ++v)
      if (ret.fiber_of[v] == t) fiber.push_back(v);
    REQUIRE_FALSE(fiber.empty());
    REQUIRE(fat.is_complete(VertexSet(fiber)));
  }
  // Cross-fiber edges follow flower adjacency, completely.
  for (int u = 0; u < fat.size(); ++u)
    for (int v = 0; v < fat.size(); ++v) {
      if (u == v || ret.fiber_of[u] == ret.fiber_of[v]) continue;
      REQUIRE(fat.adjacent(u, v) ==
              ret.flower.adjacent(ret.fiber_of[u], ret.fiber_of[v]));
    }
}

TEST_CASE("recognition commutes with relabeling up to rotation/reflection") {
  Graph t4 = make_flower(4);
  // Same structure, vertices declared in a rotated order.
  std::vector<std::string> names{"w2", "w3", "w4", "w1",
                                 "b2", "b3", "b4", "b1"};
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 1; i <= 4; ++i) {
    int j = i % 4 + 1;
    edges.emplace_back("b" + std::to_string(i), "b" + std::to_string(j));
    edges.emplace_back("w" + std::to_string(i), "b" + std::to_string(i));
    edges.emplace_back("w" + std::to_string(i), "b" + std::to_string(j));
  }
  Graph rot("t4rot", names, edges);

  auto res1 = recognize_cc1(t4);
  auto res2 = recognize_cc1(rot);
  const auto& d1 = std::get<CliqueDecomposition>(res1);
  const auto& d2 = std::get<CliqueDecomposition>(res2);

  // Translate d2's cliques into t4's vertex labels.
  auto translate = [&](const VertexSet& s) {
    std::vector<int> out;
    for (int v : s) out.push_back(t4.index_of(rot.vertex_name(v)));
    return VertexSet(out);
  };
  bool aligned = false;
  for (int dir : {+1, -1})
    for (int shift = 0; shift < 4; ++shift) {
      bool all = true;
      for (int i = 1; i <= 4; ++i)
        all = all && translate(d2.clique(i)) == d1.clique(dir * i + shift);
      aligned = aligned || all;
    }
  REQUIRE(aligned);
}
