// Cycle-of-cliques structure: recognizing graphs whose maximal cliques form
// a single cycle (consecutive cliques intersect, non-consecutive ones do
// not, every clique keeps a private interior), and retracting such a graph
// onto the flower graph it is modeled on.
#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ccgp/graph.hpp"

namespace ccgp {

// The flower graph with n petals: base cycle b1..bn plus petal vertices
// w1..wn, where w_i is adjacent to b_i and b_{i+1}.  Declaration order is
// w1..wn, b1..bn.  Its maximal cliques are the n triangles
// {w_i, b_i, b_{i+1}} once n >= 4; for n = 3 the base cycle is itself a
// fourth maximal clique.
inline Graph make_flower(int n) {
  if (n < 3) throw Error("flower: need at least 3 petals");
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("w" + std::to_string(i));
  for (int i = 1; i <= n; ++i) names.push_back("b" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 1; i <= n; ++i) {
    int j = i % n + 1;
    edges.emplace_back("b" + std::to_string(i), "b" + std::to_string(j));
    edges.emplace_back("w" + std::to_string(i), "b" + std::to_string(i));
    edges.emplace_back("w" + std::to_string(i), "b" + std::to_string(j));
  }
  return Graph("t" + std::to_string(n), std::move(names), edges);
}

// A certified cyclic enumeration C[1..n] of the maximal cliques of a graph:
// consecutive cliques intersect (I[i] = C[i] /\ C[i+1] nonempty), all other
// pairs are disjoint, and each interior N[i] = C[i] \ (I[i-1] \/ I[i]) is
// nonempty.  Indices are 1-based and wrap modulo n, so clique(0) == clique(n)
// and clique(n+1) == clique(1).
class CliqueDecomposition {
 public:
  CliqueDecomposition(Graph g, std::vector<VertexSet> cliques)
      : graph_(std::move(g)), cliques_(std::move(cliques)) {
    const int n = count();
    for (int i = 0; i < n; ++i)
      inter_.push_back(meet(cliques_[i], cliques_[(i + 1) % n]));
    for (int i = 0; i < n; ++i)
      interior_.push_back(
          minus(cliques_[i], join(inter_[(i + n - 1) % n], inter_[i])));
  }

  const Graph& graph() const { return graph_; }
  int count() const { return static_cast<int>(cliques_.size()); }

  // C[i], 1-based cyclic.
  const VertexSet& clique(int i) const { return cliques_[wrap(i)]; }
  // I[i] = C[i] /\ C[i+1], 1-based cyclic.
  const VertexSet& intersection(int i) const { return inter_[wrap(i)]; }
  // N[i] = C[i] \ (I[i-1] \/ I[i]), 1-based cyclic.
  const VertexSet& interior(int i) const { return interior_[wrap(i)]; }

 private:
  int wrap(int i) const {
    const int n = count();
    return ((i - 1) % n + n) % n;
  }
  Graph graph_;
  std::vector<VertexSet> cliques_;
  std::vector<VertexSet> inter_;
  std::vector<VertexSet> interior_;
};

// Why a graph is not a cycle of cliques.  A rejection is an ordinary value;
// tests branch on `reason` and `index`.
struct Cc1Rejection {
  enum class Reason {
    TooFewCliques,           // fewer than 4 maximal cliques (index = count)
    BadIntersectionPattern,  // clique intersection graph is not one cycle
    EmptyInterior,           // clique index (1-based) with empty interior
  };
  Reason reason;
  int index;
  std::string detail;
};

inline const char* to_string(Cc1Rejection::Reason r) {
  switch (r) {
    case Cc1Rejection::Reason::TooFewCliques: return "too-few-cliques";
    case Cc1Rejection::Reason::BadIntersectionPattern:
      return "bad-intersection-pattern";
    case Cc1Rejection::Reason::EmptyInterior: return "empty-interior";
  }
  return "unknown";
}

using Cc1Result = std::variant<CliqueDecomposition, Cc1Rejection>;

// Decide whether the maximal cliques of g form a single cycle with nonempty
// interiors, and if so return the canonical enumeration: C[1] is the
// lexicographically least clique containing the smallest vertex, and C[2] is
// the lexicographically smaller of its two cycle neighbors.  Runs on
// isomorphic inputs give enumerations matching up to rotation/reflection.
inline Cc1Result recognize_cc1(const Graph& g) {
  using Reason = Cc1Rejection::Reason;
  const std::vector<VertexSet> cl = g.maximal_cliques();
  const int n = static_cast<int>(cl.size());
  if (n < 4)
    return Cc1Rejection{Reason::TooFewCliques, n,
                        "found " + std::to_string(n) +
                            " maximal cliques, need at least 4"};

  std::vector<std::vector<int>> nb(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && !are_disjoint(cl[a], cl[b])) nb[a].push_back(b);
  for (int a = 0; a < n; ++a)
    if (nb[a].size() != 2)
      return Cc1Rejection{
          Reason::BadIntersectionPattern, a,
          "clique #" + std::to_string(a + 1) + " intersects " +
              std::to_string(nb[a].size()) + " others, expected 2"};

  int start = -1;
  for (int a = 0; a < n; ++a)
    if (cl[a].contains(0) && (start < 0 || cl[a] < cl[start])) start = a;
  int second = cl[nb[start][0]] < cl[nb[start][1]] ? nb[start][0] : nb[start][1];

  std::vector<int> order{start, second};
  while (static_cast<int>(order.size()) < n) {
    int prev = order[order.size() - 2], cur = order.back();
    int nxt = nb[cur][0] == prev ? nb[cur][1] : nb[cur][0];
    if (nxt == start) break;
    order.push_back(nxt);
  }
  if (static_cast<int>(order.size()) != n)
    return Cc1Rejection{Reason::BadIntersectionPattern, -1,
                        "clique intersection graph is not a single cycle"};
  {
    int prev = order[n - 2], cur = order.back();
    int nxt = nb[cur][0] == prev ? nb[cur][1] : nb[cur][0];
    if (nxt != start)
      return Cc1Rejection{Reason::BadIntersectionPattern, -1,
                          "clique intersection graph is not a single cycle"};
  }

  std::vector<VertexSet> ordered;
  for (int a : order) ordered.push_back(cl[a]);
  CliqueDecomposition dec(g, std::move(ordered));
  for (int i = 1; i <= n; ++i)
    if (dec.interior(i).empty())
      return Cc1Rejection{Reason::EmptyInterior, i,
                          "clique C[" + std::to_string(i) +
                              "] has no private vertex"};
  return dec;
}

// A retraction of a cycle-of-cliques graph onto the flower with the same
// number of petals.  fiber_of[v] is the flower vertex of source vertex v:
// interiors N[i] collapse to petal w_i, intersections I[i] collapse to base
// vertex b_{i+1}.  Fibers are complete, and two fibers are joined completely
// or not at all, following flower adjacency.
struct FlowerRetraction {
  Graph flower;
  std::vector<int> fiber_of;
};

inline FlowerRetraction retract_to_flower(const CliqueDecomposition& dec) {
  const int n = dec.count();
  Graph flower = make_flower(n);
  std::vector<int> fiber(dec.graph().size(), -1);
  for (int i = 1; i <= n; ++i) {
    for (int v : dec.interior(i)) fiber[v] = i - 1;        // w_i
    for (int v : dec.intersection(i)) fiber[v] = n + i % n;  // b_{i+1}
  }
  for (int v : fiber)
    if (v < 0) throw Error("retract: vertex outside every clique block");
  return FlowerRetraction{std::move(flower), std::move(fiber)};
}

}  // namespace ccgp
