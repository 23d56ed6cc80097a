// Finite simple graphs with a declared vertex order, vertex sets, maximal
// clique enumeration, links/stars, and graph isometries (isomorphisms).
//
// Vertices are dense indices 0..size()-1 in declaration order; the
// declaration order is the canonical total order used everywhere downstream
// (clique sorting, lexicographic word comparison, deterministic search).
#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "ccgp/errors.hpp"

namespace ccgp {

// A sorted, duplicate-free set of vertex indices.  Value type; iteration is
// always in increasing vertex order, so every consumer is deterministic.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<int> xs) : v_(xs) { normalize(); }
  explicit VertexSet(std::vector<int> xs) : v_(std::move(xs)) { normalize(); }

  bool contains(int x) const {
    return std::binary_search(v_.begin(), v_.end(), x);
  }
  void insert(int x) {
    auto it = std::lower_bound(v_.begin(), v_.end(), x);
    if (it == v_.end() || *it != x) v_.insert(it, x);
  }
  std::size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }
  const std::vector<int>& values() const { return v_; }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  // Lexicographic on the sorted vertex lists; the canonical set order.
  friend bool operator<(const VertexSet& a, const VertexSet& b) {
    return a.v_ < b.v_;
  }

 private:
  void normalize() {
    std::sort(v_.begin(), v_.end());
    v_.erase(std::unique(v_.begin(), v_.end()), v_.end());
  }
  std::vector<int> v_;
};

inline VertexSet join(const VertexSet& a, const VertexSet& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return VertexSet(std::move(out));
}

inline VertexSet meet(const VertexSet& a, const VertexSet& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return VertexSet(std::move(out));
}

inline VertexSet minus(const VertexSet& a, const VertexSet& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return VertexSet(std::move(out));
}

inline VertexSet sym_diff(const VertexSet& a, const VertexSet& b) {
  std::vector<int> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(out));
  return VertexSet(std::move(out));
}

inline bool is_subset(const VertexSet& a, const VertexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool are_disjoint(const VertexSet& a, const VertexSet& b) {
  return meet(a, b).empty();
}

// A finite simple graph.  No self-loops, no multi-edges; undirected.
class Graph {
 public:
  Graph() = default;

  // Vertex names must be nonempty and pairwise distinct; edge endpoints must
  // name declared vertices and differ.  Duplicate edge declarations collapse.
  Graph(std::string name, std::vector<std::string> vertex_names,
        const std::vector<std::pair<std::string, std::string>>& edges)
      : name_(std::move(name)), names_(std::move(vertex_names)) {
    const int n = static_cast<int>(names_.size());
    for (int i = 0; i < n; ++i) {
      if (names_[i].empty()) throw Error("graph: empty vertex name");
      for (int j = i + 1; j < n; ++j)
        if (names_[i] == names_[j])
          throw Error("graph: duplicate vertex id '" + names_[i] + "'");
    }
    adj_.assign(static_cast<std::size_t>(n) * n, 0);
    for (const auto& [a, b] : edges) add_edge(index_of(a), index_of(b));
  }

  // Index-based constructor for programmatic graphs.
  Graph(std::string name, int n_vertices,
        const std::vector<std::pair<int, int>>& edges)
      : name_(std::move(name)) {
    names_.reserve(n_vertices);
    for (int i = 0; i < n_vertices; ++i) names_.push_back("v" + std::to_string(i));
    adj_.assign(static_cast<std::size_t>(n_vertices) * n_vertices, 0);
    for (auto [a, b] : edges) add_edge(a, b);
  }

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name() const { return name_; }

  int index_of(const std::string& vertex_name) const {
    for (int i = 0; i < size(); ++i)
      if (names_[i] == vertex_name) return i;
    throw Error("graph '" + name_ + "': unknown vertex '" + vertex_name + "'");
  }
  bool has_vertex(const std::string& vertex_name) const {
    for (const auto& s : names_)
      if (s == vertex_name) return true;
    return false;
  }
  const std::string& vertex_name(int v) const { return names_.at(v); }

  bool adjacent(int u, int v) const {
    return adj_[static_cast<std::size_t>(u) * size() + v] != 0;
  }

  int degree(int v) const {
    int d = 0;
    for (int u = 0; u < size(); ++u) d += adjacent(v, u) ? 1 : 0;
    return d;
  }

  int edge_count() const {
    int m = 0;
    for (int u = 0; u < size(); ++u)
      for (int v = u + 1; v < size(); ++v) m += adjacent(u, v) ? 1 : 0;
    return m;
  }

  VertexSet vertices() const {
    std::vector<int> all(names_.size());
    for (int i = 0; i < size(); ++i) all[i] = i;
    return VertexSet(std::move(all));
  }

  VertexSet set_of(std::initializer_list<const char*> vertex_names) const {
    std::vector<int> xs;
    for (const char* s : vertex_names) xs.push_back(index_of(s));
    return VertexSet(std::move(xs));
  }

  // lk(U) = intersection of the neighbor sets of the members of U.
  // lk(empty) is the whole vertex set; U and lk(U) are always disjoint.
  VertexSet link(const VertexSet& u) const {
    VertexSet acc = vertices();
    for (int x : u) {
      std::vector<int> nb;
      for (int y = 0; y < size(); ++y)
        if (adjacent(x, y)) nb.push_back(y);
      acc = meet(acc, VertexSet(std::move(nb)));
    }
    return acc;
  }

  // st(U) = U union lk(U).
  VertexSet star(const VertexSet& u) const { return join(u, link(u)); }

  bool is_complete(const VertexSet& u) const {
    for (int a : u)
      for (int b : u)
        if (a < b && !adjacent(a, b)) return false;
    return true;
  }

  // All maximal cliques, each sorted, the list sorted lexicographically.
  // Pivoting branch-and-bound over the canonical vertex order, so the result
  // is identical run to run.
  std::vector<VertexSet> maximal_cliques() const {
    std::vector<VertexSet> out;
    std::vector<int> r, p, x;
    for (int i = 0; i < size(); ++i) p.push_back(i);
    bron_kerbosch(r, p, x, out);
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.names_ == b.names_ && a.adj_ == b.adj_;
  }

 private:
  void add_edge(int a, int b) {
    if (a == b)
      throw Error("graph '" + name_ + "': self-loop at '" + names_[a] + "'");
    adj_[static_cast<std::size_t>(a) * size() + b] = 1;
    adj_[static_cast<std::size_t>(b) * size() + a] = 1;
  }

  void bron_kerbosch(std::vector<int>& r, std::vector<int> p,
                     std::vector<int> x, std::vector<VertexSet>& out) const {
    if (p.empty() && x.empty()) {
      out.emplace_back(r);
      return;
    }
    // Pivot: the candidate with the most neighbors inside p.
    int pivot = -1, best = -1;
    for (int cand : p) {
      int c = 0;
      for (int y : p) c += adjacent(cand, y) ? 1 : 0;
      if (c > best) best = c, pivot = cand;
    }
    for (int cand : x) {
      int c = 0;
      for (int y : p) c += adjacent(cand, y) ? 1 : 0;
      if (c > best) best = c, pivot = cand;
    }
    std::vector<int> ext;
    for (int v : p)
      if (pivot < 0 || !adjacent(pivot, v)) ext.push_back(v);
    for (int v : ext) {
      std::vector<int> p2, x2;
      for (int y : p)
        if (adjacent(v, y)) p2.push_back(y);
      for (int y : x)
        if (adjacent(v, y)) x2.push_back(y);
      r.push_back(v);
      bron_kerbosch(r, p2, x2, out);
      r.pop_back();
      p.erase(std::find(p.begin(), p.end(), v));
      x.push_back(v);
    }
  }

  std::string name_;
  std::vector<std::string> names_;
  std::vector<std::uint8_t> adj_;
};

// A graph isomorphism: a bijection on vertices preserving adjacency and
// non-adjacency.  Holds copies of both endpoints; plain value.
class GraphIsometry {
 public:
  GraphIsometry(Graph source, Graph target, std::vector<int> map)
      : source_(std::move(source)), target_(std::move(target)),
        map_(std::move(map)) {
    const int n = source_.size();
    if (target_.size() != n || static_cast<int>(map_.size()) != n)
      throw Error("isometry: size mismatch");
    std::vector<char> seen(n, 0);
    for (int v : map_) {
      if (v < 0 || v >= n || seen[v]) throw Error("isometry: not a bijection");
      seen[v] = 1;
    }
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (source_.adjacent(u, v) != target_.adjacent(map_[u], map_[v]))
          throw Error("isometry: adjacency not preserved");
  }

  const Graph& source() const { return source_; }
  const Graph& target() const { return target_; }
  int apply(int v) const { return map_.at(v); }
  VertexSet apply(const VertexSet& u) const {
    std::vector<int> out;
    for (int v : u) out.push_back(map_.at(v));
    return VertexSet(std::move(out));
  }
  const std::vector<int>& map() const { return map_; }

  GraphIsometry inverse() const {
    std::vector<int> inv(map_.size());
    for (int v = 0; v < static_cast<int>(map_.size()); ++v) inv[map_[v]] = v;
    return GraphIsometry(target_, source_, std::move(inv));
  }

  // this first, then g.
  GraphIsometry then(const GraphIsometry& g) const {
    std::vector<int> comp(map_.size());
    for (int v = 0; v < static_cast<int>(map_.size()); ++v)
      comp[v] = g.map_.at(map_[v]);
    return GraphIsometry(source_, g.target_, std::move(comp));
  }

  bool is_identity() const {
    for (int v = 0; v < static_cast<int>(map_.size()); ++v)
      if (map_[v] != v) return false;
    return true;
  }

  friend bool operator==(const GraphIsometry& a, const GraphIsometry& b) {
    return a.map_ == b.map_ && a.source_ == b.source_ && a.target_ == b.target_;
  }

 private:
  Graph source_, target_;
  std::vector<int> map_;
};

// Every isomorphism g -> h, in lexicographic order of the image vector.
// Backtracking over the canonical vertex order with degree pruning.
inline std::vector<GraphIsometry> isometries(const Graph& g, const Graph& h) {
  std::vector<GraphIsometry> out;
  const int n = g.size();
  if (h.size() != n) return out;
  std::vector<int> map(n, -1);
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self, int v) -> void {
    if (v == n) {
      out.emplace_back(g, h, map);
      return;
    }
    for (int t = 0; t < n; ++t) {
      if (used[t] || g.degree(v) != h.degree(t)) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u)
        ok = g.adjacent(u, v) == h.adjacent(map[u], t);
      if (!ok) continue;
      map[v] = t;
      used[t] = 1;
      self(self, v + 1);
      map[v] = -1;
      used[t] = 0;
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace ccgp
