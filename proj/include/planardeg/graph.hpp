#pragma once

// Labeled graphs on vertex set [n] (1-indexed), component analysis, the
// 2-core and the complex/non-complex decomposition.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "planardeg/errors.hpp"

namespace planardeg {

using Vertex = std::uint32_t;

/// Unordered pair stored with u <= v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}

  bool is_loop() const noexcept { return u == v; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
  friend bool operator==(const Edge&, const Edge&) = default;
};

namespace detail {

inline std::vector<std::vector<Vertex>> build_adjacency(Vertex n, std::span<const Edge> edges) {
  std::vector<std::vector<Vertex>> adj(n + 1);
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);  // a loop appears twice in its own list
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

inline void check_range(Vertex n, std::span<const Edge> edges) {
  for (const Edge& e : edges) {
    if (e.u < 1 || e.v > n) {
      throw ValidationError("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            "} outside vertex range [1," + std::to_string(n) + "]");
    }
  }
}

}  // namespace detail

/// Simple labeled graph: no loops, no parallel edges. Immutable.
class SimpleGraph {
 public:
  SimpleGraph() : SimpleGraph(0, {}) {}

  SimpleGraph(Vertex n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    for (Edge& e : edges_) e = Edge(e.u, e.v);
    detail::check_range(n_, edges_);
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (edges_[i].is_loop()) throw ValidationError("simple graph cannot contain a loop");
      if (i > 0 && edges_[i] == edges_[i - 1]) throw ValidationError("simple graph cannot contain parallel edges");
    }
    adj_ = detail::build_adjacency(n_, edges_);
  }

  Vertex n() const noexcept { return n_; }
  std::size_t m() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adj_.at(v); }
  std::size_t degree(Vertex v) const { return adj_.at(v).size(); }
  bool has_edge(Vertex a, Vertex b) const {
    if (a < 1 || a > n_ || b < 1 || b > n_) return false;
    const auto& nb = adj_[a];
    return std::binary_search(nb.begin(), nb.end(), b);
  }

  friend bool operator==(const SimpleGraph& a, const SimpleGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  Vertex n_;
  std::vector<Edge> edges_;  // sorted, canonical
  std::vector<std::vector<Vertex>> adj_;
};

/// Multigraph: loops and parallel edges allowed. A loop adds 2 to the degree.
class MultiGraph {
 public:
  MultiGraph(Vertex n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    for (Edge& e : edges_) e = Edge(e.u, e.v);
    detail::check_range(n_, edges_);
    degree_.assign(n_ + 1, 0);
    for (const Edge& e : edges_) {
      ++degree_[e.u];
      ++degree_[e.v];
    }
  }

  Vertex n() const noexcept { return n_; }
  std::size_t m() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t degree(Vertex v) const { return degree_.at(v); }
  std::size_t max_degree() const {
    return degree_.empty() ? 0 : *std::max_element(degree_.begin(), degree_.end());
  }

  bool has_loop() const {
    return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_loop(); });
  }
  bool has_parallel_edge() const {
    std::vector<Edge> sorted = edges_;
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
  }
  bool is_simple() const { return !has_loop() && !has_parallel_edge(); }

  /// Throws ValidationError if the multigraph is not simple.
  SimpleGraph to_simple() const { return SimpleGraph(n_, edges_); }

 private:
  Vertex n_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> degree_;
};

inline std::vector<std::size_t> degree_sequence(const SimpleGraph& g) {
  std::vector<std::size_t> d(g.n());
  for (Vertex v = 1; v <= g.n(); ++v) d[v - 1] = g.degree(v);
  return d;
}

inline std::size_t max_degree(const SimpleGraph& g) {
  std::size_t best = 0;
  for (Vertex v = 1; v <= g.n(); ++v) best = std::max(best, g.degree(v));
  return best;
}

struct IsolatedCounts {
  std::size_t vertices = 0;  // degree 0
  std::size_t edges = 0;     // both endpoints of degree 1
  friend bool operator==(const IsolatedCounts&, const IsolatedCounts&) = default;
};

inline IsolatedCounts isolated_counts(const SimpleGraph& g) {
  IsolatedCounts c;
  for (Vertex v = 1; v <= g.n(); ++v) c.vertices += g.degree(v) == 0;
  for (const Edge& e : g.edges()) c.edges += g.degree(e.u) == 1 && g.degree(e.v) == 1;
  return c;
}

using VertexSet = std::vector<Vertex>;

namespace detail {

inline bool component_order(const VertexSet& a, const VertexSet& b) {
  if (a.size() != b.size()) return a.size() > b.size();
  return a.front() < b.front();
}

}  // namespace detail

/// Connected components, each sorted; ordered by size descending, then by
/// smallest label.
inline std::vector<VertexSet> components(const SimpleGraph& g) {
  std::vector<VertexSet> out;
  std::vector<char> seen(g.n() + 1, 0);
  std::vector<Vertex> stack;
  for (Vertex s = 1; s <= g.n(); ++s) {
    if (seen[s]) continue;
    VertexSet comp;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (Vertex w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  std::sort(out.begin(), out.end(), detail::component_order);
  return out;
}

/// Edges of g with both endpoints in `vertices` (which must be sorted).
inline std::vector<Edge> induced_edges(const SimpleGraph& g, const VertexSet& vertices) {
  std::vector<Edge> out;
  for (const Edge& e : g.edges()) {
    if (std::binary_search(vertices.begin(), vertices.end(), e.u) &&
        std::binary_search(vertices.begin(), vertices.end(), e.v)) {
      out.push_back(e);
    }
  }
  return out;
}

/// Cycle rank m - n + 1 of a connected vertex set.
inline std::int64_t cycle_rank(const SimpleGraph& g, const VertexSet& comp) {
  std::size_t twice_m = 0;
  for (Vertex v : comp) twice_m += g.degree(v);
  return static_cast<std::int64_t>(twice_m / 2) - static_cast<std::int64_t>(comp.size()) + 1;
}

/// A component is complex when it contains at least two cycles.
inline bool is_complex_component(const SimpleGraph& g, VertexSet comp) {
  std::sort(comp.begin(), comp.end());
  if (comp.empty()) throw DomainError("empty vertex set is not a component");
  if (comp.front() < 1 || comp.back() > g.n() || std::adjacent_find(comp.begin(), comp.end()) != comp.end()) {
    throw DomainError("vertex set is not a component of the graph");
  }
  // Closed under adjacency and connected.
  std::vector<char> in(g.n() + 1, 0), seen(g.n() + 1, 0);
  for (Vertex v : comp) in[v] = 1;
  std::vector<Vertex> stack{comp.front()};
  seen[comp.front()] = 1;
  std::size_t reached = 0;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    ++reached;
    for (Vertex w : g.neighbors(v)) {
      if (!in[w]) throw DomainError("vertex set is not a component of the graph");
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  if (reached != comp.size()) throw DomainError("vertex set is not a component of the graph");
  return cycle_rank(g, comp) >= 2;
}

/// Largest subgraph of minimum degree 2 (the classical 2-core): delete
/// vertices of degree at most 1 until none remain. Same vertex set [n].
inline SimpleGraph peel_leaves(const SimpleGraph& g) {
  std::vector<char> keep(g.n() + 1, 1);
  std::vector<std::size_t> deg(g.n() + 1, 0);
  std::vector<Vertex> queue;
  for (Vertex v = 1; v <= g.n(); ++v) {
    deg[v] = g.degree(v);
    if (deg[v] <= 1) queue.push_back(v);
  }
  while (!queue.empty()) {
    const Vertex v = queue.back();
    queue.pop_back();
    if (!keep[v]) continue;
    keep[v] = 0;
    for (Vertex w : g.neighbors(v)) {
      if (keep[w] && --deg[w] == 1) queue.push_back(w);
    }
  }
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (keep[e.u] && keep[e.v]) kept.push_back(e);
  }
  return SimpleGraph(g.n(), std::move(kept));
}

/// Core C(H): peel leaves, then drop components that are bare cycles. Peeling
/// keeps the cycle rank of every component, so what survives is exactly the
/// peeled complex part. Returned on [n]; core vertices have positive degree.
inline SimpleGraph two_core(const SimpleGraph& g) {
  const SimpleGraph peeled = peel_leaves(g);
  std::vector<char> drop(g.n() + 1, 0);
  for (const VertexSet& comp : components(peeled)) {
    if (peeled.degree(comp.front()) == 0) continue;
    const bool bare_cycle =
        std::all_of(comp.begin(), comp.end(), [&](Vertex v) { return peeled.degree(v) == 2; });
    if (bare_cycle) {
      for (Vertex v : comp) drop[v] = 1;
    }
  }
  std::vector<Edge> core_edges;
  for (const Edge& e : peeled.edges()) {
    if (!drop[e.u]) core_edges.push_back(e);
  }
  return SimpleGraph(g.n(), std::move(core_edges));
}

/// Vertices of positive degree.
inline VertexSet support(const SimpleGraph& g) {
  VertexSet out;
  for (Vertex v = 1; v <= g.n(); ++v) {
    if (g.degree(v) > 0) out.push_back(v);
  }
  return out;
}

/// Components of g restricted to its non-isolated vertices, in component order.
inline std::vector<VertexSet> nontrivial_components(const SimpleGraph& g) {
  std::vector<VertexSet> out;
  for (VertexSet& c : components(g)) {
    if (c.size() > 1) out.push_back(std::move(c));
  }
  return out;
}

struct GraphPart {
  VertexSet vertices;
  std::vector<Edge> edges;
};

struct Decomposition {
  SimpleGraph core;         // C(H) on [n]
  GraphPart big_complex;    // Q_L(H)
  GraphPart small_complex;  // Q_S(H)
  GraphPart non_complex;    // U(H)
};

/// Split into Q_L (the complex component holding the largest core component),
/// Q_S (all other complex components) and U (everything else).
inline Decomposition decompose(const SimpleGraph& g) {
  Decomposition d{two_core(g), {}, {}, {}};
  const auto core_comps = nontrivial_components(d.core);
  Vertex anchor = 0;
  if (!core_comps.empty()) anchor = core_comps.front().front();

  for (const VertexSet& comp : components(g)) {
    GraphPart* target = &d.non_complex;
    if (cycle_rank(g, comp) >= 2) {
      const bool holds_anchor = anchor != 0 && std::binary_search(comp.begin(), comp.end(), anchor);
      target = holds_anchor ? &d.big_complex : &d.small_complex;
    }
    target->vertices.insert(target->vertices.end(), comp.begin(), comp.end());
  }
  for (GraphPart* part : {&d.big_complex, &d.small_complex, &d.non_complex}) {
    std::sort(part->vertices.begin(), part->vertices.end());
    part->edges = induced_edges(g, part->vertices);
  }
  return d;
}

/// Edge-list text: "N M" header, then M lines "u v", 1-indexed.
inline std::pair<Vertex, std::vector<Edge>> read_edge_list(std::istream& in) {
  long long n = -1, m = -1;
  if (!(in >> n >> m) || n < 0 || m < 0) throw ValidationError("edge list: bad 'N M' header");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    long long u = 0, v = 0;
    if (!(in >> u >> v)) throw ValidationError("edge list: expected " + std::to_string(m) + " edges");
    if (u < 1 || v < 1 || u > n || v > n) throw ValidationError("edge list: endpoint out of range");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return {static_cast<Vertex>(n), std::move(edges)};
}

inline void write_edge_list(std::ostream& out, Vertex n, std::span<const Edge> edges) {
  out << n << ' ' << edges.size() << '\n';
  for (const Edge& e : edges) out << e.u << ' ' << e.v << '\n';
}

inline void write_edge_list(std::ostream& out, const SimpleGraph& g) { write_edge_list(out, g.n(), g.edges()); }

inline SimpleGraph parse_simple_graph(const std::string& text) {
  std::istringstream in(text);
  auto [n, edges] = read_edge_list(in);
  return SimpleGraph(n, std::move(edges));
}

}  // namespace planardeg
