#pragma once

// Forests on [n] whose roots 1..t lie in distinct trees, and their codewords
// in [n]^(n-t-1) x [t].

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "planardeg/errors.hpp"
#include "planardeg/graph.hpp"
#include "planardeg/random.hpp"

namespace planardeg {

using BigCount = boost::multiprecision::cpp_int;

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t size) : parent_(size) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

inline void check_shape(Vertex n, Vertex t) {
  if (t < 1) throw DomainError("forest needs at least one root (t >= 1)");
  if (n < t + 1) throw DomainError("forest with t roots needs n >= t + 1 vertices");
}

}  // namespace detail

/// Forest in F(n, t). Edges are kept in canonical sorted order.
struct RootedForest {
  Vertex n = 0;
  Vertex t = 0;
  std::vector<Edge> edges;

  RootedForest() = default;
  RootedForest(Vertex n_, Vertex t_, std::vector<Edge> e) : n(n_), t(t_), edges(std::move(e)) {
    for (Edge& x : edges) x = Edge(x.u, x.v);
    std::sort(edges.begin(), edges.end());
  }

  void validate() const {
    detail::check_shape(n, t);
    if (edges.size() != static_cast<std::size_t>(n - t)) {
      throw ValidationError("forest in F(n,t) must have n - t edges");
    }
    detail::DisjointSets sets(n + 1);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const Edge& e = edges[i];
      if (e.u < 1 || e.v > n || e.is_loop()) throw ValidationError("forest edge out of range or a loop");
      if (i > 0 && e == edges[i - 1]) throw ValidationError("forest has a repeated edge");
      if (!sets.unite(e.u, e.v)) throw ValidationError("forest contains a cycle");
    }
    std::vector<std::size_t> root_of;
    for (Vertex r = 1; r <= t; ++r) root_of.push_back(sets.find(r));
    std::sort(root_of.begin(), root_of.end());
    if (std::adjacent_find(root_of.begin(), root_of.end()) != root_of.end()) {
      throw ValidationError("two roots lie in the same tree");
    }
  }

  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> d(n + 1, 0);
    for (const Edge& e : edges) {
      ++d[e.u];
      ++d[e.v];
    }
    return d;
  }

  SimpleGraph graph() const { return SimpleGraph(n, edges); }

  friend bool operator==(const RootedForest&, const RootedForest&) = default;
};

/// Codeword of length n - t; the last entry is a root.
struct PrueferSequence {
  std::vector<Vertex> entries;

  void validate(Vertex n, Vertex t) const {
    detail::check_shape(n, t);
    if (entries.size() != static_cast<std::size_t>(n - t)) {
      throw ValidationError("sequence in S(n,t) must have length n - t");
    }
    for (Vertex x : entries) {
      if (x < 1 || x > n) throw ValidationError("sequence entry outside [1, n]");
    }
    if (entries.back() > t) throw ValidationError("last sequence entry must be a root (<= t)");
  }

  friend bool operator==(const PrueferSequence&, const PrueferSequence&) = default;
};

/// Repeatedly delete the leaf with the largest label and record its
/// neighbour.
inline PrueferSequence encode(const RootedForest& forest) {
  forest.validate();
  const Vertex n = forest.n;
  std::vector<std::size_t> deg(n + 1, 0);
  std::vector<Vertex> nbr_xor(n + 1, 0);  // xor of remaining neighbours
  for (const Edge& e : forest.edges) {
    ++deg[e.u];
    ++deg[e.v];
    nbr_xor[e.u] ^= e.v;
    nbr_xor[e.v] ^= e.u;
  }
  std::priority_queue<Vertex> leaves;
  for (Vertex v = 1; v <= n; ++v) {
    if (deg[v] == 1) leaves.push(v);
  }
  PrueferSequence seq;
  seq.entries.reserve(n - forest.t);
  for (Vertex i = 0; i < n - forest.t; ++i) {
    while (deg[leaves.top()] != 1) leaves.pop();
    const Vertex y = leaves.top();
    leaves.pop();
    if (y <= forest.t) throw std::logic_error("encode: removed a root");
    const Vertex x = nbr_xor[y];
    seq.entries.push_back(x);
    deg[y] = 0;
    nbr_xor[x] ^= y;
    if (--deg[x] == 1) leaves.push(x);
  }
  return seq;
}

/// Inverse of encode: start from degree targets (occurrences, +1 for
/// non-roots) and join each entry to the largest vertex whose remaining
/// degree is 1.
inline RootedForest decode(const PrueferSequence& seq, Vertex n, Vertex t) {
  seq.validate(n, t);
  std::vector<std::size_t> remaining(n + 1, 0);
  for (Vertex v = t + 1; v <= n; ++v) remaining[v] = 1;
  for (Vertex x : seq.entries) ++remaining[x];
  std::priority_queue<Vertex> ones;
  for (Vertex v = 1; v <= n; ++v) {
    if (remaining[v] == 1) ones.push(v);
  }
  std::vector<Edge> edges;
  edges.reserve(seq.entries.size());
  for (Vertex x : seq.entries) {
    while (!ones.empty() && remaining[ones.top()] != 1) ones.pop();
    if (ones.empty()) throw std::logic_error("decode: no vertex of remaining degree 1");
    const Vertex y = ones.top();
    ones.pop();
    if (y == x) throw ValidationError("decode: sequence would create a loop");
    edges.emplace_back(x, y);
    remaining[y] = 0;
    if (--remaining[x] == 1) ones.push(x);
  }
  return RootedForest(n, t, std::move(edges));
}

/// Degree of v in decode(seq): occurrences of v, plus one if v is not a root.
inline std::size_t degree_from_sequence(const PrueferSequence& seq, Vertex v, Vertex n, Vertex t) {
  if (v < 1 || v > n) throw DomainError("degree_from_sequence: vertex outside [1, n]");
  const auto occurrences = static_cast<std::size_t>(std::count(seq.entries.begin(), seq.entries.end(), v));
  return occurrences + (v > t ? 1 : 0);
}

template <std::uniform_random_bit_generator Gen>
PrueferSequence sample_sequence(Vertex n, Vertex t, Gen& gen) {
  detail::check_shape(n, t);
  PrueferSequence seq;
  seq.entries.resize(n - t);
  for (std::size_t i = 0; i + 1 < seq.entries.size(); ++i) seq.entries[i] = uniform_label(gen, n);
  seq.entries.back() = uniform_label(gen, t);
  return seq;
}

/// Uniform element of F(n, t).
template <std::uniform_random_bit_generator Gen>
RootedForest sample_uniform_forest(Vertex n, Vertex t, Gen& gen) {
  return decode(sample_sequence(n, t, gen), n, t);
}

/// |F(n, t)| = t * n^(n - t - 1).
inline BigCount count_forests(Vertex n, Vertex t) {
  detail::check_shape(n, t);
  BigCount result = t;
  for (Vertex i = 0; i + 1 < n - t; ++i) result *= n;
  return result;
}

}  // namespace planardeg
