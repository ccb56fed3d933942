#pragma once

// Rejection samplers built on the balls-into-bins multigraph: uniform G(n,m),
// uniform graphs without complex components U(n,m), and uniform complex
// parts with a prescribed core.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "planardeg/balls_bins.hpp"
#include "planardeg/errors.hpp"
#include "planardeg/graph.hpp"
#include "planardeg/pruefer.hpp"
#include "planardeg/random.hpp"

namespace planardeg {

inline constexpr std::uint64_t kDefaultMaxAttempts = 10'000;

struct RejectionReport {
  std::uint64_t attempts = 0;
  bool accepted = false;
  std::uint64_t loop = 0;
  std::uint64_t parallel_edge = 0;
  std::uint64_t complex_component = 0;

  double acceptance_rate() const { return attempts == 0 ? 0.0 : (accepted ? 1.0 : 0.0) / attempts; }
};

struct GraphSample {
  std::optional<SimpleGraph> graph;  // empty when attempts ran out
  RejectionReport report;
};

/// Pairs consecutive entries: edge i is {A_(2i-1), A_(2i)}.
inline MultiGraph multigraph_from_locations(const LocationVector& loc) {
  loc.validate();
  if (loc.entries.size() % 2 != 0) throw DomainError("multigraph_from_locations needs an even number of entries");
  std::vector<Edge> edges;
  edges.reserve(loc.entries.size() / 2);
  for (std::size_t i = 0; i < loc.entries.size(); i += 2) edges.emplace_back(loc.entries[i], loc.entries[i + 1]);
  return MultiGraph(loc.n_bins, std::move(edges));
}

namespace detail {

enum class DrawOutcome { simple, loop, parallel_edge };

// One multigraph draw with 2m uniform endpoints, abandoned at the first loop
// or repeated edge. On success `edges` holds the m edges in draw order.
template <std::uniform_random_bit_generator Gen>
DrawOutcome draw_multigraph_edges(Vertex n, std::uint64_t m, Gen& gen, std::vector<Edge>& edges,
                                  std::unordered_set<std::uint64_t>& seen) {
  edges.clear();
  seen.clear();
  for (std::uint64_t i = 0; i < m; ++i) {
    const Vertex a = uniform_label(gen, n);
    const Vertex b = uniform_label(gen, n);
    if (a == b) return DrawOutcome::loop;
    const Edge e(a, b);
    if (!seen.insert(static_cast<std::uint64_t>(e.u) * (static_cast<std::uint64_t>(n) + 1) + e.v).second) {
      return DrawOutcome::parallel_edge;
    }
    edges.push_back(e);
  }
  return DrawOutcome::simple;
}

inline void check_gnm_args(Vertex n, std::uint64_t m) {
  if (n < 1) throw DomainError("sampler requires n >= 1");
  if (m > static_cast<std::uint64_t>(n) * (n - 1) / 2) throw DomainError("m exceeds n(n-1)/2");
}

// True iff some component of the edge set has at least two cycles.
inline bool has_complex_component(Vertex n, const std::vector<Edge>& edges) {
  DisjointSets sets(n + 1);
  std::vector<std::int64_t> excess(n + 1, 0);  // edges - vertices + 1 on roots
  for (const Edge& e : edges) {
    const auto a = sets.find(e.u), b = sets.find(e.v);
    if (a == b) {
      if (++excess[a] >= 2) return true;
    } else {
      sets.unite(a, b);
      const auto r = sets.find(a);
      excess[r] = excess[a] + excess[b];
      if (excess[r] >= 2) return true;
    }
  }
  return false;
}

}  // namespace detail

/// Uniform simple graph on [n] with m edges: resample the multigraph until
/// it is simple.
template <std::uniform_random_bit_generator Gen>
GraphSample sample_gnm(Vertex n, std::uint64_t m, Gen& gen, std::uint64_t max_attempts = kDefaultMaxAttempts) {
  detail::check_gnm_args(n, m);
  GraphSample out;
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(2 * m);
  while (out.report.attempts < max_attempts) {
    ++out.report.attempts;
    switch (detail::draw_multigraph_edges(n, m, gen, edges, seen)) {
      case detail::DrawOutcome::loop: ++out.report.loop; break;
      case detail::DrawOutcome::parallel_edge: ++out.report.parallel_edge; break;
      case detail::DrawOutcome::simple:
        out.report.accepted = true;
        out.graph.emplace(n, std::move(edges));
        return out;
    }
  }
  return out;
}

/// Uniform graph on [n] with m edges and no complex component.
template <std::uniform_random_bit_generator Gen>
GraphSample sample_noncomplex(Vertex n, std::uint64_t m, Gen& gen,
                              std::uint64_t max_attempts = kDefaultMaxAttempts) {
  detail::check_gnm_args(n, m);
  if (m + 1 > n) throw DomainError("sample_noncomplex requires m <= n - 1");
  GraphSample out;
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(2 * m);
  while (out.report.attempts < max_attempts) {
    ++out.report.attempts;
    switch (detail::draw_multigraph_edges(n, m, gen, edges, seen)) {
      case detail::DrawOutcome::loop: ++out.report.loop; break;
      case detail::DrawOutcome::parallel_edge: ++out.report.parallel_edge; break;
      case detail::DrawOutcome::simple:
        if (detail::has_complex_component(n, edges)) {
          ++out.report.complex_component;
          break;
        }
        out.report.accepted = true;
        out.graph.emplace(n, std::move(edges));
        return out;
    }
  }
  return out;
}

/// A core must occupy [v(C)] with minimum degree 2. Bare cycles are let
/// through so the triangle used in worked examples is accepted; for such a C
/// the result is unicyclic rather than complex.
inline void validate_core(const SimpleGraph& core) {
  if (core.n() < 1) throw ValidationError("core must have at least one vertex");
  for (Vertex v = 1; v <= core.n(); ++v) {
    if (core.degree(v) < 2) throw ValidationError("core vertex " + std::to_string(v) + " has degree < 2");
  }
}

/// Complex graph on [q]: core edges plus the forest edges, the forest's
/// roots being the core vertices.
inline SimpleGraph compose_complex_part(const SimpleGraph& core, const RootedForest& forest) {
  validate_core(core);
  forest.validate();
  if (forest.t != core.n()) throw ValidationError("forest roots must be exactly the core vertices");
  std::vector<Edge> edges = core.edges();
  edges.insert(edges.end(), forest.edges.begin(), forest.edges.end());
  return SimpleGraph(forest.n, std::move(edges));
}

/// Uniform complex graph on [q] with core `core`.
template <std::uniform_random_bit_generator Gen>
SimpleGraph build_complex_part(const SimpleGraph& core, Vertex q, Gen& gen) {
  validate_core(core);
  if (q < core.n() + 1) throw DomainError("build_complex_part requires q >= v(C) + 1");
  return compose_complex_part(core, sample_uniform_forest(q, core.n(), gen));
}

/// The leaf-peeled part equals C. For a genuine core this is the same as
/// two_core(part) == C, since peeling commutes with dropping bare cycles.
inline bool core_preserved(const SimpleGraph& part, const SimpleGraph& core) {
  return peel_leaves(part).edges() == core.edges();
}

}  // namespace planardeg
