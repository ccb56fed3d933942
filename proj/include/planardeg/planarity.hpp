#pragma once

// Exact planarity test for small graphs.
//
// Each biconnected block is embedded by path addition (Demoucron, Malgrange,
// Pertuiset): start from a cycle, repeatedly pick a fragment (bridge) of the
// unembedded part, and route one of its attachment-to-attachment paths
// through a face that contains all of its attachments. A fragment with no
// such face certifies a Kuratowski subdivision, i.e. the block is not planar.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "planardeg/errors.hpp"
#include "planardeg/graph.hpp"

namespace planardeg {

/// Largest graph order accepted by is_planar.
inline constexpr Vertex kPlanarityLimit = 12;

namespace detail {

// Blocks (maximal 2-connected subgraphs and bridges) as edge lists.
inline std::vector<std::vector<Edge>> biconnected_blocks(const SimpleGraph& g) {
  const Vertex n = g.n();
  std::vector<int> disc(n + 1, 0), low(n + 1, 0);
  std::vector<Edge> stack;
  std::vector<std::vector<Edge>> blocks;
  int timer = 0;

  std::function<void(Vertex, Vertex)> dfs = [&](Vertex v, Vertex parent) {
    disc[v] = low[v] = ++timer;
    for (Vertex w : g.neighbors(v)) {
      if (w == parent) continue;
      if (disc[w] == 0) {
        stack.emplace_back(v, w);
        dfs(w, v);
        low[v] = std::min(low[v], low[w]);
        if (low[w] >= disc[v]) {
          std::vector<Edge> block;
          const Edge cut(v, w);
          for (;;) {
            const Edge e = stack.back();
            stack.pop_back();
            block.push_back(e);
            if (e == cut) break;
          }
          blocks.push_back(std::move(block));
        }
      } else if (disc[w] < disc[v]) {
        stack.emplace_back(v, w);
        low[v] = std::min(low[v], disc[w]);
      }
    }
  };
  for (Vertex v = 1; v <= n; ++v) {
    if (disc[v] == 0) dfs(v, 0);
  }
  return blocks;
}

struct Fragment {
  std::vector<int> attachments;  // embedded vertices, sorted
  std::vector<int> inner;        // unembedded vertices (empty for a chord)
};

// Path-addition planarity test for one 2-connected block.
inline bool block_is_planar(const std::vector<Edge>& block) {
  std::vector<Vertex> labels;
  for (const Edge& e : block) {
    labels.push_back(e.u);
    labels.push_back(e.v);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  const int b = static_cast<int>(labels.size());
  if (b < 5 || block.size() < 9) return true;  // smallest non-planar graph is K3,3 (9 edges)
  if (static_cast<long>(block.size()) > 3L * b - 6) return false;

  auto local = [&](Vertex v) {
    return static_cast<int>(std::lower_bound(labels.begin(), labels.end(), v) - labels.begin());
  };
  std::vector<std::vector<int>> adj(b);
  std::vector<std::vector<char>> edge(b, std::vector<char>(b, 0)), done(b, std::vector<char>(b, 0));
  for (const Edge& e : block) {
    const int u = local(e.u), v = local(e.v);
    adj[u].push_back(v);
    adj[v].push_back(u);
    edge[u][v] = edge[v][u] = 1;
  }

  // Initial cycle from the first back edge of a DFS.
  std::vector<int> parent(b, -1), depth(b, -1);
  std::vector<int> cycle;
  std::function<bool(int)> find_cycle = [&](int v) {
    for (int w : adj[v]) {
      if (depth[w] < 0) {
        parent[w] = v;
        depth[w] = depth[v] + 1;
        if (find_cycle(w)) return true;
      } else if (w != parent[v] && depth[w] < depth[v]) {
        for (int x = v; x != w; x = parent[x]) cycle.push_back(x);
        cycle.push_back(w);
        return true;
      }
    }
    return false;
  };
  depth[0] = 0;
  find_cycle(0);

  std::vector<char> embedded(b, 0);
  std::size_t embedded_edges = 0;
  auto embed_edge = [&](int u, int v) {
    done[u][v] = done[v][u] = 1;
    ++embedded_edges;
  };
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    embedded[cycle[i]] = 1;
    embed_edge(cycle[i], cycle[(i + 1) % cycle.size()]);
  }
  std::vector<std::vector<int>> faces{cycle, std::vector<int>(cycle.rbegin(), cycle.rend())};

  while (embedded_edges < block.size()) {
    std::vector<Fragment> fragments;
    for (int u = 0; u < b; ++u) {
      for (int v = u + 1; v < b; ++v) {
        if (edge[u][v] && !done[u][v] && embedded[u] && embedded[v]) fragments.push_back({{u, v}, {}});
      }
    }
    std::vector<char> seen(b, 0);
    for (int s = 0; s < b; ++s) {
      if (embedded[s] || seen[s]) continue;
      Fragment f;
      std::vector<int> todo{s};
      seen[s] = 1;
      while (!todo.empty()) {
        const int v = todo.back();
        todo.pop_back();
        f.inner.push_back(v);
        for (int w : adj[v]) {
          if (embedded[w]) {
            f.attachments.push_back(w);
          } else if (!seen[w]) {
            seen[w] = 1;
            todo.push_back(w);
          }
        }
      }
      std::sort(f.attachments.begin(), f.attachments.end());
      f.attachments.erase(std::unique(f.attachments.begin(), f.attachments.end()), f.attachments.end());
      fragments.push_back(std::move(f));
    }

    auto admissible = [&](const Fragment& f) {
      std::vector<std::size_t> ok;
      for (std::size_t i = 0; i < faces.size(); ++i) {
        const auto& face = faces[i];
        const bool all = std::all_of(f.attachments.begin(), f.attachments.end(), [&](int a) {
          return std::find(face.begin(), face.end(), a) != face.end();
        });
        if (all) ok.push_back(i);
      }
      return ok;
    };

    std::size_t pick = fragments.size();
    std::size_t face_index = 0;
    for (std::size_t i = 0; i < fragments.size(); ++i) {
      const auto ok = admissible(fragments[i]);
      if (ok.empty()) return false;
      if (ok.size() == 1) {
        pick = i;
        face_index = ok.front();
        break;
      }
      if (pick == fragments.size()) {
        pick = i;
        face_index = ok.front();
      }
    }
    const Fragment& frag = fragments[pick];
    if (frag.attachments.size() < 2) throw std::logic_error("block_is_planar: input is not 2-connected");

    // Path between two distinct attachments through the fragment.
    std::vector<int> path;
    if (frag.inner.empty()) {
      path = frag.attachments;
    } else {
      const int a = frag.attachments.front();
      std::vector<int> prev(b, -2);
      std::vector<int> bfs;
      std::vector<char> mine(b, 0);
      for (int x : frag.inner) mine[x] = 1;
      for (int c : adj[a]) {
        if (mine[c] && prev[c] == -2) {
          prev[c] = -1;
          bfs.push_back(c);
        }
      }
      int end_inner = -1, end_attach = -1;
      for (std::size_t head = 0; head < bfs.size() && end_inner < 0; ++head) {
        const int x = bfs[head];
        for (int w : adj[x]) {
          if (embedded[w] && w != a) {
            end_inner = x;
            end_attach = w;
            break;
          }
          if (!embedded[w] && prev[w] == -2) {
            prev[w] = x;
            bfs.push_back(w);
          }
        }
      }
      if (end_inner < 0) throw std::logic_error("block_is_planar: fragment has a single attachment");
      std::vector<int> interior;
      for (int x = end_inner; x != -1; x = prev[x]) interior.push_back(x);
      std::reverse(interior.begin(), interior.end());
      path.push_back(a);
      path.insert(path.end(), interior.begin(), interior.end());
      path.push_back(end_attach);
    }

    // Split the chosen face along the path.
    const std::vector<int> face = faces[face_index];
    const int a = path.front(), z = path.back();
    const std::size_t len = face.size();
    const std::size_t ia = static_cast<std::size_t>(std::find(face.begin(), face.end(), a) - face.begin());
    const std::size_t iz = static_cast<std::size_t>(std::find(face.begin(), face.end(), z) - face.begin());
    std::vector<int> first, second;
    for (std::size_t i = ia;; i = (i + 1) % len) {
      first.push_back(face[i]);
      if (i == iz) break;
    }
    for (std::size_t i = path.size() - 2; i >= 1; --i) first.push_back(path[i]);
    for (std::size_t i = iz;; i = (i + 1) % len) {
      second.push_back(face[i]);
      if (i == ia) break;
    }
    for (std::size_t i = 1; i + 1 < path.size(); ++i) second.push_back(path[i]);
    faces[face_index] = std::move(first);
    faces.push_back(std::move(second));

    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      embedded[path[i]] = 1;
      embed_edge(path[i], path[i + 1]);
    }
    embedded[path.back()] = 1;
  }
  return true;
}

}  // namespace detail

/// True iff g has no subdivision of K5 or K3,3. Refuses graphs with more than
/// kPlanarityLimit vertices.
inline bool is_planar(const SimpleGraph& g) {
  if (g.n() > kPlanarityLimit) {
    throw LimitExceeded("is_planar is limited to graphs with at most " + std::to_string(kPlanarityLimit) +
                        " vertices (got " + std::to_string(g.n()) + ")");
  }
  if (g.m() < 9) return true;
  for (const VertexSet& comp : components(g)) {
    if (comp.size() < 5) continue;
    std::size_t twice_m = 0;
    for (Vertex v : comp) twice_m += g.degree(v);
    if (twice_m / 2 > 3 * comp.size() - 6) return false;
  }
  for (const auto& block : detail::biconnected_blocks(g)) {
    if (!detail::block_is_planar(block)) return false;
  }
  return true;
}

}  // namespace planardeg
