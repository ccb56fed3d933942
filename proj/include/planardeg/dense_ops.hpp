#pragma once

// The degree-raising operation on graphs with isolated vertices and isolated
// edges, and exhaustive counting of the classes P(n, m, k, l, d) it maps
// between.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "planardeg/errors.hpp"
#include "planardeg/graph.hpp"
#include "planardeg/planarity.hpp"

namespace planardeg {

/// Largest order for brute-force edge-subset enumeration (2^21 subsets).
inline constexpr Vertex kEnumerationLimit = 7;

/// Graphs on [n] with m edges, k isolated vertices, l isolated edges and
/// maximum degree d.
struct ClassSignature {
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  std::uint32_t k = 0;
  std::uint32_t l = 0;
  std::uint32_t d = 0;

  friend auto operator<=>(const ClassSignature&, const ClassSignature&) = default;
  friend bool operator==(const ClassSignature&, const ClassSignature&) = default;
};

inline ClassSignature signature(const SimpleGraph& g) {
  const IsolatedCounts iso = isolated_counts(g);
  return {g.n(), static_cast<std::uint32_t>(g.m()), static_cast<std::uint32_t>(iso.vertices),
          static_cast<std::uint32_t>(iso.edges), static_cast<std::uint32_t>(max_degree(g))};
}

/// v1 has maximum degree d, v2 is a neighbour of v1, v3 is isolated, and
/// v4v5, v6v7 are two distinct isolated edges.
struct Witness {
  std::array<Vertex, 7> v{};

  Vertex operator[](std::size_t i) const { return v.at(i - 1); }  // 1-based like v1..v7
  friend auto operator<=>(const Witness&, const Witness&) = default;
  friend bool operator==(const Witness&, const Witness&) = default;
};

namespace detail {

inline std::vector<Edge> isolated_edge_list(const SimpleGraph& g) {
  std::vector<Edge> out;
  for (const Edge& e : g.edges()) {
    if (g.degree(e.u) == 1 && g.degree(e.v) == 1) out.push_back(e);
  }
  return out;
}

inline std::vector<Vertex> isolated_vertex_list(const SimpleGraph& g) {
  std::vector<Vertex> out;
  for (Vertex v = 1; v <= g.n(); ++v) {
    if (g.degree(v) == 0) out.push_back(v);
  }
  return out;
}

}  // namespace detail

inline void validate_witness(const SimpleGraph& g, const Witness& w) {
  for (Vertex x : w.v) {
    if (x < 1 || x > g.n()) throw ValidationError("witness vertex out of range");
  }
  auto sorted = w.v;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ValidationError("witness vertices must be distinct");
  }
  const std::size_t d = max_degree(g);
  if (d == 0) throw ValidationError("witness needs a graph with at least one edge");
  if (g.degree(w[1]) != d) throw ValidationError("v1 must have maximum degree");
  if (!g.has_edge(w[1], w[2])) throw ValidationError("v2 must be adjacent to v1");
  if (g.degree(w[3]) != 0) throw ValidationError("v3 must be isolated");
  auto isolated_edge = [&](Vertex a, Vertex b) { return g.has_edge(a, b) && g.degree(a) == 1 && g.degree(b) == 1; };
  if (!isolated_edge(w[4], w[5]) || !isolated_edge(w[6], w[7])) {
    throw ValidationError("v4v5 and v6v7 must be isolated edges");
  }
}

/// Every witness of g with v4 < v5, v6 < v7 and v4v5 < v6v7, in
/// lexicographic order.
inline std::vector<Witness> all_witnesses(const SimpleGraph& g) {
  std::vector<Witness> out;
  const std::size_t d = max_degree(g);
  if (d == 0) return out;
  const auto iso_v = detail::isolated_vertex_list(g);
  const auto iso_e = detail::isolated_edge_list(g);
  if (iso_v.empty() || iso_e.size() < 2) return out;
  for (Vertex v1 = 1; v1 <= g.n(); ++v1) {
    if (g.degree(v1) != d) continue;
    for (Vertex v2 : g.neighbors(v1)) {
      const Edge own(v1, v2);
      for (Vertex v3 : iso_v) {
        for (std::size_t a = 0; a < iso_e.size(); ++a) {
          if (iso_e[a] == own) continue;
          for (std::size_t b = a + 1; b < iso_e.size(); ++b) {
            if (iso_e[b] == own) continue;
            out.push_back({{v1, v2, v3, iso_e[a].u, iso_e[a].v, iso_e[b].u, iso_e[b].v}});
          }
        }
      }
    }
  }
  return out;
}

/// Lexicographically smallest witness, if any.
inline std::optional<Witness> find_witness(const SimpleGraph& g) {
  const std::size_t d = max_degree(g);
  if (d == 0) return std::nullopt;
  const auto iso_v = detail::isolated_vertex_list(g);
  const auto iso_e = detail::isolated_edge_list(g);
  if (iso_v.empty() || iso_e.size() < 2) return std::nullopt;
  // Choices are independent once v1v2 is excluded from the isolated edges,
  // so the greedy choice at each position is the lexicographic minimum.
  for (Vertex v1 = 1; v1 <= g.n(); ++v1) {
    if (g.degree(v1) != d) continue;
    for (Vertex v2 : g.neighbors(v1)) {
      const Edge own(v1, v2);
      std::vector<Edge> usable;
      for (const Edge& e : iso_e) {
        if (e != own) usable.push_back(e);
      }
      if (usable.size() < 2) continue;
      return Witness{{v1, v2, iso_v.front(), usable[0].u, usable[0].v, usable[1].u, usable[1].v}};
    }
  }
  return std::nullopt;
}

/// Delete v4v5 and v6v7, add v1v3 and v2v3.
inline SimpleGraph apply_transformation(const SimpleGraph& g, const Witness& w) {
  validate_witness(g, w);
  const Edge drop1(w[4], w[5]), drop2(w[6], w[7]);
  std::vector<Edge> edges;
  edges.reserve(g.m());
  for (const Edge& e : g.edges()) {
    if (e != drop1 && e != drop2) edges.push_back(e);
  }
  edges.emplace_back(w[1], w[3]);
  edges.emplace_back(w[2], w[3]);
  return SimpleGraph(g.n(), std::move(edges));
}

/// Distinct graphs reachable from g by one application of the operation.
inline std::set<std::vector<Edge>> forward_images(const SimpleGraph& g) {
  std::set<std::vector<Edge>> out;
  for (const Witness& w : all_witnesses(g)) out.insert(apply_transformation(g, w).edges());
  return out;
}

/// Distinct graphs H with signature (k'-3, l'+2, d'-1) that map onto `image`.
inline std::set<std::vector<Edge>> preimages(const SimpleGraph& image) {
  std::set<std::vector<Edge>> out;
  const ClassSignature target = signature(image);
  if (target.k < 3 || target.d < 2) return out;
  const ClassSignature source{target.n, target.m, target.k - 3, target.l + 2, target.d - 1};
  const auto iso = detail::isolated_vertex_list(image);
  for (Vertex v1 = 1; v1 <= image.n(); ++v1) {
    if (image.degree(v1) != target.d) continue;
    for (Vertex v3 : image.neighbors(v1)) {
      if (image.degree(v3) != 2) continue;
      const auto nb = image.neighbors(v3);
      const Vertex v2 = nb[0] == v1 ? nb[1] : nb[0];
      if (!image.has_edge(v1, v2)) continue;
      for (std::size_t a = 0; a < iso.size(); ++a) {
        for (std::size_t b = a + 1; b < iso.size(); ++b) {
          for (std::size_t c = b + 1; c < iso.size(); ++c) {
            for (std::size_t e = c + 1; e < iso.size(); ++e) {
              const std::array<std::array<Vertex, 4>, 3> pairings{{{iso[a], iso[b], iso[c], iso[e]},
                                                                    {iso[a], iso[c], iso[b], iso[e]},
                                                                    {iso[a], iso[e], iso[b], iso[c]}}};
              for (const auto& p : pairings) {
                std::vector<Edge> edges;
                for (const Edge& x : image.edges()) {
                  if (x != Edge(v1, v3) && x != Edge(v2, v3)) edges.push_back(x);
                }
                edges.emplace_back(p[0], p[1]);
                edges.emplace_back(p[2], p[3]);
                SimpleGraph h(image.n(), std::move(edges));
                if (signature(h) != source) continue;
                const Witness w{{v1, v2, v3, p[0], p[1], p[2], p[3]}};
                if (apply_transformation(h, w) == image) out.insert(h.edges());
              }
            }
          }
        }
      }
    }
  }
  return out;
}

using ClassTable = std::map<ClassSignature, std::uint64_t>;

namespace detail {

inline std::vector<Edge> all_pairs(Vertex n) {
  std::vector<Edge> pairs;
  for (Vertex u = 1; u <= n; ++u) {
    for (Vertex v = u + 1; v <= n; ++v) pairs.emplace_back(u, v);
  }
  return pairs;
}

// Edge set selected by a bit mask over all_pairs(n).
inline std::vector<Edge> edges_of_mask(const std::vector<Edge>& pairs, std::uint64_t mask) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (mask >> i & 1U) edges.push_back(pairs[i]);
  }
  return edges;
}

// Signature of the graph given by `mask`, computed from degree counts only.
inline ClassSignature mask_signature(Vertex n, const std::vector<Edge>& pairs, std::uint64_t mask) {
  std::array<std::uint32_t, 64> deg{};
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (mask >> i & 1U) {
      ++deg[pairs[i].u];
      ++deg[pairs[i].v];
      ++m;
    }
  }
  ClassSignature s{n, m, 0, 0, 0};
  for (Vertex v = 1; v <= n; ++v) {
    s.k += deg[v] == 0;
    s.d = std::max(s.d, deg[v]);
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if ((mask >> i & 1U) && deg[pairs[i].u] == 1 && deg[pairs[i].v] == 1) ++s.l;
  }
  return s;
}

inline unsigned resolve_jobs(unsigned jobs) {
  if (jobs == 0) jobs = std::thread::hardware_concurrency();
  return std::max(1U, jobs);
}

}  // namespace detail

/// Counts of every class P(n, m, k, l, d) over all labeled graphs on [n]
/// (planar graphs only when `planar_only`). The subset space is split into
/// `jobs` disjoint ranges; partial tables are merged by addition.
inline ClassTable class_table(Vertex n, bool planar_only, unsigned jobs = 0) {
  if (n > kEnumerationLimit) {
    throw LimitExceeded("exhaustive enumeration is limited to n <= " + std::to_string(kEnumerationLimit));
  }
  const auto pairs = detail::all_pairs(n);
  const std::uint64_t total = std::uint64_t{1} << pairs.size();
  jobs = static_cast<unsigned>(std::min<std::uint64_t>(detail::resolve_jobs(jobs), total));
  std::vector<ClassTable> partial(jobs);
  auto work = [&](unsigned j) {
    const std::uint64_t begin = total * j / jobs, end = total * (j + 1) / jobs;
    for (std::uint64_t mask = begin; mask < end; ++mask) {
      const ClassSignature s = detail::mask_signature(n, pairs, mask);
      if (planar_only && s.m >= 9 && !is_planar(SimpleGraph(n, detail::edges_of_mask(pairs, mask)))) continue;
      ++partial[j][s];
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::jthread> threads;
    for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(work, j);
  }
  ClassTable merged;
  for (const auto& t : partial) {
    for (const auto& [s, c] : t) merged[s] += c;
  }
  return merged;
}

/// |P(n, m, k, l, d)| by brute force over edge subsets with exactly m edges.
inline std::uint64_t enumerate_class(Vertex n, std::uint32_t m, std::uint32_t k, std::uint32_t l, std::uint32_t d,
                                     bool planar_only) {
  if (n > kEnumerationLimit) {
    throw LimitExceeded("exhaustive enumeration is limited to n <= " + std::to_string(kEnumerationLimit));
  }
  const auto pairs = detail::all_pairs(n);
  if (m > pairs.size()) return 0;
  const ClassSignature want{n, m, k, l, d};
  std::uint64_t count = 0;
  // Gosper's hack walks the subsets of size m in increasing order.
  const std::uint64_t limit = std::uint64_t{1} << pairs.size();
  std::uint64_t mask = m == 0 ? 0 : (std::uint64_t{1} << m) - 1;
  while (mask < limit) {
    if (detail::mask_signature(n, pairs, mask) == want &&
        (!planar_only || m < 9 || is_planar(SimpleGraph(n, detail::edges_of_mask(pairs, mask))))) {
      ++count;
    }
    if (mask == 0) break;
    const std::uint64_t low = mask & (~mask + 1);
    const std::uint64_t ripple = mask + low;
    mask = (((ripple ^ mask) >> 2) / low) | ripple;
  }
  return count;
}

using ExactCount = boost::multiprecision::cpp_int;

/// Counts of graphs on r labeled vertices without isolated vertices or
/// isolated edges, by (edges, maximum degree). Brute force, r <= 7.
class RestTable {
 public:
  RestTable(Vertex r, bool planar_only) : r_(r) {
    if (r > kEnumerationLimit) {
      throw LimitExceeded("rest table is limited to r <= " + std::to_string(kEnumerationLimit));
    }
    for (const auto& [s, c] : class_table(r, planar_only)) {
      if (s.k == 0 && s.l == 0) counts_[{s.m, s.d}] += c;
    }
  }

  std::uint64_t count(std::uint32_t m, std::uint32_t d) const {
    if (r_ == 0) return m == 0 && d == 0 ? 1 : 0;
    const auto it = counts_.find({m, d});
    return it == counts_.end() ? 0 : it->second;
  }

 private:
  Vertex r_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> counts_;
};

namespace detail {

inline ExactCount binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  ExactCount r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// (2l - 1)!! perfect matchings of 2l labeled points.
inline ExactCount matchings(std::uint64_t l) {
  ExactCount r = 1;
  for (std::uint64_t i = 1; i <= l; ++i) r *= 2 * i - 1;
  return r;
}

}  // namespace detail

/// |P(n, m, k, l, d)| by splitting a graph into its k isolated vertices, its
/// l isolated edges, and the rest (no isolated vertices or edges) on
/// r = n - k - 2l vertices. Exact for any n with r <= 7; planarity depends
/// only on the rest.
class StructuredCounter {
 public:
  explicit StructuredCounter(bool planar_only) : planar_only_(planar_only) {}

  ExactCount count(const ClassSignature& s) {
    if (static_cast<std::uint64_t>(s.k) + 2ULL * s.l > s.n) return 0;
    const Vertex r = s.n - s.k - 2 * s.l;
    if (s.m < s.l) return 0;
    std::uint64_t rest = 0;
    if (r == 0) {
      rest = (s.m == s.l && s.d == (s.l > 0 ? 1U : 0U)) ? 1 : 0;
    } else {
      // A nonempty rest has all components on >= 3 vertices, so its maximum
      // degree (>= 2) is the maximum degree of the whole graph.
      rest = table(r).count(s.m - s.l, s.d);
    }
    if (rest == 0) return 0;
    return detail::binomial(s.n, s.k) * detail::binomial(s.n - s.k, 2ULL * s.l) * detail::matchings(s.l) * rest;
  }

 private:
  const RestTable& table(Vertex r) {
    auto it = tables_.find(r);
    if (it == tables_.end()) it = tables_.emplace(r, RestTable(r, planar_only_)).first;
    return it->second;
  }

  bool planar_only_;
  std::map<Vertex, RestTable> tables_;
};

struct RatioCheck {
  ClassSignature source;
  ExactCount count_src = 0;
  ExactCount count_dst = 0;
  double bound = 0;    // 1 / (8 k^3)
  bool vacuous = false;  // source class empty
  bool holds = false;
};

namespace detail {

inline void check_ratio_hypotheses(std::uint32_t k, std::uint32_t l, std::uint32_t d) {
  if (l < 2) throw DomainError("ratio bound requires l >= 2");
  if (d < 3) throw DomainError("ratio bound requires d >= 3");
  if (k < 1) throw DomainError("ratio bound requires k >= 1");
}

inline RatioCheck ratio_from_counts(const ClassSignature& s, ExactCount src, ExactCount dst) {
  RatioCheck r{s, src, dst, 1.0 / (8.0 * s.k * s.k * s.k), src == 0, false};
  // dst / src >= 1 / (8 k^3)  <=>  8 k^3 dst >= src, exact in integers.
  r.holds = r.vacuous || ExactCount(8) * s.k * s.k * s.k * dst >= src;
  return r;
}

}  // namespace detail

/// Checks |P(n,m,k+3,l-2,d+1)| / |P(n,m,k,l,d)| >= 1/(8k^3) by brute force.
inline RatioCheck verify_ratio_bound(Vertex n, std::uint32_t m, std::uint32_t k, std::uint32_t l, std::uint32_t d,
                                     bool planar_only) {
  detail::check_ratio_hypotheses(k, l, d);
  const ExactCount src = enumerate_class(n, m, k, l, d, planar_only);
  const ExactCount dst = enumerate_class(n, m, k + 3, l - 2, d + 1, planar_only);
  return detail::ratio_from_counts({n, m, k, l, d}, src, dst);
}

/// Largest order accepted by sweep_ratio: with k >= 1 and l >= 2 the rest of
/// a target graph has n - k - 2l + 1 <= n - 4 vertices.
inline constexpr Vertex kRatioSweepLimit = kEnumerationLimit + 4;

/// Every signature with k >= 1, l >= 2, d >= 3 whose source class is
/// nonempty, checked against the bound. Brute force for n <= 7, the
/// structured counter for 8 <= n <= 11.
inline std::vector<RatioCheck> sweep_ratio(Vertex n, bool planar_only, unsigned jobs = 0) {
  if (n > kRatioSweepLimit) {
    throw LimitExceeded("ratio sweep is limited to n <= " + std::to_string(kRatioSweepLimit));
  }
  std::vector<RatioCheck> out;
  if (n <= kEnumerationLimit) {
    const ClassTable table = class_table(n, planar_only, jobs);
    auto lookup = [&](const ClassSignature& s) -> std::uint64_t {
      const auto it = table.find(s);
      return it == table.end() ? 0 : it->second;
    };
    for (const auto& [s, c] : table) {
      if (s.k < 1 || s.l < 2 || s.d < 3) continue;
      out.push_back(detail::ratio_from_counts(s, c, lookup({s.n, s.m, s.k + 3, s.l - 2, s.d + 1})));
    }
    return out;
  }
  StructuredCounter counter(planar_only);
  const std::uint32_t max_m = n * (n - 1) / 2;
  for (std::uint32_t k = 1; k <= n; ++k) {
    for (std::uint32_t l = 2; k + 2 * l <= n; ++l) {
      const Vertex r = n - k - 2 * l;
      for (std::uint32_t d = 3; d < std::max<std::uint32_t>(r, 1); ++d) {
        for (std::uint32_t m = l; m <= max_m; ++m) {
          const ClassSignature s{n, m, k, l, d};
          const ExactCount src = counter.count(s);
          if (src == 0) continue;
          out.push_back(detail::ratio_from_counts(s, src, counter.count({n, m, k + 3, l - 2, d + 1})));
        }
      }
    }
  }
  return out;
}

}  // namespace planardeg
