#pragma once

// Shared graphs and the brute-force oracle used across the test suites.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "mbbp/bipartite_graph.hpp"

namespace fixtures {

using mbbp::bipartite_graph;
using mbbp::side_edge;
using mbbp::vertex_id;

struct edge_list {
  std::size_t n_u = 0;
  std::size_t n_v = 0;
  std::vector<side_edge> edges;

  bipartite_graph graph() const { return bipartite_graph(n_u, n_v, edges); }
};

/// K3,3 minus (u3, v3). Ids: u1..u3 = 0..2, v1..v3 = 3..5.
inline edge_list t1() {
  edge_list e{3, 3, {}};
  for (std::size_t u = 0; u < 3; ++u)
    for (std::size_t v = 0; v < 3; ++v)
      if (!(u == 2 && v == 2)) e.edges.emplace_back(u, v);
  return e;
}

inline edge_list complete(std::size_t a, std::size_t b) {
  edge_list e{a, b, {}};
  for (std::size_t u = 0; u < a; ++u)
    for (std::size_t v = 0; v < b; ++v) e.edges.emplace_back(u, v);
  return e;
}

/// Disjoint union; the second graph's side indices are shifted past the first.
inline edge_list disjoint_union(const edge_list &a, const edge_list &b) {
  edge_list e{a.n_u + b.n_u, a.n_v + b.n_v, a.edges};
  for (auto [u, v] : b.edges) e.edges.emplace_back(u + a.n_u, v + a.n_v);
  return e;
}

/**
 * An 8-vertex, 13-edge graph consistent with the illustration of the
 * definitions: U = {1,2,3,4}, V = {5,6,7,8} (labels 1-based, ids 0..7),
 * N(1) = {5,6,8}, N(5) = {1,2,3,4}, ({1,2,3},{5,6}) a biclique whose
 * neighbourhood is {4,7,8}. Only those facts are asserted in tests; the
 * remaining edges are filler.
 */
inline edge_list figure1() {
  // (label_u, label_v) with U labels 1..4 and V labels 5..8.
  const std::pair<int, int> labelled[] = {{1, 5}, {1, 6}, {1, 8}, {2, 5}, {2, 6},
                                          {2, 7}, {3, 5}, {3, 6}, {3, 7}, {3, 8},
                                          {4, 5}, {4, 7}, {4, 8}};
  edge_list e{4, 4, {}};
  for (auto [u, v] : labelled)
    e.edges.emplace_back(static_cast<std::size_t>(u - 1), static_cast<std::size_t>(v - 5));
  return e;
}

/// Label 1..8 of figure1() to vertex id.
inline vertex_id fig_id(int label) { return static_cast<vertex_id>(label - 1); }

inline edge_list random_graph(std::size_t n_u, std::size_t n_v, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  edge_list e{n_u, n_v, {}};
  for (std::size_t u = 0; u < n_u; ++u)
    for (std::size_t v = 0; v < n_v; ++v)
      if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < p) e.edges.emplace_back(u, v);
  return e;
}

/**
 * Maximum balanced size by enumerating every pair (X, Y) of subsets with
 * X ⊆ U and Y ⊆ V, restricted to vertices for which `alive` holds. Sides
 * are limited to 16 vertices.
 */
inline std::size_t brute_force_mbb(const edge_list &e,
                                   const std::function<bool(vertex_id)> &alive = {}) {
  const auto is_alive = [&](vertex_id v) { return !alive || alive(v); };
  std::vector<std::uint32_t> adj(e.n_u, 0);
  for (auto [u, v] : e.edges) adj[u] |= 1u << v;
  std::uint32_t alive_u = 0, alive_v = 0;
  for (std::size_t u = 0; u < e.n_u; ++u)
    if (is_alive(static_cast<vertex_id>(u))) alive_u |= 1u << u;
  for (std::size_t v = 0; v < e.n_v; ++v)
    if (is_alive(static_cast<vertex_id>(e.n_u + v))) alive_v |= 1u << v;

  std::size_t best = 0;
  for (std::uint32_t xm = 0; xm < (1u << e.n_u); ++xm) {
    if (xm & ~alive_u) continue;
    for (std::uint32_t ym = 0; ym < (1u << e.n_v); ++ym) {
      if (ym & ~alive_v) continue;
      bool complete = true;
      for (std::size_t u = 0; u < e.n_u && complete; ++u)
        if ((xm >> u) & 1u) complete = (ym & ~adj[u]) == 0;
      if (complete)
        best = std::max<std::size_t>(best, std::min(std::popcount(xm), std::popcount(ym)));
    }
  }
  return best;
}

/// Corpus of small random graphs: sides up to 7, densities 0.2 / 0.5 / 0.8.
inline std::vector<edge_list> small_corpus(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double densities[] = {0.2, 0.5, 0.8};
  std::vector<edge_list> out;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n_u = 1 + rng() % 7;
    const std::size_t n_v = 1 + rng() % 7;
    out.push_back(random_graph(n_u, n_v, densities[i % 3], rng()));
  }
  return out;
}

} // namespace fixtures
