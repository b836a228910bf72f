#include "mbbp/reduction.hpp"

#include <algorithm>
#include <vector>

#include "mbbp/error.hpp"
#include "mbbp/exact_search.hpp"

namespace mbbp {

std::size_t peel(bipartite_graph &g, std::size_t omega) {
  std::vector<vertex_id> queue;
  std::vector<std::uint8_t> queued(g.vertex_count(), 0);
  for (vertex_id v : g.alive_vertices()) {
    if (g.degree(v) <= omega) {
      queue.push_back(v);
      queued[v] = 1;
    }
  }
  std::size_t removed = 0;
  while (!queue.empty()) {
    const vertex_id v = queue.back();
    queue.pop_back();
    g.remove_vertex(v);
    ++removed;
    for (vertex_id w : g.adjacency(v)) {
      if (g.alive(w) && !queued[w] && g.degree(w) <= omega) {
        queue.push_back(w);
        queued[w] = 1;
      }
    }
  }
  return removed;
}

exact_reduction reduce_by_exact(bipartite_graph &g, std::size_t omega, std::size_t k,
                                std::chrono::nanoseconds budget) {
  if (k < 1) throw usage_error("reduce_by_exact: K must be at least 1");
  exact_reduction out;
  out.omega = omega;

  auto comps = g.connected_components();
  std::stable_sort(comps.begin(), comps.end(),
                   [](const auto &a, const auto &b) { return a.size() < b.size(); });
  for (const auto &comp : comps) {
    if (comp.size() > k) break;
    const auto sub = g.induced_subgraph(comp);
    const auto res = exact_search(sub.graph, out.omega, budget);
    if (res.improved) {
      out.improved = map_to_parent(*res.improved, sub.to_parent);
      out.omega = res.improved->balanced_size();
    }
    if (res.proven_optimal) {
      for (vertex_id v : comp) g.remove_vertex(v);
      out.removed += comp.size();
    } else {
      ++out.timed_out;
    }
  }
  return out;
}

} // namespace mbbp
