#include "mbbp/bipartite_graph.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "mbbp/error.hpp"

namespace mbbp {

bipartite_graph::bipartite_graph(std::size_t n_u, std::size_t n_v,
                                 std::span<const side_edge> edges)
    : n_u_(n_u), n_v_(n_v) {
  if (n_u + n_v >= std::numeric_limits<vertex_id>::max())
    throw usage_error("bipartite_graph: too many vertices");
  const std::size_t n = n_u + n_v;

  std::vector<std::size_t> raw_deg(n + 1, 0);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto [u, v] = edges[k];
    if (u >= n_u || v >= n_v)
      throw usage_error("bipartite_graph: edge #" + std::to_string(k) + " (" +
                        std::to_string(u) + ", " + std::to_string(v) +
                        ") out of range for sides (" + std::to_string(n_u) + ", " +
                        std::to_string(n_v) + ")");
    ++raw_deg[u];
    ++raw_deg[n_u + v];
  }

  std::vector<std::size_t> raw_off(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) raw_off[i + 1] = raw_off[i] + raw_deg[i];
  std::vector<vertex_id> raw(raw_off[n]);
  std::vector<std::size_t> fill(raw_off.begin(), raw_off.end() - 1);
  for (const auto &[u, v] : edges) {
    raw[fill[u]++] = static_cast<vertex_id>(n_u + v);
    raw[fill[n_u + v]++] = static_cast<vertex_id>(u);
  }

  // Sort and deduplicate each list, compacting into adj_.
  offsets_.assign(n + 1, 0);
  adj_.clear();
  adj_.reserve(raw.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto first = raw.begin() + static_cast<std::ptrdiff_t>(raw_off[i]);
    auto last = raw.begin() + static_cast<std::ptrdiff_t>(raw_off[i + 1]);
    std::sort(first, last);
    last = std::unique(first, last);
    adj_.insert(adj_.end(), first, last);
    offsets_[i + 1] = adj_.size();
  }
  adj_.shrink_to_fit();

  std::size_t u_side_entries = n_u ? offsets_[n_u] : 0;
  edge_count_ = u_side_entries;

  alive_.assign(n, 1);
  live_degree_.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    live_degree_[i] = static_cast<std::uint32_t>(offsets_[i + 1] - offsets_[i]);
  alive_list_.resize(n);
  alive_pos_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    alive_list_[i] = static_cast<vertex_id>(i);
    alive_pos_[i] = static_cast<std::uint32_t>(i);
  }
  alive_u_ = n_u;
}

void bipartite_graph::require_alive(vertex_id v, const char *op) const {
  if (!contains(v))
    throw usage_error(std::string(op) + ": vertex " + std::to_string(v) +
                      " out of range");
  if (!alive_[v])
    throw usage_error(std::string(op) + ": vertex " + std::to_string(v) +
                      " is not alive");
}

std::vector<vertex_id> bipartite_graph::neighbors(vertex_id v) const {
  require_alive(v, "neighbors");
  std::vector<vertex_id> out;
  out.reserve(live_degree_[v]);
  for (vertex_id w : adjacency(v))
    if (alive_[w]) out.push_back(w);
  return out;
}

bool bipartite_graph::has_edge(vertex_id a, vertex_id b) const noexcept {
  if (!contains(a) || !contains(b) || is_u(a) == is_u(b)) return false;
  auto la = adjacency(a);
  auto lb = adjacency(b);
  if (la.size() > lb.size()) {
    std::swap(la, lb);
    std::swap(a, b);
  }
  return std::binary_search(la.begin(), la.end(), b);
}

void bipartite_graph::remove_vertex(vertex_id v) {
  require_alive(v, "remove_vertex");
  alive_[v] = 0;
  for (vertex_id w : adjacency(v))
    if (alive_[w]) --live_degree_[w];
  live_degree_[v] = 0;

  const auto pos = alive_pos_[v];
  const vertex_id last = alive_list_.back();
  alive_list_[pos] = last;
  alive_pos_[last] = pos;
  alive_list_.pop_back();
  if (is_u(v)) --alive_u_;
}

std::optional<std::size_t> bipartite_graph::min_alive_degree() const {
  std::optional<std::size_t> best;
  for (vertex_id v : alive_list_)
    if (!best || live_degree_[v] < *best) best = live_degree_[v];
  return best;
}

std::vector<std::vector<vertex_id>> bipartite_graph::connected_components() const {
  std::vector<std::vector<vertex_id>> comps;
  std::vector<std::uint8_t> seen(vertex_count(), 0);
  std::vector<vertex_id> stack;
  for (vertex_id s = 0; s < vertex_count(); ++s) {
    if (!alive_[s] || seen[s]) continue;
    std::vector<vertex_id> comp;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const vertex_id v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (vertex_id w : adjacency(v)) {
        if (alive_[w] && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

induced_graph bipartite_graph::induced_subgraph(
    std::span<const vertex_id> vs) const {
  std::vector<vertex_id> sorted(vs.begin(), vs.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (vertex_id v : sorted) require_alive(v, "induced_subgraph");

  // U ids precede V ids, so the sorted list is already U-block then V-block.
  const auto split = std::partition_point(sorted.begin(), sorted.end(),
                                          [&](vertex_id v) { return is_u(v); });
  const std::size_t sub_u = static_cast<std::size_t>(split - sorted.begin());
  const std::size_t sub_v = sorted.size() - sub_u;

  std::vector<side_edge> edges;
  for (std::size_t i = 0; i < sub_u; ++i) {
    for (vertex_id w : adjacency(sorted[i])) {
      auto it = std::lower_bound(split, sorted.end(), w);
      if (it != sorted.end() && *it == w)
        edges.emplace_back(i, static_cast<std::size_t>(it - split));
    }
  }
  return {bipartite_graph(sub_u, sub_v, edges), std::move(sorted)};
}

std::vector<side_edge> bipartite_graph::alive_edges() const {
  std::vector<side_edge> out;
  for (vertex_id u = 0; u < n_u_; ++u) {
    if (!alive_[u]) continue;
    for (vertex_id w : adjacency(u))
      if (alive_[w]) out.emplace_back(u, w - n_u_);
  }
  return out;
}

} // namespace mbbp
