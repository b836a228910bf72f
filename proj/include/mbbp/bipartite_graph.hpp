#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace mbbp {

/// Global vertex index. Ids [0, n_u) are the U side, [n_u, n_u + n_v) the V side.
using vertex_id = std::uint32_t;

/// Edge given by side-local indices: first in [0, n_u), second in [0, n_v).
using side_edge = std::pair<std::size_t, std::size_t>;

/**
 * Bipartite graph G = (U, V, E) stored as sorted adjacency lists.
 *
 * Vertices are never physically deleted. remove_vertex() flips an alive flag
 * and decrements the live degree of the alive neighbours, so ids stay stable
 * for the lifetime of the graph. A compact copy of any alive subset is
 * available through induced_subgraph().
 */
struct induced_graph;

class bipartite_graph {
public:
  bipartite_graph() = default;

  /// Duplicate edges are collapsed. Throws usage_error on an out-of-range
  /// endpoint, naming the offending edge.
  bipartite_graph(std::size_t n_u, std::size_t n_v, std::span<const side_edge> edges);

  std::size_t n_u() const noexcept { return n_u_; }
  std::size_t n_v() const noexcept { return n_v_; }
  std::size_t vertex_count() const noexcept { return n_u_ + n_v_; }
  /// Deduplicated edge count at construction.
  std::size_t edge_count() const noexcept { return edge_count_; }

  bool is_u(vertex_id v) const noexcept { return v < n_u_; }
  bool is_v(vertex_id v) const noexcept { return v >= n_u_; }
  vertex_id u_id(std::size_t i) const noexcept { return static_cast<vertex_id>(i); }
  vertex_id v_id(std::size_t j) const noexcept { return static_cast<vertex_id>(n_u_ + j); }
  /// Index of v within its own side.
  std::size_t side_index(vertex_id v) const noexcept { return is_u(v) ? v : v - n_u_; }

  bool contains(vertex_id v) const noexcept { return v < vertex_count(); }
  bool alive(vertex_id v) const noexcept { return contains(v) && alive_[v]; }
  std::size_t degree(vertex_id v) const noexcept { return live_degree_[v]; }

  /// Every neighbour recorded at construction, dead or alive, ascending.
  std::span<const vertex_id> adjacency(vertex_id v) const noexcept {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }

  /// Alive neighbours of an alive vertex, ascending.
  std::vector<vertex_id> neighbors(vertex_id v) const;

  /// Edge test on construction-time adjacency (ignores alive flags).
  bool has_edge(vertex_id a, vertex_id b) const noexcept;

  void remove_vertex(vertex_id v);

  std::size_t alive_count() const noexcept { return alive_list_.size(); }
  std::size_t alive_u_count() const noexcept { return alive_u_; }
  std::size_t alive_v_count() const noexcept { return alive_list_.size() - alive_u_; }
  /// True when no vertex has been removed.
  bool compact() const noexcept { return alive_list_.size() == vertex_count(); }

  /// Alive vertices in unspecified but deterministic order.
  std::span<const vertex_id> alive_vertices() const noexcept { return alive_list_; }

  std::optional<std::size_t> min_alive_degree() const;

  /// Maximal connected sets of alive vertices, each sorted ascending, ordered
  /// by smallest contained id. Isolated vertices are singletons.
  std::vector<std::vector<vertex_id>> connected_components() const;

  /// Compact re-indexed copy on the alive vertices `vs`. Relative id order
  /// is preserved on each side.
  induced_graph induced_subgraph(std::span<const vertex_id> vs) const;

  /// Edges between alive vertices, as side-local index pairs sorted by (u, v).
  std::vector<side_edge> alive_edges() const;

private:
  void require_alive(vertex_id v, const char *op) const;

  std::size_t n_u_ = 0;
  std::size_t n_v_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<vertex_id> adj_;
  std::vector<std::uint8_t> alive_;
  std::vector<std::uint32_t> live_degree_;
  std::vector<vertex_id> alive_list_;
  std::vector<std::uint32_t> alive_pos_;
  std::size_t alive_u_ = 0;
};

struct induced_graph {
  bipartite_graph graph;
  /// Subgraph id -> id in the parent graph.
  std::vector<vertex_id> to_parent;
};

} // namespace mbbp
