#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>

#include "mbbp/biclique.hpp"
#include "mbbp/bipartite_graph.hpp"

namespace mbbp {

struct exact_outcome {
  /// Best biclique strictly larger than the seed bound, if any was found.
  std::optional<biclique> improved;
  /// False iff the budget expired before the search tree was exhausted.
  bool proven_optimal = false;
  /// Number of branch-and-bound node expansions.
  std::uint64_t nodes = 0;
};

struct exact_options {
  /// Disable only to measure the effect of the |A| + |C_A| <= lb cut.
  bool prune = true;
};

/**
 * Branch and bound for the maximum balanced biclique of a compact graph,
 * seeded with lower bound `lb`.
 *
 * The search grows two sets A and B alternately from U and V, keeping
 * |A| = |B| or |A| + 1 = |B|, so |A| is always the balanced size. C_A and C_B
 * hold the vertices adjacent to all of B and all of A respectively. The
 * branch vertex is the smallest id in C_A, and a node is cut when
 * |A| + |C_A| <= lb. The clock is read every 1024 nodes; on expiry the best
 * incumbent so far is returned with proven_optimal = false.
 *
 * Throws usage_error when `g` has removed vertices.
 */
exact_outcome exact_search(const bipartite_graph &g, std::size_t lb,
                           std::chrono::nanoseconds budget = std::chrono::nanoseconds::max(),
                           exact_options options = {});

} // namespace mbbp
