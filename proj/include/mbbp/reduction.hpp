#pragma once

#include <chrono>
#include <cstddef>
#include <optional>

#include "mbbp/biclique.hpp"
#include "mbbp/bipartite_graph.hpp"

namespace mbbp {

/// Removes, by cascade, every vertex whose live degree is at most `omega`.
/// Afterwards each alive vertex has degree > omega. Returns the number removed.
std::size_t peel(bipartite_graph &g, std::size_t omega);

struct exact_reduction {
  /// Vertices removed because their component was solved to optimality.
  std::size_t removed = 0;
  /// Largest biclique found above the incoming omega, in the ids of `g`.
  std::optional<biclique> improved;
  /// omega after all components were processed.
  std::size_t omega = 0;
  /// Components whose exact search ran out of time (left in place).
  std::size_t timed_out = 0;
};

/**
 * Solves every connected component with at most `k` vertices exactly and
 * deletes it from `g` when optimality is proven.
 *
 * Components are visited in ascending size. Each improvement raises the bound
 * passed to later searches. A component whose search times out is kept, but
 * any incumbent it produced still counts as an improvement.
 */
exact_reduction reduce_by_exact(bipartite_graph &g, std::size_t omega, std::size_t k,
                                std::chrono::nanoseconds budget);

} // namespace mbbp
