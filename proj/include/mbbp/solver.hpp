#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "mbbp/biclique.hpp"
#include "mbbp/bipartite_graph.hpp"
#include "mbbp/random.hpp"
#include "mbbp/tabu_search.hpp"

namespace mbbp {

enum class reduction_variant { none, peel, peel_exact };

std::string_view to_string(reduction_variant v) noexcept;
/// Accepts "none", "peel", "peel+exact".
std::optional<reduction_variant> parse_reduction_variant(std::string_view s) noexcept;

struct solver_params {
  std::size_t depth = 1000;  ///< L
  double alpha = 0.30;
  bool swap_escape = true;   ///< see tabu_params::swap_escape
  std::size_t k = 100;       ///< exact-reduction component size threshold
  std::chrono::duration<double> exact_budget{10.0};
  std::chrono::duration<double> time_limit{30.0};
  std::optional<std::uint64_t> max_restarts;
  unbalance_variant unbalance = unbalance_variant::bound2;
  reduction_variant reduction = reduction_variant::peel_exact;
  std::uint64_t seed = 0;

  /// L = 1000, alpha = 0.30, K = 100: tuned for dense random graphs.
  static solver_params dense();
  /// L = 100, alpha = 1.74, K = 500: tuned for large sparse networks.
  static solver_params sparse();

  /// Throws usage_error when a field is out of range.
  void validate() const;
};

struct run_report {
  biclique best;               ///< strictly balanced, original ids
  std::size_t omega = 0;
  bool proven_optimal = false;
  double time_to_best = 0.0;   ///< seconds
  double total_time = 0.0;     ///< seconds
  std::uint64_t restarts = 0;
  std::size_t removed_by_peel = 0;
  std::size_t removed_by_exact = 0;
};

/// Equality ignoring the wall-clock fields.
bool same_outcome(const run_report &a, const run_report &b);

/// Grows a biclique from a random alive vertex, alternately adding a random
/// common neighbour to the opposite side until the current candidate set is
/// empty. The result has balance deviation at most 1.
/// Throws usage_error when g has no alive vertex.
biclique random_init_solution(const bipartite_graph &g, rng_t &rng);

/// Restarted tabu search with graph reduction on a private copy of `g`.
/// Stops on the time limit, the restart cap or a proof of optimality.
run_report solve(const bipartite_graph &g, const solver_params &params);

} // namespace mbbp
