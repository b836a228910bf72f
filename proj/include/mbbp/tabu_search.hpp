#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mbbp/biclique.hpp"
#include "mbbp/bipartite_graph.hpp"
#include "mbbp/random.hpp"

namespace mbbp {

/// How far the current biclique may drift from balance before it is repaired.
enum class unbalance_variant {
  bound2,    ///< repair when the deviation exceeds 2 (the default search space)
  bound1,    ///< repair when the deviation exceeds 1
  unbounded, ///< never repair
};

/// Deviation above which repair triggers; empty for unbounded.
std::optional<std::size_t> deviation_bound(unbalance_variant v) noexcept;
std::string_view to_string(unbalance_variant v) noexcept;
/// Accepts "2", "1", "inf".
std::optional<unbalance_variant> parse_unbalance_variant(std::string_view s) noexcept;

struct tabu_params {
  /// Iterations per run (tabu search depth). Must be at least 1.
  std::size_t depth = 1000;
  /// Tabu tenure coefficient, nonnegative.
  double alpha = 0.30;
  /// When no expanding or plateau move exists, take a non-tabu swap that
  /// loses one unit of balanced size instead of idling. Without it the search
  /// halts for good at the first balanced biclique that no vertex extends.
  bool swap_escape = true;
};

/// max(7, floor(alpha * r)) with r uniform in [0, l].
std::size_t tabu_tenure(double alpha, std::size_t l, rng_t &rng);

struct candidate_sets {
  std::vector<vertex_id> expand;   ///< delta >= 1, tabu unless aspiration
  std::vector<vertex_id> plateau;  ///< delta == 0, not tabu
  std::vector<vertex_id> swap;     ///< delta == -1, not tabu
};

/**
 * Incremental state of one constraint-based tabu search run.
 *
 * For every vertex w, conn(w) counts its alive neighbours inside the current
 * solution; for a V-side vertex that is |N(w) ∩ X|, for a U-side vertex
 * |N(w) ∩ Y|. The frontier N(X ∪ Y) is exactly the set of alive vertices
 * outside the solution with conn > 0. Both are updated in O(deg) per move.
 *
 * Buffers are sized once for the graph and reused across reset() calls, so a
 * restart costs time proportional to the vertices touched, not to |U ∪ V|.
 * The graph may lose vertices between runs but not during one.
 */
class search_state {
public:
  explicit search_state(const bipartite_graph &g);

  /// Loads `start` (must be a biclique of alive vertices), clears the tabu
  /// table and sets the iteration counter to 0.
  void reset(const biclique &start);

  const bipartite_graph &graph() const noexcept { return *g_; }

  std::span<const vertex_id> x() const noexcept { return x_; }
  std::span<const vertex_id> y() const noexcept { return y_; }
  std::span<const vertex_id> frontier() const noexcept { return frontier_; }
  biclique solution() const { return {x_, y_}; }

  std::size_t balanced_size() const noexcept { return std::min(x_.size(), y_.size()); }
  std::size_t deviation() const noexcept {
    return x_.size() > y_.size() ? x_.size() - y_.size() : y_.size() - x_.size();
  }

  std::size_t conn(vertex_id v) const noexcept { return conn_[v]; }
  bool in_solution(vertex_id v) const noexcept { return sol_pos_[v] != npos; }
  bool in_frontier(vertex_id v) const noexcept { return front_pos_[v] != npos; }

  std::uint64_t iteration() const noexcept { return iter_; }
  void set_iteration(std::uint64_t i) noexcept { iter_ = i; }
  /// T[v]: v is tabu while T[v] > I.
  std::uint64_t tabu_until(vertex_id v) const noexcept { return tabu_[v]; }
  void set_tabu(vertex_id v, std::uint64_t until);

  /// Change in balanced size that push(v) would cause, in O(1).
  /// Throws usage_error when v is dead or already in the solution.
  long delta(vertex_id v) const;

  /// Adds v to its side and expels the opposite side's non-neighbours of v.
  /// Returns the expelled vertices. Throws usage_error unless v is in the
  /// frontier.
  std::vector<vertex_id> push(vertex_id v);

  /// Removes v from the solution.
  void drop(vertex_id v);

  /// Restricted candidates split by delta, filtered by the tabu table with
  /// aspiration against `best_balanced`.
  candidate_sets build_candidates(std::size_t best_balanced) const;

  bool needs_repair(unbalance_variant variant) const noexcept;

  /// Drops random vertices from the larger side until |X| = |Y|, giving each
  /// a tenure. Throws usage_error when the variant's bound is not exceeded.
  void repair(unbalance_variant variant, double alpha, rng_t &rng);

private:
  static constexpr std::uint32_t npos = static_cast<std::uint32_t>(-1);

  void add_member(vertex_id v);
  void remove_member(vertex_id v);
  void frontier_insert(vertex_id v);
  void frontier_erase(vertex_id v);
  long delta_unchecked(vertex_id v) const noexcept;

  const bipartite_graph *g_;
  std::vector<vertex_id> x_, y_, frontier_;
  std::vector<std::uint32_t> sol_pos_, front_pos_, conn_;
  std::vector<std::uint64_t> tabu_;
  std::vector<vertex_id> tabu_touched_;
  std::uint64_t iter_ = 0;
};

/// Called after every iteration; used by tests to audit the state.
using iteration_observer = std::function<void(const search_state &)>;

/// Runs `params.depth` iterations of constraint-based tabu search from
/// `start` on the given reusable state and returns the best biclique seen,
/// trimmed to a deviation of at most 2.
biclique tabu_improve(search_state &state, const biclique &start,
                      const tabu_params &params, unbalance_variant variant,
                      rng_t &rng, const iteration_observer &observer = {});

/// Convenience overload owning a fresh state.
biclique cbts_improve(const bipartite_graph &g, const biclique &start,
                      const tabu_params &params, unbalance_variant variant,
                      rng_t &rng);

} // namespace mbbp
