#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mbbp/bipartite_graph.hpp"

namespace mbbp {

/**
 * A pair (X, Y) with X drawn from the U side and Y from the V side.
 *
 * Both sides are kept as sorted, duplicate-free id lists, so equality is set
 * equality and contains() is a binary search. Whether (X, Y) really is a
 * biclique of some graph is checked separately by is_biclique().
 */
class biclique {
public:
  biclique() = default;
  biclique(std::vector<vertex_id> x, std::vector<vertex_id> y);

  const std::vector<vertex_id> &x() const noexcept { return x_; }
  const std::vector<vertex_id> &y() const noexcept { return y_; }

  bool contains_x(vertex_id v) const;
  bool contains_y(vertex_id v) const;
  bool empty() const noexcept { return x_.empty() && y_.empty(); }

  /// min(|X|, |Y|)
  std::size_t balanced_size() const noexcept {
    return x_.size() < y_.size() ? x_.size() : y_.size();
  }
  /// ||X| - |Y||
  std::size_t balance_deviation() const noexcept {
    return x_.size() > y_.size() ? x_.size() - y_.size() : y_.size() - x_.size();
  }

  friend bool operator==(const biclique &, const biclique &) = default;

private:
  std::vector<vertex_id> x_;
  std::vector<vertex_id> y_;
};

inline std::size_t balanced_size(const biclique &b) noexcept { return b.balanced_size(); }
inline std::size_t balance_deviation(const biclique &b) noexcept {
  return b.balance_deviation();
}

/// True iff X lies in U, Y lies in V and every cross pair is an edge of g.
/// Throws usage_error when a member is dead or out of range.
bool is_biclique(const bipartite_graph &g, const biclique &b);

/// Drops vertices from the larger side, largest ids first, until |X| = |Y|.
/// Throws usage_error when the deviation exceeds 2.
biclique make_balance(const biclique &b);

/// Same trimming without the deviation cap; brings the deviation down to
/// at most `max_deviation`.
biclique trim_to_deviation(const biclique &b, std::size_t max_deviation);

/// Translates subgraph ids back through an id map (see induced_subgraph).
biclique map_to_parent(const biclique &b, std::span<const vertex_id> to_parent);

} // namespace mbbp
