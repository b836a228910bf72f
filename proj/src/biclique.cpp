#include "mbbp/biclique.hpp"

#include <algorithm>
#include <string>

#include "mbbp/error.hpp"

namespace mbbp {

namespace {

void normalize(std::vector<vertex_id> &s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

} // namespace

biclique::biclique(std::vector<vertex_id> x, std::vector<vertex_id> y)
    : x_(std::move(x)), y_(std::move(y)) {
  normalize(x_);
  normalize(y_);
}

bool biclique::contains_x(vertex_id v) const {
  return std::binary_search(x_.begin(), x_.end(), v);
}

bool biclique::contains_y(vertex_id v) const {
  return std::binary_search(y_.begin(), y_.end(), v);
}

bool is_biclique(const bipartite_graph &g, const biclique &b) {
  for (auto side : {&b.x(), &b.y()})
    for (vertex_id v : *side)
      if (!g.alive(v))
        throw usage_error("is_biclique: member " + std::to_string(v) +
                          " is dead or out of range");
  for (vertex_id x : b.x())
    if (!g.is_u(x)) return false;
  for (vertex_id y : b.y())
    if (!g.is_v(y)) return false;
  for (vertex_id x : b.x()) {
    const auto adj = g.adjacency(x);
    // Both lists are sorted: Y must be a subsequence of adj(x).
    if (!std::includes(adj.begin(), adj.end(), b.y().begin(), b.y().end()))
      return false;
  }
  return true;
}

biclique trim_to_deviation(const biclique &b, std::size_t max_deviation) {
  std::vector<vertex_id> x = b.x();
  std::vector<vertex_id> y = b.y();
  auto &larger = x.size() > y.size() ? x : y;
  const std::size_t smaller = std::min(x.size(), y.size());
  if (larger.size() > smaller + max_deviation) larger.resize(smaller + max_deviation);
  return {std::move(x), std::move(y)};
}

biclique make_balance(const biclique &b) {
  if (b.balance_deviation() > 2)
    throw usage_error("make_balance: deviation " +
                      std::to_string(b.balance_deviation()) + " exceeds 2");
  return trim_to_deviation(b, 0);
}

biclique map_to_parent(const biclique &b, std::span<const vertex_id> to_parent) {
  std::vector<vertex_id> x, y;
  x.reserve(b.x().size());
  y.reserve(b.y().size());
  for (vertex_id v : b.x()) x.push_back(to_parent[v]);
  for (vertex_id v : b.y()) y.push_back(to_parent[v]);
  return {std::move(x), std::move(y)};
}

} // namespace mbbp
