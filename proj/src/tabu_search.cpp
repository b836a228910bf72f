#include "mbbp/tabu_search.hpp"

#include <cmath>
#include <string>

#include "mbbp/error.hpp"

namespace mbbp {

std::optional<std::size_t> deviation_bound(unbalance_variant v) noexcept {
  switch (v) {
  case unbalance_variant::bound2: return 2;
  case unbalance_variant::bound1: return 1;
  case unbalance_variant::unbounded: return std::nullopt;
  }
  return std::nullopt;
}

std::string_view to_string(unbalance_variant v) noexcept {
  switch (v) {
  case unbalance_variant::bound2: return "2";
  case unbalance_variant::bound1: return "1";
  case unbalance_variant::unbounded: return "inf";
  }
  return "?";
}

std::optional<unbalance_variant> parse_unbalance_variant(std::string_view s) noexcept {
  if (s == "2") return unbalance_variant::bound2;
  if (s == "1") return unbalance_variant::bound1;
  if (s == "inf") return unbalance_variant::unbounded;
  return std::nullopt;
}

std::size_t tabu_tenure(double alpha, std::size_t l, rng_t &rng) {
  const auto r = uniform_int(rng, 0, l);
  const auto scaled = static_cast<std::size_t>(std::floor(alpha * static_cast<double>(r)));
  return std::max<std::size_t>(7, scaled);
}

search_state::search_state(const bipartite_graph &g)
    : g_(&g), sol_pos_(g.vertex_count(), npos), front_pos_(g.vertex_count(), npos),
      conn_(g.vertex_count(), 0), tabu_(g.vertex_count(), 0) {}

void search_state::frontier_insert(vertex_id v) {
  front_pos_[v] = static_cast<std::uint32_t>(frontier_.size());
  frontier_.push_back(v);
}

void search_state::frontier_erase(vertex_id v) {
  const auto pos = front_pos_[v];
  const vertex_id last = frontier_.back();
  frontier_[pos] = last;
  front_pos_[last] = pos;
  frontier_.pop_back();
  front_pos_[v] = npos;
}

void search_state::add_member(vertex_id v) {
  auto &side = g_->is_u(v) ? x_ : y_;
  sol_pos_[v] = static_cast<std::uint32_t>(side.size());
  side.push_back(v);
  if (in_frontier(v)) frontier_erase(v);
  for (vertex_id w : g_->adjacency(v)) {
    if (!g_->alive(w)) continue;
    if (++conn_[w] == 1 && !in_solution(w)) frontier_insert(w);
  }
}

void search_state::remove_member(vertex_id v) {
  auto &side = g_->is_u(v) ? x_ : y_;
  const auto pos = sol_pos_[v];
  const vertex_id last = side.back();
  side[pos] = last;
  sol_pos_[last] = pos;
  side.pop_back();
  sol_pos_[v] = npos;
  for (vertex_id w : g_->adjacency(v)) {
    if (!g_->alive(w)) continue;
    if (--conn_[w] == 0 && in_frontier(w)) frontier_erase(w);
  }
  if (conn_[v] > 0) frontier_insert(v);
}

void search_state::reset(const biclique &start) {
  // Vertices may have died since the last run, so counters are zeroed over
  // the full construction-time adjacency instead of undoing moves.
  for (auto side : {&x_, &y_}) {
    for (vertex_id v : *side) {
      for (vertex_id w : g_->adjacency(v)) conn_[w] = 0;
      sol_pos_[v] = npos;
    }
    side->clear();
  }
  for (vertex_id w : frontier_) front_pos_[w] = npos;
  frontier_.clear();
  for (vertex_id v : tabu_touched_) tabu_[v] = 0;
  tabu_touched_.clear();
  iter_ = 0;

  for (auto side : {&start.x(), &start.y()}) {
    for (vertex_id v : *side) {
      if (!g_->alive(v))
        throw usage_error("search_state::reset: vertex " + std::to_string(v) +
                          " is not alive");
      add_member(v);
    }
  }
}

void search_state::set_tabu(vertex_id v, std::uint64_t until) {
  if (tabu_[v] == 0) tabu_touched_.push_back(v);
  tabu_[v] = until;
}

long search_state::delta_unchecked(vertex_id v) const noexcept {
  // v enters `own`; `other` loses the members not adjacent to v.
  const bool u_side = g_->is_u(v);
  const long own = static_cast<long>(u_side ? x_.size() : y_.size());
  const long other = static_cast<long>(u_side ? y_.size() : x_.size());
  const long missing = other - static_cast<long>(conn_[v]);
  if (own > other) return -missing;
  return std::min(1L, other - own - missing);
}

long search_state::delta(vertex_id v) const {
  if (!g_->alive(v))
    throw usage_error("delta: vertex " + std::to_string(v) + " is not alive");
  if (in_solution(v))
    throw usage_error("delta: vertex " + std::to_string(v) + " is in the solution");
  return delta_unchecked(v);
}

std::vector<vertex_id> search_state::push(vertex_id v) {
  if (!g_->contains(v) || !in_frontier(v))
    throw usage_error("push: vertex " + std::to_string(v) + " is not in N(X u Y)");
  const auto &other = g_->is_u(v) ? y_ : x_;
  std::vector<vertex_id> expelled;
  if (conn_[v] != other.size()) {
    for (vertex_id w : other)
      if (!g_->has_edge(v, w)) expelled.push_back(w);
  }
  for (vertex_id w : expelled) remove_member(w);
  add_member(v);
  return expelled;
}

void search_state::drop(vertex_id v) {
  if (!g_->contains(v) || !in_solution(v))
    throw usage_error("drop: vertex " + std::to_string(v) + " is not in the solution");
  remove_member(v);
}

candidate_sets search_state::build_candidates(std::size_t best_balanced) const {
  candidate_sets out;
  const std::size_t nx = x_.size();
  const std::size_t ny = y_.size();
  const bool aspiration = balanced_size() + 1 > best_balanced;
  for (vertex_id v : frontier_) {
    // Restricted candidates expel at most one vertex.
    const std::size_t other = g_->is_u(v) ? ny : nx;
    if (conn_[v] + 1 < other) continue;
    const long d = delta_unchecked(v);
    const bool free = tabu_[v] <= iter_;
    if (d >= 1) {
      if (free || aspiration) out.expand.push_back(v);
    } else if (d == 0 && free) {
      out.plateau.push_back(v);
    } else if (d == -1 && free) {
      out.swap.push_back(v);
    }
  }
  return out;
}

bool search_state::needs_repair(unbalance_variant variant) const noexcept {
  const auto bound = deviation_bound(variant);
  return bound && deviation() > *bound;
}

void search_state::repair(unbalance_variant variant, double alpha, rng_t &rng) {
  if (!needs_repair(variant))
    throw usage_error("repair: deviation " + std::to_string(deviation()) +
                      " is within the variant bound");
  auto &larger = x_.size() > y_.size() ? x_ : y_;
  const auto &smaller = x_.size() > y_.size() ? y_ : x_;
  while (larger.size() > smaller.size()) {
    const vertex_id u = larger[uniform_index(rng, larger.size())];
    remove_member(u);
    set_tabu(u, iter_ + tabu_tenure(alpha, larger.size(), rng));
  }
}

biclique tabu_improve(search_state &state, const biclique &start,
                      const tabu_params &params, unbalance_variant variant,
                      rng_t &rng, const iteration_observer &observer) {
  if (params.depth < 1) throw usage_error("tabu_improve: depth must be at least 1");
  if (!(params.alpha >= 0.0)) throw usage_error("tabu_improve: alpha must be >= 0");

  state.reset(start);
  biclique best = start;
  std::size_t best_size = best.balanced_size();

  for (std::uint64_t it = 0; it < params.depth; ++it) {
    state.set_iteration(it);
    const auto cands = state.build_candidates(best_size);
    const std::vector<vertex_id> *pool = nullptr;
    if (!cands.expand.empty())
      pool = &cands.expand;
    else if (!cands.plateau.empty())
      pool = &cands.plateau;
    else if (params.swap_escape && !cands.swap.empty())
      pool = &cands.swap;

    if (pool) {
      const vertex_id v = (*pool)[uniform_index(rng, pool->size())];
      const auto expelled = state.push(v);
      for (vertex_id u : expelled) {
        const std::size_t former = state.graph().is_u(u) ? state.x().size() : state.y().size();
        state.set_tabu(u, it + tabu_tenure(params.alpha, former, rng));
      }
    }
    if (state.needs_repair(variant)) state.repair(variant, params.alpha, rng);

    if (state.balanced_size() > best_size) {
      best = state.solution();
      best_size = best.balanced_size();
    }
    if (observer) observer(state);
  }
  return trim_to_deviation(best, 2);
}

biclique cbts_improve(const bipartite_graph &g, const biclique &start,
                      const tabu_params &params, unbalance_variant variant, rng_t &rng) {
  search_state state(g);
  return tabu_improve(state, start, params, variant, rng);
}

} // namespace mbbp
