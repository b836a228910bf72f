#include "mbbp/solver.hpp"

#include <algorithm>
#include <iterator>
#include <vector>

#include "mbbp/error.hpp"
#include "mbbp/reduction.hpp"

namespace mbbp {

std::string_view to_string(reduction_variant v) noexcept {
  switch (v) {
  case reduction_variant::none: return "none";
  case reduction_variant::peel: return "peel";
  case reduction_variant::peel_exact: return "peel+exact";
  }
  return "?";
}

std::optional<reduction_variant> parse_reduction_variant(std::string_view s) noexcept {
  if (s == "none") return reduction_variant::none;
  if (s == "peel") return reduction_variant::peel;
  if (s == "peel+exact") return reduction_variant::peel_exact;
  return std::nullopt;
}

solver_params solver_params::dense() { return {}; }

solver_params solver_params::sparse() {
  solver_params p;
  p.depth = 100;
  p.alpha = 1.74;
  p.k = 500;
  return p;
}

void solver_params::validate() const {
  if (depth < 1) throw usage_error("solver_params: L must be at least 1");
  if (!(alpha >= 0.0)) throw usage_error("solver_params: alpha must be >= 0");
  if (k < 1) throw usage_error("solver_params: K must be at least 1");
  if (!(time_limit.count() > 0.0))
    throw usage_error("solver_params: time limit must be positive");
  if (!(exact_budget.count() >= 0.0))
    throw usage_error("solver_params: exact budget must be >= 0");
}

bool same_outcome(const run_report &a, const run_report &b) {
  return a.best == b.best && a.omega == b.omega && a.proven_optimal == b.proven_optimal &&
         a.restarts == b.restarts && a.removed_by_peel == b.removed_by_peel &&
         a.removed_by_exact == b.removed_by_exact;
}

namespace {

std::vector<vertex_id> alive_adjacency(const bipartite_graph &g, vertex_id v) {
  std::vector<vertex_id> out;
  for (vertex_id w : g.adjacency(v))
    if (g.alive(w)) out.push_back(w);
  return out;
}

void intersect_in_place(std::vector<vertex_id> &cands, std::span<const vertex_id> adj) {
  std::vector<vertex_id> out;
  std::set_intersection(cands.begin(), cands.end(), adj.begin(), adj.end(),
                        std::back_inserter(out));
  cands = std::move(out);
}

vertex_id take_random(std::vector<vertex_id> &cands, rng_t &rng) {
  const auto pos = uniform_index(rng, cands.size());
  const vertex_id v = cands[pos];
  cands.erase(cands.begin() + static_cast<std::ptrdiff_t>(pos));
  return v;
}

} // namespace

biclique random_init_solution(const bipartite_graph &g, rng_t &rng) {
  const auto alive = g.alive_vertices();
  if (alive.empty()) throw usage_error("random_init_solution: graph has no alive vertex");

  const vertex_id seed = alive[uniform_index(rng, alive.size())];
  std::vector<vertex_id> own{seed}, other;
  // cand_other: adjacent to all of `own`, not in `other`.
  // cand_own:   adjacent to all of `other`, not in `own`.
  std::vector<vertex_id> cand_other = alive_adjacency(g, seed);
  std::vector<vertex_id> cand_own;

  bool grow_other = true;
  for (;;) {
    if (grow_other) {
      if (cand_other.empty()) break;
      const vertex_id v = take_random(cand_other, rng);
      if (other.empty()) {
        cand_own = alive_adjacency(g, v);
        cand_own.erase(std::remove(cand_own.begin(), cand_own.end(), seed), cand_own.end());
      } else {
        intersect_in_place(cand_own, g.adjacency(v));
      }
      other.push_back(v);
    } else {
      if (cand_own.empty()) break;
      const vertex_id v = take_random(cand_own, rng);
      intersect_in_place(cand_other, g.adjacency(v));
      own.push_back(v);
    }
    grow_other = !grow_other;
  }

  if (g.is_u(seed)) return {std::move(own), std::move(other)};
  return {std::move(other), std::move(own)};
}

namespace {

class run {
public:
  run(const bipartite_graph &g, const solver_params &p)
      : params_(p), g_(g), rng_(p.seed), state_(g_), start_(clock::now()) {}

  run_report execute() {
    for (;;) {
      if (g_.alive_count() == 0) {
        // Nothing left to search: the optimality test below already holds.
        report_.proven_optimal = true;
        break;
      }
      if (elapsed() >= params_.time_limit.count()) break;
      if (params_.max_restarts && report_.restarts >= *params_.max_restarts) break;

      const auto init = random_init_solution(g_, rng_);
      const auto found = tabu_improve(state_, init, {params_.depth, params_.alpha, params_.swap_escape},
                                      params_.unbalance, rng_);
      ++report_.restarts;
      offer(found);

      if (params_.reduction != reduction_variant::none) reduce();

      if (g_.alive_u_count() <= report_.omega || g_.alive_v_count() <= report_.omega) {
        report_.proven_optimal = true;
        break;
      }
    }
    report_.best = make_balance(best_);
    report_.total_time = elapsed();
    return report_;
  }

private:
  using clock = std::chrono::steady_clock;

  double elapsed() const {
    return std::chrono::duration<double>(clock::now() - start_).count();
  }

  void offer(const biclique &b) {
    if (b.balanced_size() > report_.omega) {
      best_ = trim_to_deviation(b, 2);
      report_.omega = best_.balanced_size();
      report_.time_to_best = elapsed();
    }
  }

  void reduce() {
    const auto budget = std::chrono::duration_cast<std::chrono::nanoseconds>(params_.exact_budget);
    for (;;) {
      const auto min_deg = g_.min_alive_degree();
      if (!min_deg || report_.omega < *min_deg) break;
      report_.removed_by_peel += peel(g_, report_.omega);
      if (params_.reduction != reduction_variant::peel_exact) continue;
      const auto res = reduce_by_exact(g_, report_.omega, params_.k, budget);
      report_.removed_by_exact += res.removed;
      if (res.improved) offer(*res.improved);
    }
  }

  solver_params params_;
  bipartite_graph g_;
  rng_t rng_;
  search_state state_;
  clock::time_point start_;
  biclique best_;
  run_report report_;
};

} // namespace

run_report solve(const bipartite_graph &g, const solver_params &params) {
  params.validate();
  return run(g, params).execute();
}

} // namespace mbbp
