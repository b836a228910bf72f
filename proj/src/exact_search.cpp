#include "mbbp/exact_search.hpp"

#include <algorithm>
#include <span>
#include <vector>

#include "mbbp/error.hpp"

namespace mbbp {

namespace {

using clock = std::chrono::steady_clock;

class branch_and_bound {
public:
  branch_and_bound(const bipartite_graph &g, std::size_t lb,
                   std::chrono::nanoseconds budget, exact_options options)
      : g_(g), lb_(lb), prune_(options.prune) {
    const auto now = clock::now();
    if (budget < clock::time_point::max() - now)
      deadline_ = now + std::chrono::duration_cast<clock::duration>(budget);
  }

  exact_outcome run() {
    std::vector<vertex_id> cu(g_.n_u()), cv(g_.n_v());
    for (std::size_t i = 0; i < g_.n_u(); ++i) cu[i] = g_.u_id(i);
    for (std::size_t j = 0; j < g_.n_v(); ++j) cv[j] = g_.v_id(j);
    std::vector<vertex_id> a, b;
    expand(a, b, cu, cv);

    exact_outcome out;
    out.improved = std::move(best_);
    out.proven_optimal = !expired_;
    out.nodes = nodes_;
    return out;
  }

private:
  bool out_of_time() {
    if (expired_) return true;
    if (deadline_ && nodes_ % 1024 == 1 && clock::now() >= *deadline_) expired_ = true;
    return expired_;
  }

  void record(const std::vector<vertex_id> &a, const std::vector<vertex_id> &b) {
    lb_ = a.size();
    if (g_.is_u(a.front()))
      best_ = biclique(a, b);
    else
      best_ = biclique(b, a);
  }

  std::vector<vertex_id> intersect_with_neighbors(std::span<const vertex_id> cands,
                                                  vertex_id i) const {
    std::vector<vertex_id> out;
    const auto adj = g_.adjacency(i);
    std::set_intersection(cands.begin(), cands.end(), adj.begin(), adj.end(),
                          std::back_inserter(out));
    return out;
  }

  // |A| == |B| or |A| + 1 == |B| on entry; C_A and C_B are sorted.
  void expand(std::vector<vertex_id> &a, std::vector<vertex_id> &b,
              std::span<const vertex_id> ca, std::span<const vertex_id> cb) {
    ++nodes_;
    if (out_of_time()) return;
    if (ca.empty()) {
      if (a.size() > lb_) record(a, b);
      return;
    }
    while (!ca.empty()) {
      if (expired_) return;
      if (prune_ && a.size() + ca.size() <= lb_) return;
      const vertex_id i = ca.front();
      ca = ca.subspan(1);
      const auto cb_next = intersect_with_neighbors(cb, i);
      a.push_back(i);
      if (a.size() - 1 < b.size())
        expand(a, b, ca, cb_next);
      else
        expand(b, a, cb_next, ca);
      a.pop_back();
    }
  }

  const bipartite_graph &g_;
  std::size_t lb_;
  bool prune_;
  std::optional<clock::time_point> deadline_;
  bool expired_ = false;
  std::uint64_t nodes_ = 0;
  std::optional<biclique> best_;
};

} // namespace

exact_outcome exact_search(const bipartite_graph &g, std::size_t lb,
                           std::chrono::nanoseconds budget, exact_options options) {
  if (!g.compact()) throw usage_error("exact_search: graph must be compact");
  if (budget <= std::chrono::nanoseconds::zero()) {
    // Immediate expiry: the first node already finds the clock run out.
    exact_outcome out;
    out.nodes = 1;
    return out;
  }
  return branch_and_bound(g, lb, budget, options).run();
}

} // namespace mbbp
