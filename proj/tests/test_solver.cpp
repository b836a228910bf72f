#include <doctest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "mbbp/error.hpp"
#include "mbbp/solver.hpp"

using namespace mbbp;
using fixtures::fig_id;
using namespace std::chrono_literals;

namespace {

std::vector<vertex_id> common_neighbors(const bipartite_graph &g, std::span<const vertex_id> side,
                                        std::span<const vertex_id> exclude) {
  std::vector<vertex_id> out;
  for (vertex_id w : g.alive_vertices()) {
    if (g.is_u(w) == g.is_u(side.front())) continue;
    if (std::find(exclude.begin(), exclude.end(), w) != exclude.end()) continue;
    bool all = true;
    for (vertex_id s : side) all &= g.has_edge(w, s);
    if (all) out.push_back(w);
  }
  return out;
}

solver_params restart_capped(std::uint64_t restarts, std::uint64_t seed) {
  auto p = solver_params::dense();
  p.max_restarts = restarts;
  p.time_limit = 600s;
  p.seed = seed;
  return p;
}

} // namespace

TEST_CASE("random_init_solution") {
  SUBCASE("figure graph") {
    const auto g = fixtures::figure1().graph();
    const biclique expected({fig_id(1), fig_id(2), fig_id(3)}, {fig_id(5), fig_id(6)});
    bool seen = false;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
      rng_t rng(seed);
      const auto b = random_init_solution(g, rng);
      REQUIRE(is_biclique(g, b));
      REQUIRE(b.balance_deviation() <= 1);
      REQUIRE_FALSE(b.empty());
      // Growth stopped because one side could not be extended.
      const bool x_stuck = b.y().empty() ? false : common_neighbors(g, b.y(), b.x()).empty();
      const bool y_stuck = b.x().empty() ? false : common_neighbors(g, b.x(), b.y()).empty();
      CHECK((x_stuck || y_stuck));
      seen |= b == expected;
    }
    CHECK(seen);
  }
  SUBCASE("single vertex") {
    bipartite_graph g(1, 0, {});
    rng_t rng(1);
    CHECK(random_init_solution(g, rng) == biclique({0}, {}));
  }
  SUBCASE("complete graph is always filled") {
    const auto g = fixtures::complete(3, 3).graph();
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      rng_t rng(seed);
      CHECK(random_init_solution(g, rng) == biclique({0, 1, 2}, {3, 4, 5}));
    }
  }
  SUBCASE("empty graph") {
    bipartite_graph g(0, 0, {});
    rng_t rng(1);
    CHECK_THROWS_AS(random_init_solution(g, rng), usage_error);
  }
}

TEST_CASE("params") {
  CHECK(solver_params::sparse().depth == 100);
  CHECK(solver_params::sparse().alpha == doctest::Approx(1.74));
  CHECK(solver_params::sparse().k == 500);
  CHECK(solver_params::dense().k == 100);

  auto p = solver_params::dense();
  p.depth = 0;
  CHECK_THROWS_AS(p.validate(), usage_error);
  p = solver_params::dense();
  p.k = 0;
  CHECK_THROWS_AS(p.validate(), usage_error);
  p = solver_params::dense();
  p.time_limit = 0s;
  CHECK_THROWS_AS(p.validate(), usage_error);
  p = solver_params::dense();
  p.alpha = -0.1;
  CHECK_THROWS_AS(solve(fixtures::t1().graph(), p), usage_error);

  for (auto v : {reduction_variant::none, reduction_variant::peel, reduction_variant::peel_exact})
    CHECK(parse_reduction_variant(to_string(v)) == v);
  CHECK_FALSE(parse_reduction_variant("exact").has_value());
}

TEST_CASE("solve small graphs") {
  SUBCASE("T1 is proven quickly") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      auto p = solver_params::dense();
      p.seed = seed;
      const auto r = solve(fixtures::t1().graph(), p);
      CHECK(r.omega == 2);
      CHECK(r.proven_optimal);
      CHECK(r.best.balance_deviation() == 0);
      CHECK(r.best.balanced_size() == 2);
      CHECK(r.total_time < 1.0);
    }
  }
  SUBCASE("without reduction nothing is proven") {
    auto p = solver_params::dense();
    p.reduction = reduction_variant::none;
    p.time_limit = 0.2s;
    const auto r = solve(fixtures::t1().graph(), p);
    CHECK(r.omega == 2);
    CHECK_FALSE(r.proven_optimal);
    CHECK(r.total_time >= 0.2);
  }
  SUBCASE("complete graph") {
    const auto r = solve(fixtures::complete(3, 3).graph(), solver_params::dense());
    CHECK(r.omega == 3);
    CHECK(r.proven_optimal);
  }
  SUBCASE("empty graph") {
    const auto r = solve(bipartite_graph(0, 0, {}), solver_params::dense());
    CHECK(r.omega == 0);
    CHECK(r.proven_optimal);
    CHECK(r.best.empty());
  }
  SUBCASE("graph without edges") {
    const auto r = solve(bipartite_graph(3, 2, {}), solver_params::dense());
    CHECK(r.omega == 0);
    CHECK(r.proven_optimal);
  }
}

TEST_CASE("reports are sound on the small corpus") {
  const auto corpus = fixtures::small_corpus(200, 1212);
  const reduction_variant variants[] = {reduction_variant::none, reduction_variant::peel,
                                        reduction_variant::peel_exact};
  std::size_t i = 0;
  for (const auto &e : corpus) {
    const auto g = e.graph();
    const std::size_t opt = fixtures::brute_force_mbb(e);
    auto p = restart_capped(5, i);
    p.reduction = variants[i % 3];
    ++i;
    const auto r = solve(g, p);
    CHECK(r.best.balance_deviation() == 0);
    CHECK(r.best.balanced_size() == r.omega);
    CHECK(is_biclique(g, r.best));
    CHECK(r.omega <= opt);
    if (r.proven_optimal) CHECK(r.omega == opt);
    CHECK(r.restarts <= 5);
  }
}

TEST_CASE("same seed, same report") {
  const auto g = fixtures::random_graph(60, 60, 0.8, 99).graph();
  for (auto red : {reduction_variant::none, reduction_variant::peel_exact}) {
    auto p = restart_capped(15, 4);
    p.reduction = red;
    const auto a = solve(g, p);
    const auto b = solve(g, p);
    CHECK(same_outcome(a, b));
    p.seed = 5;
    CHECK(solve(g, p).restarts == 15);
  }
}

TEST_CASE("reduction variants on sparse graphs") {
  // Median omega over seeds at a fixed restart count, on a sparse graph with
  // a planted K10,10.
  auto e = fixtures::random_graph(300, 300, 0.01, 17);
  for (std::size_t u = 0; u < 10; ++u)
    for (std::size_t v = 0; v < 10; ++v) e.edges.emplace_back(u * 30, v * 30);
  const auto g = e.graph();
  auto median = [&](reduction_variant red) {
    std::vector<std::size_t> om;
    for (std::uint64_t seed = 0; seed < 9; ++seed) {
      auto p = solver_params::sparse();
      p.max_restarts = 2;
      p.time_limit = 600s;
      p.seed = seed;
      p.reduction = red;
      om.push_back(solve(g, p).omega);
    }
    std::sort(om.begin(), om.end());
    return om[om.size() / 2];
  };
  const auto none = median(reduction_variant::none);
  const auto peel_only = median(reduction_variant::peel);
  const auto both = median(reduction_variant::peel_exact);
  CHECK(both == 10);
  CHECK(both >= peel_only);
  CHECK(peel_only >= none);
}
