#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "fixtures.hpp"
#include "mbbp/error.hpp"
#include "mbbp/tabu_search.hpp"

using namespace mbbp;

namespace {

// T1 ids.
constexpr vertex_id u1 = 0, u2 = 1, u3 = 2, v1 = 3, v2 = 4, v3 = 5;

std::set<vertex_id> as_set(std::span<const vertex_id> s) { return {s.begin(), s.end()}; }
std::set<vertex_id> as_set(const std::vector<vertex_id> &s) { return {s.begin(), s.end()}; }

// Balanced size after pushing v, computed directly from the graph.
long simulated_delta(const bipartite_graph &g, const search_state &s, vertex_id v) {
  std::size_t own = (g.is_u(v) ? s.x() : s.y()).size() + 1;
  std::size_t other = 0;
  for (vertex_id w : g.is_u(v) ? s.y() : s.x())
    if (g.has_edge(v, w)) ++other;
  return static_cast<long>(std::min(own, other)) - static_cast<long>(s.balanced_size());
}

// Full audit of the incremental counters against a recomputation.
void check_counters(const search_state &s) {
  const auto &g = s.graph();
  std::set<vertex_id> frontier;
  for (vertex_id w = 0; w < g.vertex_count(); ++w) {
    if (!g.alive(w)) continue;
    std::size_t c = 0;
    for (vertex_id m : g.is_u(w) ? s.y() : s.x())
      if (g.has_edge(w, m)) ++c;
    REQUIRE(s.conn(w) == c);
    if (c > 0 && !s.in_solution(w)) frontier.insert(w);
  }
  REQUIRE(as_set(s.frontier()) == frontier);
}

// Random biclique reached by unrestricted pushes from a random vertex.
void random_walk(search_state &s, rng_t &rng, std::size_t steps) {
  const auto &g = s.graph();
  const auto alive = g.alive_vertices();
  const vertex_id start = alive[uniform_index(rng, alive.size())];
  s.reset(g.is_u(start) ? biclique({start}, {}) : biclique({}, {start}));
  for (std::size_t i = 0; i < steps && !s.frontier().empty(); ++i)
    s.push(s.frontier()[uniform_index(rng, s.frontier().size())]);
}

} // namespace

TEST_CASE("delta examples") {
  const auto g = fixtures::t1().graph();
  search_state s(g);

  s.reset(biclique({u1, u2}, {v1, v2}));
  CHECK(s.delta(u3) == 0);

  s.reset(biclique({u1, u2}, {v1}));
  CHECK(s.delta(v3) == 1);

  // |X| > |Y| and the pushed U vertex sees all of Y.
  s.reset(biclique({u1, u2}, {v1}));
  CHECK(s.delta(u3) == 0);

  CHECK_THROWS_AS(s.delta(u1), usage_error);
}

TEST_CASE("delta matches recomputation on random states") {
  rng_t rng(2024);
  std::size_t samples = 0;
  while (samples < 10000) {
    const auto e = fixtures::random_graph(2 + rng() % 15, 2 + rng() % 15, 0.3 + 0.6 * uniform_unit(rng), rng());
    const auto g = e.graph();
    if (g.edge_count() == 0) continue;
    search_state s(g);
    for (int rep = 0; rep < 20; ++rep) {
      random_walk(s, rng, rng() % 12);
      for (vertex_id v : as_set(s.frontier())) {
        const long expected = simulated_delta(g, s, v);
        REQUIRE(s.delta(v) == expected);
        search_state copy = s;
        copy.push(v);
        const long gained = static_cast<long>(copy.balanced_size()) -
                            static_cast<long>(s.balanced_size());
        REQUIRE(gained == expected);
        ++samples;
      }
    }
  }
}

TEST_CASE("push examples") {
  const auto g = fixtures::t1().graph();
  search_state s(g);

  s.reset(biclique({u1, u2}, {v1, v2, v3}));
  auto expelled = s.push(u3);
  CHECK(expelled == std::vector<vertex_id>{v3});
  CHECK(as_set(s.x()) == std::set<vertex_id>{u1, u2, u3});
  CHECK(as_set(s.y()) == std::set<vertex_id>{v1, v2});
  check_counters(s);

  s.reset(biclique({u1}, {v1}));
  expelled = s.push(u2);
  CHECK(expelled.empty());
  CHECK(as_set(s.x()) == std::set<vertex_id>{u1, u2});
  CHECK(as_set(s.y()) == std::set<vertex_id>{v1});

  s.reset(biclique{});
  CHECK(s.frontier().empty());
  CHECK_THROWS_AS(s.push(u1), usage_error);

  s.reset(biclique({u1}, {v1}));
  CHECK_THROWS_AS(s.push(u1), usage_error);
}

TEST_CASE("reset rejects dead vertices and survives removals between runs") {
  auto g = fixtures::t1().graph();
  search_state s(g);
  s.reset(biclique({u1, u2}, {v1, v2, v3}));
  g.remove_vertex(v3);
  s.reset(biclique({u1}, {v1}));
  check_counters(s);
  CHECK_THROWS_AS(s.reset(biclique({u1}, {v3})), usage_error);
}

TEST_CASE("candidate examples") {
  const auto g = fixtures::t1().graph();
  search_state s(g);

  s.reset(biclique({u1, u2}, {v1, v2}));
  auto c = s.build_candidates(2);
  CHECK(c.expand.empty());
  CHECK(as_set(c.plateau) == std::set<vertex_id>{u3, v3});

  // From ({u1},{v1}) every frontier vertex fills one side: delta 0.
  s.reset(biclique({u1}, {v1}));
  c = s.build_candidates(1);
  CHECK(c.expand.empty());
  CHECK(as_set(c.plateau) == std::set<vertex_id>{u2, u3, v2, v3});

  // Unbalanced: pushing onto the short side gains one.
  s.reset(biclique({u1, u2}, {v1}));
  c = s.build_candidates(1);
  CHECK(as_set(c.expand) == std::set<vertex_id>{v2, v3});

  // Everything tabu, no aspiration.
  s.reset(biclique({u1, u2}, {v1, v2}));
  s.set_iteration(5);
  for (vertex_id v : {u3, v3}) s.set_tabu(v, 100);
  c = s.build_candidates(2);
  CHECK(c.expand.empty());
  CHECK(c.plateau.empty());
  CHECK(c.swap.empty());
}

TEST_CASE("swap escape from a balanced maximal biclique") {
  // K2,2 on {u1,u2} x {v1,v2} plus u3 - v1 and v3 - u1: nothing extends the
  // K2,2, but u3 and v3 each miss exactly one vertex of the other side.
  std::vector<side_edge> e{{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 0}, {0, 2}};
  const bipartite_graph g(3, 3, e);
  search_state s(g);
  s.reset(biclique({u1, u2}, {v1, v2}));
  const auto c = s.build_candidates(2);
  CHECK(c.expand.empty());
  CHECK(c.plateau.empty());
  CHECK(as_set(c.swap) == std::set<vertex_id>{u3, v3});

  rng_t rng(4);
  std::size_t moves = 0;
  biclique prev = s.solution();
  const auto count_moves = [&](const search_state &st) {
    moves += !(st.solution() == prev);
    prev = st.solution();
  };
  tabu_improve(s, biclique({u1, u2}, {v1, v2}), {50, 0.3, false}, unbalance_variant::bound2, rng,
               count_moves);
  CHECK(moves == 0);
  prev = biclique({u1, u2}, {v1, v2});
  tabu_improve(s, prev, {50, 0.3, true}, unbalance_variant::bound2, rng, count_moves);
  CHECK(moves > 0);
}

TEST_CASE("candidates match brute force") {
  rng_t rng(99);
  for (int trial = 0; trial < 400; ++trial) {
    const auto e = fixtures::random_graph(2 + rng() % 10, 2 + rng() % 10, 0.5 + 0.4 * uniform_unit(rng), rng());
    const auto g = e.graph();
    if (g.edge_count() == 0) continue;
    search_state s(g);
    random_walk(s, rng, rng() % 10);
    s.set_iteration(10);
    for (vertex_id v = 0; v < g.vertex_count(); ++v)
      if (rng() % 3 == 0) s.set_tabu(v, 5 + rng() % 10);
    const std::size_t best = s.balanced_size() + rng() % 2;
    const auto c = s.build_candidates(best);

    std::set<vertex_id> want_expand, want_plateau, want_swap;
    for (vertex_id v = 0; v < g.vertex_count(); ++v) {
      if (s.in_solution(v) || !s.in_frontier(v)) continue;
      const auto other = g.is_u(v) ? s.y() : s.x();
      std::size_t missing = 0;
      for (vertex_id w : other) missing += !g.has_edge(v, w);
      if (missing > 1) continue;
      const long d = simulated_delta(g, s, v);
      const bool free = s.tabu_until(v) <= s.iteration();
      if (d >= 1 && (free || s.balanced_size() + 1 > best)) want_expand.insert(v);
      if (d == 0 && free) want_plateau.insert(v);
      if (d == -1 && free) want_swap.insert(v);
    }
    REQUIRE(as_set(c.expand) == want_expand);
    REQUIRE(as_set(c.plateau) == want_plateau);
    REQUIRE(as_set(c.swap) == want_swap);

    for (vertex_id v : c.expand) {
      search_state copy = s;
      CHECK(copy.push(v).size() <= 1);
    }
    for (vertex_id v : c.plateau) {
      search_state copy = s;
      CHECK(copy.push(v).size() <= 1);
    }
    for (vertex_id v : c.swap) {
      search_state copy = s;
      CHECK(copy.push(v).size() == 1);
    }
  }
}

TEST_CASE("tabu tenure") {
  rng_t rng(5);
  CHECK(tabu_tenure(0.0, 10, rng) == 7);
  CHECK(tabu_tenure(1.74, 0, rng) == 7);

  // r uniform on 0..100: floor(0.3 r) <= 7 iff r <= 26.
  const int draws = 10000;
  int sevens = 0;
  double sum = 0;
  for (int i = 0; i < draws; ++i) {
    const auto t = tabu_tenure(0.30, 100, rng);
    REQUIRE(t >= 7);
    REQUIRE(t <= 30);
    sevens += t == 7;
    sum += static_cast<double>(t);
  }
  double expected_mean = 0;
  for (int r = 0; r <= 100; ++r)
    expected_mean += std::max(7.0, std::floor(0.3 * r)) / 101.0;
  const double p7 = 27.0 / 101.0;
  const double sd7 = std::sqrt(draws * p7 * (1 - p7));
  CHECK(std::abs(sevens - draws * p7) < 4 * sd7);
  // Tenure standard deviation is below 8, so 4 sigma of the mean is < 0.32.
  CHECK(std::abs(sum / draws - expected_mean) < 0.32);
}

TEST_CASE("repair") {
  const auto g = fixtures::complete(4, 4).graph();
  search_state s(g);
  rng_t rng(3);

  s.reset(biclique({0, 1, 2, 3}, {4}));
  REQUIRE(s.needs_repair(unbalance_variant::bound2));
  s.repair(unbalance_variant::bound2, 0.3, rng);
  CHECK(s.x().size() == 1);
  CHECK(s.y().size() == 1);
  std::size_t tabu = 0;
  for (vertex_id v = 0; v < 4; ++v) tabu += s.tabu_until(v) >= 7;
  CHECK(tabu == 3);
  check_counters(s);

  s.reset(biclique({0, 1, 2}, {4}));
  CHECK_FALSE(s.needs_repair(unbalance_variant::bound2));
  CHECK_THROWS_AS(s.repair(unbalance_variant::bound2, 0.3, rng), usage_error);

  REQUIRE(s.needs_repair(unbalance_variant::bound1));
  s.repair(unbalance_variant::bound1, 0.3, rng);
  CHECK(s.x().size() == 1);
  CHECK(s.y().size() == 1);

  s.reset(biclique({0, 1, 2, 3}, {}));
  CHECK_FALSE(s.needs_repair(unbalance_variant::unbounded));
}

TEST_CASE("variant names") {
  for (auto v : {unbalance_variant::bound2, unbalance_variant::bound1, unbalance_variant::unbounded})
    CHECK(parse_unbalance_variant(to_string(v)) == v);
  CHECK_FALSE(parse_unbalance_variant("3").has_value());
}

TEST_CASE("cbts_improve examples") {
  rng_t rng(1);
  const tabu_params p{1000, 0.3};

  const auto t1 = fixtures::t1().graph();
  CHECK(cbts_improve(t1, biclique({u1}, {v1}), p, unbalance_variant::bound2, rng).balanced_size() == 2);

  const auto k33 = fixtures::complete(3, 3).graph();
  for (vertex_id a = 0; a < 3; ++a)
    CHECK(cbts_improve(k33, biclique({a}, {3}), {6, 0.3}, unbalance_variant::bound2, rng)
              .balanced_size() == 3);

  // One iteration from a maximal biclique never loses ground.
  const auto best = cbts_improve(t1, biclique({u1, u2}, {v1, v2, v3}), {1, 0.3},
                                 unbalance_variant::bound2, rng);
  CHECK(best.balanced_size() >= 2);
  CHECK(is_biclique(t1, best));

  CHECK_THROWS_AS(cbts_improve(t1, biclique({u1}, {v1}), {0, 0.3}, unbalance_variant::bound2, rng),
                  usage_error);
  CHECK_THROWS_AS(cbts_improve(t1, biclique({u1}, {v1}), {10, -1.0}, unbalance_variant::bound2, rng),
                  usage_error);
}

TEST_CASE("search invariants hold at every iteration") {
  rng_t rng(77);
  const unbalance_variant variants[] = {unbalance_variant::bound2, unbalance_variant::bound1,
                                        unbalance_variant::unbounded};
  for (int trial = 0; trial < 60; ++trial) {
    const auto variant = variants[trial % 3];
    const auto e = fixtures::random_graph(3 + rng() % 25, 3 + rng() % 25, 0.4 + 0.5 * uniform_unit(rng), rng());
    const auto g = e.graph();
    if (g.edge_count() == 0) continue;
    const auto [u, v] = e.edges[uniform_index(rng, e.edges.size())];
    const biclique start({g.u_id(u)}, {g.v_id(v)});

    search_state s(g);
    std::size_t seen_best = start.balanced_size();
    std::size_t iterations = 0;
    const auto bound = deviation_bound(variant);
    const auto observer = [&](const search_state &st) {
      ++iterations;
      REQUIRE(is_biclique(g, st.solution()));
      if (bound) REQUIRE(st.deviation() <= *bound);
      check_counters(st);
      seen_best = std::max(seen_best, st.balanced_size());

      // Tabu discipline on the next candidate build.
      const auto c = st.build_candidates(seen_best);
      for (vertex_id w : c.plateau) REQUIRE(st.tabu_until(w) <= st.iteration());
      for (vertex_id w : c.swap) REQUIRE(st.tabu_until(w) <= st.iteration());
      for (vertex_id w : c.expand)
        if (st.tabu_until(w) > st.iteration()) REQUIRE(st.balanced_size() + 1 > seen_best);
    };
    const auto best = tabu_improve(s, start, {200, 0.3}, variant, rng, observer);
    CHECK(iterations == 200);
    CHECK(best.balanced_size() == seen_best);
    CHECK(best.balance_deviation() <= 2);
    CHECK(is_biclique(g, best));
    if (e.n_u <= 10 && e.n_v <= 10) CHECK(best.balanced_size() <= fixtures::brute_force_mbb(e));
  }
}

TEST_CASE("same seed gives the same result") {
  const auto e = fixtures::random_graph(40, 40, 0.8, 12);
  const auto g = e.graph();
  rng_t a(7), b(7);
  const biclique start({g.u_id(e.edges[0].first)}, {g.v_id(e.edges[0].second)});
  CHECK(cbts_improve(g, start, {500, 0.3}, unbalance_variant::bound2, a) ==
        cbts_improve(g, start, {500, 0.3}, unbalance_variant::bound2, b));
}
