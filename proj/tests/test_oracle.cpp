#include <set>
#include <stdexcept>

#include "doctest.h"
#include "tricolor/oracle.hpp"

using namespace tricolor;
using namespace tricolor::oracle;

TEST_CASE("the two CSP enumerators agree") {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const Instance inst = random_csp(4 + seed % 5, 2, 4, 3 + seed % 25, seed);
    const auto a = brute_csp(inst), b = brute_csp_recursive(inst);
    REQUIRE(a.has_value() == b.has_value());
    if (a) {
      CHECK(check(inst, *a));
      CHECK(check(inst, *b));
    }
    const auto all = all_solutions(inst);
    CHECK(all.empty() == !a.has_value());
    CHECK(std::set<Assignment>(all.begin(), all.end()).size() == all.size());
    for (const Assignment& s : all) CHECK(check(inst, s));
  }
}

TEST_CASE("the enumerators refuse oversized search spaces") {
  const Instance big = random_csp(30, 4, 4, 10, 1);
  CHECK_THROWS_AS(brute_csp(big), std::length_error);
}

TEST_CASE("generators are deterministic in their arguments") {
  CHECK(random_csp(10, 3, 4, 30, 5) == random_csp(10, 3, 4, 30, 5));
  CHECK_FALSE(random_csp(10, 3, 4, 30, 5) == random_csp(10, 3, 4, 30, 6));
  CHECK(random_pair_regular_csp(8, 3, 4, 2, 3, 9) == random_pair_regular_csp(8, 3, 4, 2, 3, 9));
  CHECK(random_graph(12, 0.3, 2).edges == random_graph(12, 0.3, 2).edges);
  CHECK(random_cubic(10, 4).edges == random_cubic(10, 4).edges);
  CHECK(random_3cnf(6, 20, 8).clauses == random_3cnf(6, 20, 8).clauses);
}

TEST_CASE("generated instances have the requested shape") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Instance inst = random_csp(9, 3, 4, 25, seed);
    CHECK(inst.num_variables() == 9);
    CHECK(inst.constraint_count() == 25);
    for (int v = 0; v < 9; ++v) CHECK((inst.color_count(v) == 3 || inst.color_count(v) == 4));
    const Graph cubic = random_cubic(12, seed);
    std::vector<int> deg(12, 0);
    for (auto [u, v] : cubic.edges) {
      CHECK(u != v);
      ++deg[u];
      ++deg[v];
    }
    for (int d : deg) CHECK(d == 3);
    for (const auto& clause : random_3cnf(5, 10, seed).clauses) {
      CHECK(clause.size() == 3);
      CHECK(std::set<int>{std::abs(clause[0]), std::abs(clause[1]), std::abs(clause[2])}.size() == 3);
    }
  }
}

TEST_CASE("planted instances keep their hidden solution") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto [inst, hidden] = planted_csp(10, 3, 4, 40, seed);
    CHECK(check(inst, hidden));
    const auto [g, colors] = planted_3colorable(20, 0.3, seed);
    CHECK(proper_vertex_coloring(g, colors));
    const auto [cubic, edge_colors] = planted_edge_colorable_cubic(12, seed);
    CHECK(proper_edge_coloring(cubic, edge_colors));
  }
}

TEST_CASE("graph and formula oracles return valid witnesses") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Graph g = random_graph(7, 0.45, seed);
    if (const auto c = brute_vertex_color(g)) CHECK(proper_vertex_coloring(g, *c));
    const Graph s = random_subcubic(7, 9, seed);
    if (const auto c = brute_edge_color(s)) CHECK(proper_edge_coloring(s, *c));
    const Cnf f = random_3cnf(6, 28, seed);
    if (const auto v = brute_sat(f)) CHECK(evaluate(f, *v));
  }
  const Graph k4{4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  CHECK_FALSE(brute_vertex_color(k4).has_value());
  CHECK(brute_edge_color(k4).has_value());
  CHECK_FALSE(brute_sat({1, {{1}, {-1}}}).has_value());
}
