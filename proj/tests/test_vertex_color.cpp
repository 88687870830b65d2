#include <random>
#include <stdexcept>

#include "doctest.h"
#include "tricolor/oracle.hpp"
#include "tricolor/vertex_color.hpp"

using namespace tricolor;

namespace {

// Random tree of k degree-three vertices; the spare slots attach to three hub vertices.
Graph tree_gadget(int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Graph g{k + 3, {}};
  std::vector<int> deg(k, 0);
  for (int v = 1; v < k; ++v) {
    int p;
    do p = rng() % v;
    while (deg[p] >= 3);
    g.edges.emplace_back(p, v);
    ++deg[p];
    ++deg[v];
  }
  for (int v = 0; v < k; ++v)
    for (int h = 0; deg[v] < 3; ++h, ++deg[v]) g.edges.emplace_back(v, k + (v + h) % 3);
  return g;
}

// Children must be colorable exactly when the parent is, and their colorings must lift.
void expect_equisatisfiable(const MultiGraph& parent, const GraphBranch& b) {
  const bool expected = oracle::brute_vertex_color(parent.compact()).has_value();
  bool any = false;
  REQUIRE(b.children.size() == b.claimed.size());
  for (const MultiGraph& child : b.children) {
    std::vector<int> ids;
    const auto col = oracle::brute_vertex_color(child.compact(&ids));
    if (!col) continue;
    any = true;
    std::vector<int> full(child.capacity(), -1);
    for (std::size_t i = 0; i < ids.size(); ++i) full[ids[i]] = (*col)[i];
    CHECK(proper_coloring(child.original(), child.lift(full)));
  }
  CHECK(any == expected);
}

Graph random_min_degree(std::uint64_t seed) {
  const int n = 6 + seed % 7;
  if (seed % 3 == 0) return oracle::random_cubic(n + n % 2, seed);
  if (seed % 5 == 0) return oracle::random_graph(n, 0.35, seed);
  return oracle::random_subcubic(n, 3 * n / 2, seed);
}

}  // namespace

TEST_CASE("cycle branching is sound") {
  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 400; ++seed) {
    MultiGraph g(random_min_degree(seed));
    g.preprocess_low_degree();
    if (g.contradiction() || g.alive_count() == 0) continue;
    const auto b = branch_degree3_cycle(g);
    if (!b) continue;
    ++hits;
    const auto cycle = find_degree3_cycle(g);
    CHECK(cycle.size() >= 3);
    expect_equisatisfiable(g, *b);
  }
  CHECK(hits > 50);
}

TEST_CASE("tree branching is sound on tree gadgets") {
  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    MultiGraph g(tree_gadget(8 + seed % 5, seed));
    g.preprocess_low_degree();
    if (branch_degree3_cycle(g)) continue;
    const auto b = branch_degree3_tree(g);
    if (!b) continue;
    ++hits;
    for (int claimed : b->claimed) CHECK(claimed > 0);
    expect_equisatisfiable(g, *b);
  }
  CHECK(hits > 50);
}

TEST_CASE("the bushy forest is maximal and its breakdown sums to n") {
  int built = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    MultiGraph g(oracle::random_graph(12 + seed % 10, 0.3, seed));
    g.preprocess_low_degree();
    if (g.contradiction() || g.alive_count() == 0 || find_degree3_cycle(g).size() || branch_degree3_tree(g)) continue;
    const BushyForest f = build_bushy_forest(g);
    ++built;
    for (const BushyTree& t : f.trees) {
      CHECK(f.parent[t.root] == -1);
      for (int v : t.internal) CHECK(f.contains(v));
      for (int v : t.leaves) CHECK(f.contains(v));
    }
    const ForestBreakdown b = breakdown(g, f);
    CHECK(b.p + b.q + b.r + b.s + b.t == g.alive_count());
    CHECK(b.p == static_cast<int>(f.trees.size()));
    const HeightTwoForest h = build_height_two_forest(g, f);
    for (const HeightTwoTree& t : h.trees) {
      CHECK_FALSE(f.contains(t.root));
      CHECK(t.grandchild_count() <= 6);
    }
  }
  CHECK(built > 20);
}

TEST_CASE("color_graph agrees with brute force") {
  int sat = 0, unsat = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const Graph g = oracle::random_graph(4 + seed % 11, 0.15 + 0.05 * (seed % 10), seed);
    const ColorResult r = color_graph(g);
    const bool expected = oracle::brute_vertex_color(g).has_value();
    REQUIRE(r.status == (expected ? SolveStatus::Sat : SolveStatus::Unsat));
    if (expected) {
      CHECK(proper_coloring(g, r.colors));
      ++sat;
    } else {
      ++unsat;
    }
  }
  CHECK(sat > 50);
  CHECK(unsat > 50);
}

TEST_CASE("planted colorable graphs are colored and runs repeat exactly") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto [g, hidden] = oracle::planted_3colorable(40, 0.1 + 0.02 * seed, seed);
    const ColorResult a = color_graph(g), b = color_graph(g);
    REQUIRE(a.status == SolveStatus::Sat);
    CHECK(proper_coloring(g, a.colors));
    CHECK(a.colors == b.colors);
    CHECK(a.stats == b.stats);
  }
}

TEST_CASE("a loop makes a graph uncolorable") {
  CHECK(color_graph(Graph{2, {{0, 1}, {1, 1}}}).status == SolveStatus::Unsat);
  CHECK(color_graph(Graph{0, {}}).status == SolveStatus::Sat);
}
