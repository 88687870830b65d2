#include "doctest.h"
#include "tricolor/edge_color.hpp"
#include "tricolor/oracle.hpp"

using namespace tricolor;

namespace {

const Graph kK4{4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
const Graph kPetersen{10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 5}, {1, 6}, {2, 7},
                           {3, 8}, {4, 9}, {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}}};

Graph random_max3(std::uint64_t seed) {
  const int n = 4 + seed % 6;
  return seed % 2 ? oracle::random_subcubic(n, 3 * n / 2, seed) : oracle::random_cubic(n + n % 2, seed);
}

// Colors an edge instance through its line graph by brute force and lifts the result.
std::optional<std::vector<int>> brute_instance(const EdgeInstance& ei) {
  std::vector<int> ids;
  const auto col = oracle::brute_vertex_color(constrained_line_graph(ei, &ids));
  if (!col) return std::nullopt;
  std::vector<int> colors(ei.edges.size(), -1);
  for (std::size_t i = 0; i < ids.size(); ++i) colors[ids[i]] = (*col)[i];
  return ei.lift(colors);
}

}  // namespace

TEST_CASE("K4 is 3-edge-colorable and the Petersen graph is not") {
  const EdgeColorResult k4 = edge_color(kK4);
  REQUIRE(k4.status == SolveStatus::Sat);
  CHECK(proper_edge_coloring(kK4, k4.colors));
  CHECK(edge_color(kPetersen).status == SolveStatus::Unsat);
}

TEST_CASE("graphs outside the degree bound are rejected") {
  CHECK(edge_color(Graph{5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}}).status == SolveStatus::Unsat);
  CHECK(edge_color(Graph{1, {{0, 0}}}).status == SolveStatus::Unsat);
}

TEST_CASE("stripping keeps colorability and lifts") {
  int stripped = 0;
  for (std::uint64_t seed = 1; seed <= 400; ++seed) {
    const Graph g = oracle::random_subcubic(5 + seed % 6, 4 + seed % 8, seed);
    EdgeInstance ei = EdgeInstance::from_graph(g);
    stripped += strip_edges(ei);
    for (int e = 0; e < static_cast<int>(ei.edges.size()); ++e)
      if (ei.alive[e]) CHECK(ei.neighbors(e).size() >= 3);
    const auto colors = brute_instance(ei);
    CHECK(colors.has_value() == oracle::brute_edge_color(g).has_value());
    if (colors) CHECK(proper_edge_coloring(g, *colors));
  }
  CHECK(stripped > 100);
}

TEST_CASE("a splice yields two children that together keep colorability") {
  int splices = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const Graph g = random_max3(seed);
    const EdgeInstance ei = EdgeInstance::from_graph(g);
    const bool expected = oracle::brute_edge_color(g).has_value();
    for (int e = 0; e < static_cast<int>(ei.edges.size()); ++e) {
      if (!spliceable(ei, e)) continue;
      ++splices;
      const auto children = splice(ei, e);
      CHECK(children.size() == 2);
      bool any = false;
      for (const EdgeInstance& child : children) {
        if (child.unsat) continue;
        CHECK(child.live_edges() == ei.live_edges() + 1 - 4);
        if (const auto colors = brute_instance(child)) {
          any = true;
          CHECK(proper_edge_coloring(g, *colors));
        }
      }
      CHECK(any == expected);
      break;
    }
  }
  CHECK(splices > 50);
  CHECK_THROWS_AS(splice(EdgeInstance::from_graph(Graph{2, {{0, 1}}}), 0), std::invalid_argument);
}

TEST_CASE("selected splices form a matching of spliceable edges") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const EdgeInstance ei = EdgeInstance::from_graph(oracle::random_cubic(12 + 2 * (seed % 5), seed));
    std::vector<int> touched(ei.n, 0);
    for (int e : select_splices(ei)) {
      CHECK(spliceable(ei, e));
      CHECK(++touched[ei.edges[e].first] == 1);
      CHECK(++touched[ei.edges[e].second] == 1);
    }
  }
}

TEST_CASE("the charge identity holds on cubic graphs") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    EdgeInstance ei = EdgeInstance::from_graph(oracle::random_cubic(8 + 2 * (seed % 6), seed));
    strip_edges(ei);
    const ChargeCount c = charge_identity(ei);
    if (c.precondition) CHECK(c.holds);
  }
  const ChargeCount k4 = charge_identity(EdgeInstance::from_graph(kK4));
  CHECK(k4.precondition);
  CHECK(k4.holds);
}

TEST_CASE("edge_color agrees with brute force and repeats exactly") {
  int sat = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const Graph g = random_max3(seed);
    const EdgeColorResult r = edge_color(g);
    const bool expected = oracle::brute_edge_color(g).has_value();
    REQUIRE(r.status == (expected ? SolveStatus::Sat : SolveStatus::Unsat));
    if (expected) {
      CHECK(proper_edge_coloring(g, r.colors));
      ++sat;
    }
    CHECK(edge_color(g).stats == r.stats);
  }
  CHECK(sat > 100);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto [g, hidden] = oracle::planted_edge_colorable_cubic(20, seed);
    const EdgeColorResult r = edge_color(g);
    REQUIRE(r.status == SolveStatus::Sat);
    CHECK(proper_edge_coloring(g, r.colors));
  }
}
