#include <algorithm>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "tricolor/graph_alg.hpp"

using namespace tricolor;

namespace {

std::vector<Edge> random_edges(int a, int b, double p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coin(0, 1);
  std::vector<Edge> edges;
  for (int u = 0; u < a; ++u)
    for (int v = 0; v < b; ++v)
      if (coin(rng) < p) edges.emplace_back(u, v);
  return edges;
}

// Size of a maximum matching by trying every edge subset (edge lists stay small).
int brute_matching(int n, const std::vector<Edge>& edges, bool bipartite) {
  int best = 0;
  const std::size_t m = edges.size();
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<char> left(n, 0), right(n, 0);
    int size = 0;
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) {
      if (!(mask >> i & 1)) continue;
      auto [u, v] = edges[i];
      std::vector<char>& side = bipartite ? right : left;
      if ((!bipartite && u == v) || left[u] || side[v]) ok = false;
      left[u] = 1;
      side[v] = 1;
      ++size;
    }
    if (ok) best = std::max(best, size);
  }
  return best;
}

bool is_matching(int n, const std::vector<Edge>& matched, const std::vector<Edge>& edges, bool bipartite) {
  std::vector<char> left(n, 0), right(n, 0);
  for (auto [u, v] : matched) {
    const bool present = std::count(edges.begin(), edges.end(), Edge{u, v}) ||
                         (!bipartite && std::count(edges.begin(), edges.end(), Edge{v, u}));
    if (!present) return false;
    std::vector<char>& side = bipartite ? right : left;
    if (left[u] || side[v]) return false;
    left[u] = side[v] = 1;
  }
  return true;
}

}  // namespace

TEST_CASE("bipartite matching is maximum") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 200; ++round) {
    const int a = 1 + rng() % 6, b = 1 + rng() % 6;
    auto edges = random_edges(a, b, 0.4, rng);
    if (edges.size() > 16) edges.resize(16);
    const auto matched = bipartite_matching(a, b, edges);
    CHECK(is_matching(std::max(a, b), matched, edges, true));
    CHECK(static_cast<int>(matched.size()) == brute_matching(std::max(a, b), edges, true));
    CHECK(std::is_sorted(matched.begin(), matched.end()));
  }
}

TEST_CASE("general matching is maximum on graphs with odd cycles") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 200; ++round) {
    const int n = 2 + rng() % 7;
    std::vector<Edge> edges;
    for (auto [u, v] : random_edges(n, n, 0.35, rng))
      if (u < v) edges.emplace_back(u, v);
    if (edges.size() > 16) edges.resize(16);
    const auto matched = general_matching(n, edges);
    CHECK(is_matching(n, matched, edges, false));
    for (auto [u, v] : matched) CHECK(u < v);
    CHECK(static_cast<int>(matched.size()) == brute_matching(n, edges, false));
  }
}

TEST_CASE("a blossom is contracted to reach the augmenting path") {
  // Triangle 0-1-2 with pendant 3 on 2 and pendant 4 on 0: perfect-ish matching of size 2.
  const std::vector<Edge> edges{{0, 1}, {1, 2}, {0, 2}, {2, 3}, {0, 4}};
  CHECK(general_matching(5, edges).size() == 2);
  CHECK(general_matching(3, {{0, 0}, {0, 1}, {0, 1}}).size() == 1);
}

TEST_CASE("max flow respects capacities and conservation") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 100; ++round) {
    const int n = 3 + rng() % 6;
    FlowNetwork net(n);
    for (int i = 0; i < 3 * n; ++i) {
      const int u = rng() % n, v = rng() % n;
      if (u != v) net.add_arc(u, v, rng() % 5);
    }
    const long long value = net.max_flow(0, n - 1);
    std::vector<long long> balance(n, 0);
    for (int a = 0; a < net.num_arcs(); ++a) {
      CHECK(net.flow(a) >= 0);
      CHECK(net.flow(a) <= net.capacity(a));
      balance[net.from(a)] -= net.flow(a);
      balance[net.to(a)] += net.flow(a);
    }
    CHECK(balance[n - 1] == value);
    for (int v = 1; v + 1 < n; ++v) CHECK(balance[v] == 0);
    // The arcs leaving the set reachable in the residual graph form a cut of equal value.
    std::vector<char> reach(n, 0);
    reach[0] = 1;
    for (bool grew = true; grew;) {
      grew = false;
      for (int a = 0; a < net.num_arcs(); ++a) {
        const int u = net.from(a), v = net.to(a);
        if (reach[u] && !reach[v] && net.flow(a) < net.capacity(a)) reach[v] = grew = true;
        if (reach[v] && !reach[u] && net.flow(a) > 0) reach[u] = grew = true;
      }
    }
    CHECK_FALSE(reach[n - 1]);
    long long cut = 0;
    for (int a = 0; a < net.num_arcs(); ++a)
      if (reach[net.from(a)] && !reach[net.to(a)]) cut += net.capacity(a);
    CHECK(cut == value);
  }
}
