#include "tricolor/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace tricolor::oracle {

namespace {

void guard(double space, const char* who) {
  if (space > kSpaceLimit) throw std::length_error(std::string(who) + ": search space too large");
}

// Calls visit(asg) for each full assignment of live variables until it returns true.
template <class Visit>
void odometer(const Instance& inst, Visit visit) {
  std::vector<int> live;
  std::vector<std::vector<int>> domains;
  double space = 1;
  for (int v = 0; v < inst.num_variables(); ++v) {
    if (!inst.alive(v)) continue;
    live.push_back(v);
    domains.push_back(inst.colors(v));
    space *= static_cast<double>(domains.back().size());
  }
  guard(space, "brute_csp");
  if (std::any_of(domains.begin(), domains.end(), [](const auto& d) { return d.empty(); })) return;
  std::vector<std::size_t> digit(live.size(), 0);
  Assignment asg(inst.num_variables(), -1);
  while (true) {
    for (std::size_t i = 0; i < live.size(); ++i) asg[live[i]] = domains[i][digit[i]];
    if (visit(asg)) return;
    std::size_t i = 0;
    while (i < live.size() && ++digit[i] == domains[i].size()) digit[i++] = 0;
    if (i == live.size()) return;
  }
}

}  // namespace

std::optional<Assignment> brute_csp(const Instance& inst) {
  std::optional<Assignment> found;
  odometer(inst, [&](const Assignment& asg) {
    if (!check(inst, asg)) return false;
    found = asg;
    return true;
  });
  return found;
}

std::vector<Assignment> all_solutions(const Instance& inst) {
  std::vector<Assignment> out;
  odometer(inst, [&](const Assignment& asg) {
    if (check(inst, asg)) out.push_back(asg);
    return false;
  });
  return out;
}

std::optional<Assignment> brute_csp_recursive(const Instance& inst) {
  const int n = inst.num_variables();
  double space = 1;
  for (int v = 0; v < n; ++v) {
    if (inst.alive(v)) space *= inst.color_count(v);
  }
  guard(space, "brute_csp_recursive");
  Assignment asg(n, -1);
  auto rec = [&](auto&& self, int v) -> bool {
    if (v == n) return true;
    if (!inst.alive(v)) return self(self, v + 1);
    for (int c = 0; c < inst.slot_count(v); ++c) {
      if (!inst.has_color(v, c)) continue;
      bool ok = true;
      for (const PairRef& q : inst.neighbors({v, c})) {
        if (q.var < v && asg[q.var] == q.color) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      asg[v] = c;
      if (self(self, v + 1)) return true;
    }
    asg[v] = -1;
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return asg;
}

bool proper_vertex_coloring(const Graph& g, const std::vector<int>& colors, int k) {
  if (static_cast<int>(colors.size()) != g.n) return false;
  for (int c : colors) {
    if (c < 0 || c >= k) return false;
  }
  return std::all_of(g.edges.begin(), g.edges.end(),
                     [&](const auto& e) { return colors[e.first] != colors[e.second]; });
}

bool proper_edge_coloring(const Graph& g, const std::vector<int>& colors, int k) {
  if (colors.size() != g.edges.size()) return false;
  std::vector<std::set<int>> seen(g.n);
  for (std::size_t i = 0; i < colors.size(); ++i) {
    const auto [u, v] = g.edges[i];
    if (colors[i] < 0 || colors[i] >= k || u == v) return false;
    if (!seen[u].insert(colors[i]).second || !seen[v].insert(colors[i]).second) return false;
  }
  return true;
}

std::optional<std::vector<int>> brute_vertex_color(const Graph& g) {
  guard(std::pow(3.0, g.n), "brute_vertex_color");
  std::vector<std::vector<int>> adj(g.n);
  for (auto [u, v] : g.edges) {
    if (u == v) return std::nullopt;
    adj[std::max(u, v)].push_back(std::min(u, v));
  }
  std::vector<int> col(g.n, -1);
  auto rec = [&](auto&& self, int v) -> bool {
    if (v == g.n) return true;
    for (int c = 0; c < 3; ++c) {
      if (std::any_of(adj[v].begin(), adj[v].end(), [&](int u) { return col[u] == c; })) continue;
      col[v] = c;
      if (self(self, v + 1)) return true;
    }
    col[v] = -1;
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return col;
}

std::optional<std::vector<int>> brute_edge_color(const Graph& g) {
  const int m = static_cast<int>(g.edges.size());
  guard(std::pow(3.0, m), "brute_edge_color");
  std::vector<int> col(m, -1);
  auto rec = [&](auto&& self, int i) -> bool {
    if (i == m) return true;
    const auto [u, v] = g.edges[i];
    if (u == v) return false;
    for (int c = 0; c < 3; ++c) {
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) {
        const auto [a, b] = g.edges[j];
        if (col[j] == c && (a == u || a == v || b == u || b == v)) ok = false;
      }
      if (!ok) continue;
      col[i] = c;
      if (self(self, i + 1)) return true;
    }
    col[i] = -1;
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return col;
}

std::optional<std::vector<bool>> brute_sat(const Cnf& f) {
  guard(std::pow(2.0, f.num_vars), "brute_sat");
  std::vector<bool> values(f.num_vars + 1, false);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << f.num_vars); ++mask) {
    for (int v = 1; v <= f.num_vars; ++v) values[v] = (mask >> (v - 1)) & 1;
    if (evaluate(f, values)) return values;
  }
  return std::nullopt;
}

namespace {

Instance empty_csp(int n, int min_colors, int max_colors, std::mt19937_64& rng) {
  if (min_colors < 1 || max_colors < min_colors || max_colors > kMaxColors) {
    throw std::invalid_argument("random_csp: bad color range");
  }
  Instance inst;
  std::uniform_int_distribution<int> k(min_colors, max_colors);
  for (int v = 0; v < n; ++v) {
    std::vector<int> labels(k(rng));
    std::iota(labels.begin(), labels.end(), 0);
    inst.add_variable(std::move(labels));
  }
  return inst;
}

void add_random_constraints(Instance& inst, int count, std::mt19937_64& rng, const Assignment* avoid) {
  const int n = inst.num_variables();
  if (n < 2) return;
  std::uniform_int_distribution<int> pick(0, n - 1);
  int added = 0;
  for (int attempt = 0; added < count && attempt < 50 * count + 100; ++attempt) {
    const int a = pick(rng);
    const int b = pick(rng);
    if (a == b) continue;
    const int ca = std::uniform_int_distribution<int>(0, inst.slot_count(a) - 1)(rng);
    const int cb = std::uniform_int_distribution<int>(0, inst.slot_count(b) - 1)(rng);
    if (avoid && (*avoid)[a] == ca && (*avoid)[b] == cb) continue;
    if (inst.add_constraint({a, ca}, {b, cb})) ++added;
  }
}

}  // namespace

Instance random_csp(int n, int min_colors, int max_colors, int constraints, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Instance inst = empty_csp(n, min_colors, max_colors, rng);
  add_random_constraints(inst, constraints, rng, nullptr);
  return inst;
}

std::pair<Instance, Assignment> planted_csp(int n, int min_colors, int max_colors, int constraints,
                                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Instance inst = empty_csp(n, min_colors, max_colors, rng);
  Assignment hidden(n);
  for (int v = 0; v < n; ++v) hidden[v] = std::uniform_int_distribution<int>(0, inst.slot_count(v) - 1)(rng);
  add_random_constraints(inst, constraints, rng, &hidden);
  return {std::move(inst), std::move(hidden)};
}

Instance random_pair_regular_csp(int n, int min_colors, int max_colors, int min_degree, int max_degree,
                                 std::uint64_t seed, int four_color_max_degree) {
  std::mt19937_64 rng(seed);
  Instance inst = empty_csp(n, min_colors, max_colors, rng);
  std::vector<PairRef> stubs;
  std::uniform_int_distribution<int> deg(min_degree, max_degree);
  for (int v = 0; v < n; ++v) {
    for (int c = 0; c < inst.slot_count(v); ++c) {
      int target = deg(rng);
      if (four_color_max_degree >= 0 && inst.slot_count(v) == 4) target = std::min(target, four_color_max_degree);
      for (int k = target; k > 0; --k) stubs.push_back({v, c});
    }
  }
  std::shuffle(stubs.begin(), stubs.end(), rng);
  auto touches = [&](PairRef p, int var) {
    const auto adj = inst.neighbors(p);
    return std::any_of(adj.begin(), adj.end(), [&](const PairRef& q) { return q.var == var; });
  };
  // Greedy pairing: each stub takes the first later stub it can legally join.
  std::vector<bool> used(stubs.size(), false);
  for (std::size_t i = 0; i < stubs.size(); ++i) {
    if (used[i]) continue;
    for (std::size_t j = i + 1; j < stubs.size(); ++j) {
      if (used[j] || stubs[j].var == stubs[i].var || touches(stubs[i], stubs[j].var) ||
          touches(stubs[j], stubs[i].var)) {
        continue;
      }
      inst.add_constraint(stubs[i], stubs[j]);
      used[i] = used[j] = true;
      break;
    }
  }
  return inst;
}

Graph random_graph(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  Graph g{n, {}};
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (coin(rng)) g.edges.emplace_back(u, v);
    }
  }
  return g;
}

Graph random_subcubic(int n, int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Graph g{n, {}};
  if (n < 2) return g;
  std::vector<int> deg(n, 0);
  std::set<std::pair<int, int>> have;
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int attempt = 0; static_cast<int>(g.edges.size()) < m && attempt < 100 * (m + 1); ++attempt) {
    int u = pick(rng);
    int v = pick(rng);
    if (u == v || deg[u] == 3 || deg[v] == 3) continue;
    if (u > v) std::swap(u, v);
    if (!have.insert({u, v}).second) continue;
    ++deg[u];
    ++deg[v];
    g.edges.emplace_back(u, v);
  }
  return g;
}

Graph random_cubic(int n, std::uint64_t seed) {
  if (n < 4 || n % 2) throw std::invalid_argument("random_cubic: n must be even and at least 4");
  std::mt19937_64 rng(seed);
  while (true) {
    std::vector<int> points(3 * n);
    for (int i = 0; i < 3 * n; ++i) points[i] = i / 3;
    std::shuffle(points.begin(), points.end(), rng);
    std::set<std::pair<int, int>> edges;
    bool ok = true;
    for (int i = 0; i < 3 * n && ok; i += 2) {
      int u = points[i];
      int v = points[i + 1];
      if (u > v) std::swap(u, v);
      ok = u != v && edges.insert({u, v}).second;
    }
    if (!ok) continue;
    return Graph{n, {edges.begin(), edges.end()}};
  }
}

std::pair<Graph, std::vector<int>> planted_3colorable(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> cls(n);
  for (int v = 0; v < n; ++v) cls[v] = std::uniform_int_distribution<int>(0, 2)(rng);
  std::bernoulli_distribution coin(p);
  Graph g{n, {}};
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (cls[u] != cls[v] && coin(rng)) g.edges.emplace_back(u, v);
    }
  }
  return {std::move(g), std::move(cls)};
}

std::pair<Graph, std::vector<int>> planted_edge_colorable_cubic(int n, std::uint64_t seed) {
  if (n < 4 || n % 2) throw std::invalid_argument("planted_edge_colorable_cubic: n must be even and >= 4");
  std::mt19937_64 rng(seed);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  while (true) {
    Graph g{n, {}};
    std::vector<int> colors;
    std::set<std::pair<int, int>> have;
    auto add = [&](int u, int v, int c) {
      if (u > v) std::swap(u, v);
      if (!have.insert({u, v}).second) return false;
      g.edges.emplace_back(u, v);
      colors.push_back(c);
      return true;
    };
    for (int i = 0; i < n; ++i) add(order[i], order[(i + 1) % n], i % 2);
    std::vector<int> rest(n);
    std::iota(rest.begin(), rest.end(), 0);
    std::shuffle(rest.begin(), rest.end(), rng);
    bool ok = true;
    for (int i = 0; i < n && ok; i += 2) ok = add(rest[i], rest[i + 1], 2);
    if (ok) return {std::move(g), std::move(colors)};
  }
}

Cnf random_3cnf(int n, int t, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("random_3cnf: need at least three variables");
  std::mt19937_64 rng(seed);
  Cnf f{n, {}};
  std::uniform_int_distribution<int> pick(1, n);
  std::bernoulli_distribution sign(0.5);
  for (int i = 0; i < t; ++i) {
    std::vector<int> vars;
    while (vars.size() < 3) {
      const int v = pick(rng);
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
    for (int& v : vars) v = sign(rng) ? v : -v;
    f.clauses.push_back(std::move(vars));
  }
  return f;
}

}  // namespace tricolor::oracle
