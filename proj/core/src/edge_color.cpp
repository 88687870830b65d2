#include "tricolor/edge_color.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "tricolor/graph_alg.hpp"

namespace tricolor {

EdgeInstance EdgeInstance::from_graph(const Graph& g) {
  EdgeInstance ei;
  ei.n = g.n;
  ei.original_edges = static_cast<int>(g.edges.size());
  for (auto [u, v] : g.edges) {
    if (u < 0 || v < 0 || u >= g.n || v >= g.n) throw std::invalid_argument("EdgeInstance: endpoint out of range");
    ei.edges.emplace_back(u, v);
    ei.alive.push_back(true);
    if (u == v) ei.unsat = true;
  }
  return ei;
}

int EdgeInstance::degree(int v) const {
  int d = 0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!alive[e]) continue;
    d += (edges[e].first == v) + (edges[e].second == v);
  }
  return d;
}

int EdgeInstance::max_degree() const {
  std::vector<int> d(n, 0);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!alive[e]) continue;
    ++d[edges[e].first];
    ++d[edges[e].second];
  }
  return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
}

std::vector<int> EdgeInstance::incident(int v) const {
  std::vector<int> out;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (alive[e] && (edges[e].first == v || edges[e].second == v)) out.push_back(static_cast<int>(e));
  }
  return out;
}

std::vector<int> EdgeInstance::adjacent_edges(int e) const {
  std::set<int> out;
  for (int end : {edges[e].first, edges[e].second}) {
    for (int f : incident(end)) {
      if (f != e) out.insert(f);
    }
  }
  return {out.begin(), out.end()};
}

std::vector<int> EdgeInstance::neighbors(int e) const {
  const std::vector<int> adj = adjacent_edges(e);
  std::set<int> out(adj.begin(), adj.end());
  for (auto [a, b] : constraints) {
    if (a == e && alive[b]) out.insert(b);
    if (b == e && alive[a]) out.insert(a);
  }
  out.erase(e);
  return {out.begin(), out.end()};
}

bool EdgeInstance::constrained(int e) const {
  return std::any_of(constraints.begin(), constraints.end(), [&](const auto& c) { return c.first == e || c.second == e; });
}

int EdgeInstance::live_edges() const { return static_cast<int>(std::count(alive.begin(), alive.end(), true)); }

std::vector<int> EdgeInstance::lift(const std::vector<int>& colors) const {
  const int m = static_cast<int>(edges.size());
  std::vector<int> c(m, -1);
  for (int e = 0; e < m; ++e) {
    if (alive[e]) c[e] = colors.at(e);
  }
  for (auto s = steps.rbegin(); s != steps.rend(); ++s) {
    if (s->kind == EdgeStep::Kind::Splice) {
      const int c0 = c[s->added[0]];
      const int c1 = c[s->added[1]];
      if (c0 < 0 || c1 < 0 || c0 == c1) throw std::logic_error("EdgeInstance::lift: spliced edges not colored apart");
      for (int f : s->merged[0]) c[f] = c0;
      for (int f : s->merged[1]) c[f] = c1;
      c[s->edge] = 3 - c0 - c1;
      c[s->added[0]] = c[s->added[1]] = -1;
      continue;
    }
    const int e = s->edge;
    bool used[3] = {false, false, false};
    for (int f = 0; f < m; ++f) {
      if (f == e || c[f] < 0) continue;
      const auto [a, b] = edges[f];
      if (a == edges[e].first || a == edges[e].second || b == edges[e].first || b == edges[e].second) used[c[f]] = true;
    }
    for (int f : s->partners) {
      if (c[f] >= 0) used[c[f]] = true;
    }
    int pick = 0;
    while (pick < 3 && used[pick]) ++pick;
    if (pick == 3) throw std::logic_error("EdgeInstance::lift: stripped edge has no free color");
    c[e] = pick;
  }
  c.resize(original_edges);
  return c;
}

int strip_edges(EdgeInstance& ei) {
  int removed = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (int e = 0; e < static_cast<int>(ei.edges.size()); ++e) {
      if (!ei.alive[e] || ei.edges[e].first == ei.edges[e].second || ei.neighbors(e).size() > 2) continue;
      EdgeStep step{EdgeStep::Kind::Strip, e, {-1, -1}, {}, {}};
      for (auto [a, b] : ei.constraints) {
        if (a == e) step.partners.push_back(b);
        if (b == e) step.partners.push_back(a);
      }
      ei.alive[e] = false;
      ei.steps.push_back(std::move(step));
      ++removed;
      changed = true;
    }
  }
  return removed;
}

bool spliceable(const EdgeInstance& ei, int e) {
  if (e < 0 || e >= static_cast<int>(ei.edges.size()) || !ei.alive[e] || ei.constrained(e)) return false;
  const auto [w, x] = ei.edges[e];
  return w != x && ei.degree(w) == 3 && ei.degree(x) == 3 && ei.adjacent_edges(e).size() == 4;
}

std::vector<EdgeInstance> splice(const EdgeInstance& ei, int e) {
  if (!spliceable(ei, e)) throw std::invalid_argument("splice: edge " + std::to_string(e) + " is not spliceable");
  const auto [w, x] = ei.edges[e];
  auto others = [&](int end) {
    std::vector<int> out;
    for (int f : ei.incident(end)) {
      if (f != e) out.push_back(f);
    }
    return out;
  };
  auto far = [&](int f, int end) { return ei.edges[f].first == end ? ei.edges[f].second : ei.edges[f].first; };
  const std::vector<int> at_w = others(w);
  const std::vector<int> at_x = others(x);

  std::vector<EdgeInstance> out;
  for (int pairing = 0; pairing < 2; ++pairing) {
    const std::array<std::array<int, 2>, 2> merged{{{at_w[0], at_x[pairing]}, {at_w[1], at_x[1 - pairing]}}};
    EdgeInstance child = ei;
    for (int f : {e, at_w[0], at_w[1], at_x[0], at_x[1]}) child.alive[f] = false;
    std::array<int, 2> added{};
    for (int i = 0; i < 2; ++i) {
      const int u = far(merged[i][0], w);
      const int y = far(merged[i][1], x);
      added[i] = static_cast<int>(child.edges.size());
      child.edges.emplace_back(u, y);
      child.alive.push_back(true);
      if (u == y) child.unsat = true;
    }
    for (auto& [a, b] : child.constraints) {
      for (int i = 0; i < 2; ++i) {
        for (int f : merged[i]) {
          if (a == f) a = added[i];
          if (b == f) b = added[i];
        }
      }
      if (a == b) child.unsat = true;
    }
    child.constraints.emplace_back(added[0], added[1]);
    child.steps.push_back({EdgeStep::Kind::Splice, e, added, merged, {}});
    out.push_back(std::move(child));
  }
  return out;
}

std::vector<int> select_splices(const EdgeInstance& ei) {
  std::vector<Edge> candidates;
  std::vector<int> ids;
  for (int e = 0; e < static_cast<int>(ei.edges.size()); ++e) {
    if (!spliceable(ei, e)) continue;
    candidates.emplace_back(std::min(ei.edges[e].first, ei.edges[e].second),
                            std::max(ei.edges[e].first, ei.edges[e].second));
    ids.push_back(e);
  }
  std::vector<int> out;
  for (const Edge& m : general_matching(ei.n, candidates)) {
    const auto it = std::find(candidates.begin(), candidates.end(), m);
    out.push_back(ids[it - candidates.begin()]);
  }
  return out;
}

ChargeCount charge_identity(const EdgeInstance& ei) {
  ChargeCount cc;
  cc.precondition = true;
  std::vector<bool> touched(ei.n, false);
  for (int e = 0; e < static_cast<int>(ei.edges.size()); ++e) {
    if (!ei.alive[e]) continue;
    touched[ei.edges[e].first] = touched[ei.edges[e].second] = true;
    const auto k = ei.adjacent_edges(e).size();
    if (k == 3) {
      ++cc.m3;
    } else if (k == 4) {
      ++cc.m4;
    } else {
      cc.precondition = false;
    }
  }
  const int n = static_cast<int>(std::count(touched.begin(), touched.end(), true));
  cc.holds = cc.precondition && 5 * cc.m3 == 6 * n - 4 * cc.m4;
  return cc;
}

Graph constrained_line_graph(const EdgeInstance& ei, std::vector<int>* ids) {
  std::vector<int> live;
  std::vector<int> index(ei.edges.size(), -1);
  for (int e = 0; e < static_cast<int>(ei.edges.size()); ++e) {
    if (!ei.alive[e]) continue;
    index[e] = static_cast<int>(live.size());
    live.push_back(e);
  }
  std::set<std::pair<int, int>> adj;
  auto link = [&](int a, int b) {
    if (a != b) adj.emplace(std::min(index[a], index[b]), std::max(index[a], index[b]));
  };
  for (int e : live) {
    for (int f : ei.adjacent_edges(e)) link(e, f);
  }
  for (auto [a, b] : ei.constraints) {
    if (ei.alive[a] && ei.alive[b]) link(a, b);
  }
  if (ids) *ids = live;
  return Graph{static_cast<int>(live.size()), {adj.begin(), adj.end()}};
}

bool proper_edge_coloring(const Graph& g, const std::vector<int>& colors) {
  if (colors.size() != g.edges.size()) return false;
  std::vector<std::set<int>> seen(g.n);
  for (std::size_t i = 0; i < colors.size(); ++i) {
    const auto [u, v] = g.edges[i];
    if (colors[i] < 0 || colors[i] > 2 || u == v) return false;
    if (!seen[u].insert(colors[i]).second || !seen[v].insert(colors[i]).second) return false;
  }
  return true;
}

namespace {

void add_stats(ColorStats& total, const ColorStats& s) {
  total.graph_nodes += s.graph_nodes;
  total.cycle_branches += s.cycle_branches;
  total.cycles_removed += s.cycles_removed;
  total.tree_branches += s.tree_branches;
  total.forest_leaves += s.forest_leaves;
  total.partial_colorings += s.partial_colorings;
  total.csp_nodes += s.csp_nodes;
  total.last_breakdown = s.last_breakdown;
}

struct OutOfBudget {};

class EdgeSearch {
 public:
  EdgeSearch(const SolverConfig& cfg, EdgeColorStats& stats, std::vector<int> plan)
      : cfg_(cfg), stats_(stats), plan_(std::move(plan)) {}

  std::optional<std::vector<int>> run(const EdgeInstance& ei, std::size_t i) {
    if (i == plan_.size()) return leaf(ei);
    if (!spliceable(ei, plan_[i])) {
      ++stats_.broken_splices;
      return run(ei, i + 1);
    }
    for (const EdgeInstance& child : splice(ei, plan_[i])) {
      if (child.unsat) {
        ++stats_.unsat_children;
        continue;
      }
      if (auto r = run(child, i + 1)) return r;
    }
    return std::nullopt;
  }

 private:
  const SolverConfig& cfg_;
  EdgeColorStats& stats_;
  std::vector<int> plan_;
  std::uint64_t used_ = 0;

  std::optional<std::vector<int>> leaf(const EdgeInstance& ei) {
    ++stats_.leaves;
    std::vector<int> ids;
    const Graph line = constrained_line_graph(ei, &ids);
    SolverConfig inner = cfg_;
    if (cfg_.node_limit) {
      if (used_ >= cfg_.node_limit) throw OutOfBudget{};
      inner.node_limit = cfg_.node_limit - used_;
    }
    const ColorResult r = color_graph(line, inner);
    add_stats(stats_.vertex, r.stats);
    used_ += r.stats.graph_nodes + r.stats.csp_nodes;
    if (r.status == SolveStatus::ResourceExhausted) throw OutOfBudget{};
    if (r.status != SolveStatus::Sat) return std::nullopt;
    std::vector<int> colors(ei.edges.size(), -1);
    for (std::size_t i = 0; i < ids.size(); ++i) colors[ids[i]] = r.colors[i];
    return ei.lift(colors);
  }
};

}  // namespace

EdgeColorResult edge_color(const Graph& g, const SolverConfig& cfg) {
  EdgeColorResult out;
  EdgeInstance ei = EdgeInstance::from_graph(g);
  if (ei.unsat || ei.max_degree() > 3) return out;
  out.stats.stripped = strip_edges(ei);
  const std::vector<int> plan = select_splices(ei);
  out.stats.splice_set = static_cast<int>(plan.size());
  try {
    EdgeSearch search(cfg, out.stats, plan);
    if (auto colors = search.run(ei, 0)) {
      if (!proper_edge_coloring(g, *colors)) throw std::logic_error("edge_color: lifted coloring is not proper");
      out.status = SolveStatus::Sat;
      out.colors = std::move(*colors);
    }
  } catch (const OutOfBudget&) {
    out.status = SolveStatus::ResourceExhausted;
  }
  return out;
}

}  // namespace tricolor
