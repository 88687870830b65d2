#include "tricolor/vertex_color.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "tricolor/graph_alg.hpp"

namespace tricolor {

bool proper_coloring(const Graph& g, const std::vector<int>& colors) {
  if (static_cast<int>(colors.size()) != g.n) return false;
  for (int c : colors) {
    if (c < 0 || c > 2) return false;
  }
  return std::all_of(g.edges.begin(), g.edges.end(),
                     [&](const auto& e) { return colors[e.first] != colors[e.second]; });
}

namespace {

bool degree3(const MultiGraph& g, int v) { return g.alive(v) && g.degree(v) == 3; }

std::vector<int> neighbor_list(const MultiGraph& g, int v) {
  std::vector<int> out;
  for (const auto& [w, mult] : g.neighbors(v)) out.push_back(w);
  return out;
}

// Connected components of the subgraph induced by degree-three vertices.
std::vector<std::vector<int>> degree3_components(const MultiGraph& g) {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(g.capacity(), false);
  for (int s : g.vertices()) {
    if (seen[s] || !degree3(g, s)) continue;
    std::vector<int> comp{s};
    seen[s] = true;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (const auto& [w, mult] : g.neighbors(comp[i])) {
        if (!seen[w] && degree3(g, w)) {
          seen[w] = true;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

int induced_edges(const MultiGraph& g, const std::vector<int>& comp) {
  int twice = 0;
  for (int v : comp) {
    for (const auto& [w, mult] : g.neighbors(v)) {
      if (std::binary_search(comp.begin(), comp.end(), w)) ++twice;
    }
  }
  return twice / 2;
}

}  // namespace

std::vector<int> find_degree3_cycle(const MultiGraph& g) {
  const int n = g.capacity();
  std::vector<int> best;
  for (int s : g.vertices()) {
    if (!degree3(g, s)) continue;
    std::vector<int> dist(n, -1), par(n, -1);
    std::deque<int> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      if (!best.empty() && 2 * dist[u] + 1 >= static_cast<int>(best.size())) break;
      for (const auto& [w, mult] : g.neighbors(u)) {
        if (!degree3(g, w) || w == par[u]) continue;
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          par[w] = u;
          queue.push_back(w);
          continue;
        }
        const int len = dist[u] + dist[w] + 1;
        if (!best.empty() && len >= static_cast<int>(best.size())) continue;
        std::vector<int> up, wp;
        for (int x = u; x != -1; x = par[x]) up.push_back(x);
        for (int x = w; x != -1; x = par[x]) wp.push_back(x);
        std::set<int> shared(up.begin(), up.end());
        int common = 0;
        for (int x : wp) common += static_cast<int>(shared.count(x));
        if (common != 1) continue;  // the two paths meet below s
        std::vector<int> cycle(up.rbegin(), up.rend());
        cycle.insert(cycle.end(), wp.begin(), wp.end() - 1);
        best = std::move(cycle);
      }
    }
  }
  return best;
}

std::optional<GraphBranch> branch_degree3_cycle(const MultiGraph& g) {
  const std::vector<int> c = find_degree3_cycle(g);
  if (c.empty()) return std::nullopt;
  const int k = static_cast<int>(c.size());
  std::vector<int> w(k, -1);
  for (int i = 0; i < k; ++i) {
    const int prev = c[(i + k - 1) % k];
    const int next = c[(i + 1) % k];
    for (const auto& [x, mult] : g.neighbors(c[i])) {
      if (x != prev && x != next) w[i] = x;
    }
  }
  GraphBranch b{"degree-3-cycle", "", {}, {}};
  auto add = [&](MultiGraph child) {
    if (child.contradiction()) return;
    b.claimed.push_back(g.alive_count() - child.alive_count());
    b.children.push_back(std::move(child));
  };
  bool removable = k % 2 == 0;
  for (int i = 0; i < k && !removable; ++i) {
    const int a = w[i], d = w[(i + 1) % k];
    removable = a != d && g.adjacent(a, d);
  }
  if (removable) {
    b.branch = "removable cycle";
    MultiGraph child = g;
    child.remove_cycle(c);
    add(std::move(child));
    return b;
  }
  if (k == 3) {
    b.branch = "triangle";
    MultiGraph apart = g;
    apart.add_edge(w[0], w[1]);
    apart.remove_cycle(c);
    add(std::move(apart));
    MultiGraph same = g;
    if (same.merge(w[0], w[1])) same.merge(w[0], c[2]);
    add(std::move(same));
    return b;
  }
  b.branch = "odd cycle";
  MultiGraph apart = g;
  apart.add_edge(w[0], w[1]);
  apart.remove_cycle(c);
  add(std::move(apart));
  MultiGraph pair = g;
  if (pair.merge(w[0], w[1])) pair.add_edge(w[0], w[2]);
  pair.remove_cycle(c);
  add(std::move(pair));
  MultiGraph all = g;
  if (all.merge(w[0], w[1]) && all.merge(w[0], w[2])) all.merge(c[0], c[2]);
  add(std::move(all));
  return b;
}

std::optional<GraphBranch> branch_degree3_tree(const MultiGraph& g) {
  for (const auto& comp : degree3_components(g)) {
    const int k = static_cast<int>(comp.size());
    if (k < 8 || induced_edges(g, comp) != k - 1) continue;
    auto in_comp = [&](int x) { return std::binary_search(comp.begin(), comp.end(), x); };
    // Size of the part of the tree reached from `start` without passing `cut`.
    auto subtree = [&](int start, int cut) {
      if (!in_comp(start)) return 0;
      std::vector<int> seen{cut, start};
      for (std::size_t i = 1; i < seen.size(); ++i) {
        for (const auto& [x, mult] : g.neighbors(seen[i])) {
          if (in_comp(x) && std::find(seen.begin(), seen.end(), x) == seen.end()) seen.push_back(x);
        }
      }
      return static_cast<int>(seen.size()) - 1;
    };
    int center = -1, best = k + 1;
    for (int v : comp) {
      int worst = 0;
      for (const auto& [x, mult] : g.neighbors(v)) worst = std::max(worst, subtree(x, v));
      if (worst < best) {
        best = worst;
        center = v;
      }
    }
    const std::vector<int> nb = neighbor_list(g, center);
    GraphBranch b{"degree-3-tree", "", {}, {}};
    b.branch = "tree of " + std::to_string(k);
    const int pairs[3][3] = {{0, 1, 2}, {0, 2, 1}, {1, 2, 0}};
    for (const auto& p : pairs) {
      MultiGraph child = g;
      if (!child.merge(nb[p[0]], nb[p[1]])) continue;
      b.claimed.push_back(2 + subtree(nb[p[2]], center));
      b.children.push_back(std::move(child));
    }
    return b;
  }
  return std::nullopt;
}

int BushyForest::leaf_count() const {
  int r = 0;
  for (const auto& t : trees) r += static_cast<int>(t.leaves.size());
  return r;
}

int BushyForest::internal_count() const {
  int r = 0;
  for (const auto& t : trees) r += static_cast<int>(t.internal.size());
  return r;
}

BushyForest build_bushy_forest(const MultiGraph& g) {
  const int n = g.capacity();
  BushyForest f;
  f.parent.assign(n, -1);
  f.tree_of.assign(n, -1);
  for (int v : g.vertices()) {
    if (g.degree(v) < 3) throw std::invalid_argument("build_bushy_forest: vertex of degree below three");
  }
  auto outside = [&](int v) {
    std::vector<int> out;
    for (const auto& [w, mult] : g.neighbors(v)) {
      if (f.tree_of[w] < 0) out.push_back(w);
    }
    return out;
  };
  auto attach = [&](int t, int at, const std::vector<int>& leaves) {
    for (int w : leaves) {
      f.tree_of[w] = t;
      f.parent[w] = at;
      f.trees[t].leaves.push_back(w);
    }
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int t = 0; t < static_cast<int>(f.trees.size()); ++t) {
      for (std::size_t i = 0; i < f.trees[t].leaves.size(); ++i) {
        const int leaf = f.trees[t].leaves[i];
        const auto out = outside(leaf);
        if (out.size() < 3) continue;
        f.trees[t].leaves.erase(f.trees[t].leaves.begin() + static_cast<long>(i));
        f.trees[t].internal.push_back(leaf);
        attach(t, leaf, out);
        changed = true;
        i = static_cast<std::size_t>(-1);  // rescan this tree
      }
    }
    for (int v : g.vertices()) {
      if (f.tree_of[v] >= 0) continue;
      const auto out = outside(v);
      if (out.size() < 4) continue;
      const int t = static_cast<int>(f.trees.size());
      f.trees.push_back({v, {v}, {}});
      f.tree_of[v] = t;
      attach(t, v, out);
      changed = true;
      break;
    }
  }
  for (auto& t : f.trees) std::sort(t.leaves.begin(), t.leaves.end());

  for (const auto& t : f.trees) {
    for (int v : t.internal) {
      if (!outside(v).empty()) throw std::logic_error("bushy forest: internal node next to an outside vertex");
    }
    for (int v : t.leaves) {
      if (outside(v).size() >= 3) throw std::logic_error("bushy forest: leaf with three outside neighbors");
    }
  }
  int uncovered = 0;
  for (int v : g.vertices()) {
    if (f.tree_of[v] >= 0) continue;
    ++uncovered;
    if (outside(v).size() >= 4) throw std::logic_error("bushy forest: outside vertex with four outside neighbors");
  }
  bool small_trees = find_degree3_cycle(g).empty();
  for (const auto& comp : degree3_components(g)) small_trees = small_trees && comp.size() <= 7;
  if (small_trees && 3 * uncovered > 20 * f.leaf_count()) {
    throw std::logic_error("bushy forest: uncovered part exceeds 20r/3");
  }
  return f;
}

int HeightTwoTree::grandchild_count() const {
  int total = 0;
  for (const auto& gc : grandchildren) total += static_cast<int>(gc.size());
  return total;
}

HeightTwoForest build_height_two_forest(const MultiGraph& g, const BushyForest& f) {
  const int n = g.capacity();
  std::vector<bool> rest(n, false);
  for (int v : g.vertices()) rest[v] = !f.contains(v);
  std::vector<std::vector<int>> nr(n);
  for (int v : g.vertices()) {
    if (!rest[v]) continue;
    for (const auto& [w, mult] : g.neighbors(v)) {
      if (rest[w]) nr[v].push_back(w);
    }
    if (nr[v].size() > 3) throw std::logic_error("height-two forest: outside vertex with four outside neighbors");
  }

  // owner[v]: center of the star holding v, or -1.
  std::vector<int> owner(n, -1);
  auto candidate = [&](int c) {
    if (!rest[c] || owner[c] >= 0 || nr[c].size() != 3) return false;
    return std::all_of(nr[c].begin(), nr[c].end(), [&](int x) { return owner[x] < 0; });
  };
  auto take = [&](int c) {
    owner[c] = c;
    for (int x : nr[c]) owner[x] = c;
  };
  auto release = [&](int c) {
    owner[c] = -1;
    for (int x : nr[c]) owner[x] = -1;
  };
  auto greedy = [&] {
    for (int c = 0; c < n; ++c) {
      if (candidate(c)) take(c);
    }
  };
  auto disjoint = [&](int a, int b) {
    std::set<int> s(nr[a].begin(), nr[a].end());
    s.insert(a);
    if (s.count(b)) return false;
    return std::none_of(nr[b].begin(), nr[b].end(), [&](int x) { return s.count(x) > 0; });
  };
  greedy();
  for (bool improved = true; improved;) {
    improved = false;
    for (int t = 0; t < n && !improved; ++t) {
      if (owner[t] != t) continue;
      release(t);
      std::vector<int> cs;
      for (int c = 0; c < n; ++c) {
        if (candidate(c)) cs.push_back(c);
      }
      for (std::size_t i = 0; i < cs.size() && !improved; ++i) {
        for (std::size_t j = i + 1; j < cs.size() && !improved; ++j) {
          if (!disjoint(cs[i], cs[j])) continue;
          take(cs[i]);
          take(cs[j]);
          greedy();
          improved = true;
        }
      }
      if (!improved) take(t);
    }
  }

  HeightTwoForest h;
  std::vector<int> tree_index(n, -1);
  for (int c = 0; c < n; ++c) {
    if (owner[c] != c) continue;
    tree_index[c] = static_cast<int>(h.trees.size());
    HeightTwoTree t;
    t.root = c;
    std::vector<int> kids = nr[c];
    std::sort(kids.begin(), kids.end());
    std::copy(kids.begin(), kids.end(), t.children.begin());
    h.trees.push_back(t);
  }
  for (int v = 0; v < n; ++v) {
    if (!rest[v] || owner[v] >= 0) continue;
    const bool near_forest = std::any_of(g.neighbors(v).begin(), g.neighbors(v).end(),
                                         [&](const auto& e) { return f.contains(e.first); });
    (near_forest ? h.x : h.y).push_back(v);
  }

  // Source 0, sink 1, trees from 2, then the Y vertices.
  const int trees = static_cast<int>(h.trees.size());
  const int ys = static_cast<int>(h.y.size());
  FlowNetwork net(2 + trees + ys);
  for (int t = 0; t < trees; ++t) {
    const auto& tr = h.trees[t];
    bool high = g.degree(tr.root) >= 4;
    for (int x : tr.children) high = high || g.degree(x) >= 4;
    net.add_arc(0, 2 + t, high ? 5 : 3);
  }
  std::vector<std::vector<int>> arcs_of(ys);
  for (int i = 0; i < ys; ++i) {
    std::set<int> adjacent_trees;
    for (int x : nr[h.y[i]]) {
      if (owner[x] >= 0) adjacent_trees.insert(tree_index[owner[x]]);
    }
    if (adjacent_trees.empty()) {
      throw std::logic_error("height-two forest: vertex " + std::to_string(h.y[i]) + " has no adjacent star");
    }
    for (int t : adjacent_trees) arcs_of[i].push_back(net.add_arc(2 + t, 2 + trees + i, 1));
    net.add_arc(2 + trees + i, 1, 1);
  }
  if (net.max_flow(0, 1) != ys) throw std::logic_error("height-two forest: flow leaves a vertex unassigned");
  for (int i = 0; i < ys; ++i) {
    const int y = h.y[i];
    for (int a : arcs_of[i]) {
      if (net.flow(a) == 0) continue;
      auto& tr = h.trees[net.from(a) - 2];
      for (int k = 0; k < 3; ++k) {
        if (g.adjacent(tr.children[k], y)) {
          tr.grandchildren[k].push_back(y);
          break;
        }
      }
    }
  }
  for (const auto& tr : h.trees) {
    std::array<int, 3> sizes{};
    bool high = g.degree(tr.root) >= 4;
    for (int k = 0; k < 3; ++k) {
      sizes[k] = static_cast<int>(tr.grandchildren[k].size());
      high = high || g.degree(tr.children[k]) >= 4;
    }
    std::sort(sizes.begin(), sizes.end());
    const int total = tr.grandchild_count();
    if (sizes[2] > 2 || total > 5 || (total >= 4 && !high) || (total == 5 && sizes != std::array<int, 3>{1, 2, 2})) {
      throw std::logic_error("height-two forest: tree at " + std::to_string(tr.root) + " breaks the shape bounds");
    }
  }
  return h;
}

ForestBreakdown breakdown(const MultiGraph& g, const BushyForest& f) {
  ForestBreakdown b;
  b.p = static_cast<int>(f.trees.size());
  b.q = f.internal_count() - b.p;
  b.r = f.leaf_count();
  for (int v : g.vertices()) {
    if (f.contains(v)) continue;
    const bool near = std::any_of(g.neighbors(v).begin(), g.neighbors(v).end(),
                                  [&](const auto& e) { return f.contains(e.first); });
    ++(near ? b.s : b.t);
  }
  return b;
}

namespace {

struct OutOfBudget {};

class Colorer {
 public:
  Colorer(const SolverConfig& cfg, ColorStats& stats) : cfg_(cfg), stats_(stats) {}

  std::optional<std::vector<int>> search(MultiGraph g) {
    ++stats_.graph_nodes;
    spend(1);
    g.preprocess_low_degree();
    if (g.contradiction()) return std::nullopt;
    if (g.alive_count() == 0) return g.lift(std::vector<int>(g.capacity(), -1));
    auto b = branch_degree3_cycle(g);
    if (b) {
      ++(b->branch == "removable cycle" ? stats_.cycles_removed : stats_.cycle_branches);
    } else if ((b = branch_degree3_tree(g))) {
      ++stats_.tree_branches;
    }
    if (b) {
      for (auto& child : b->children) {
        if (auto r = search(std::move(child))) return r;
      }
      return std::nullopt;
    }
    return leaf(g);
  }

 private:
  const SolverConfig& cfg_;
  ColorStats& stats_;
  std::uint64_t used_ = 0;

  void spend(std::uint64_t n) {
    used_ += n;
    if (cfg_.node_limit && used_ > cfg_.node_limit) throw OutOfBudget{};
  }

  std::optional<std::vector<int>> leaf(const MultiGraph& g) {
    ++stats_.forest_leaves;
    for (const auto& comp : degree3_components(g)) {
      if (comp.size() > 7 || induced_edges(g, comp) != static_cast<int>(comp.size()) - 1) {
        throw std::logic_error("color_graph: degree-three vertices left a cycle or a large tree");
      }
    }
    const BushyForest f = build_bushy_forest(g);
    const HeightTwoForest h = build_height_two_forest(g, f);
    stats_.last_breakdown = breakdown(g, f);

    std::vector<int> order;
    for (const auto& t : f.trees) order.insert(order.end(), t.internal.begin(), t.internal.end());
    for (const auto& t : h.trees) {
      if (t.grandchild_count() < 5) {
        order.push_back(t.root);
        continue;
      }
      for (int k = 0; k < 3; ++k) {
        if (t.grandchildren[k].size() == 2) order.push_back(t.children[k]);
      }
    }
    std::vector<int> colors(g.capacity(), -1);
    return assign(g, order, 0, colors);
  }

  static int blocked(const MultiGraph& g, int v, const std::vector<int>& colors) {
    int mask = 0;
    for (const auto& [w, mult] : g.neighbors(v)) {
      if (colors[w] >= 0) mask |= 1 << colors[w];
    }
    return mask;
  }

  std::optional<std::vector<int>> assign(const MultiGraph& g, const std::vector<int>& order, std::size_t i,
                                         std::vector<int>& colors) {
    if (i == order.size()) return residual(g, colors);
    const int v = order[i];
    const int mask = blocked(g, v, colors);
    for (int c = 0; c < 3; ++c) {
      if (mask & (1 << c)) continue;
      colors[v] = c;
      bool dead = false;
      for (const auto& [w, mult] : g.neighbors(v)) {
        if (colors[w] < 0 && blocked(g, w, colors) == 7) dead = true;
      }
      if (!dead) {
        if (auto r = assign(g, order, i + 1, colors)) return r;
      }
      colors[v] = -1;
    }
    return std::nullopt;
  }

  // Colors the uncolored vertices by the CSP solver, with palettes cut by colored neighbors.
  std::optional<std::vector<int>> residual(const MultiGraph& g, const std::vector<int>& colors) {
    ++stats_.partial_colorings;
    std::vector<int> index(g.capacity(), -1);
    std::vector<int> open;
    for (int v : g.vertices()) {
      if (colors[v] < 0) {
        index[v] = static_cast<int>(open.size());
        open.push_back(v);
      }
    }
    Graph sub{static_cast<int>(open.size()), {}};
    std::vector<std::vector<int>> lists;
    for (int v : open) {
      const int mask = blocked(g, v, colors);
      std::vector<int> list;
      for (int c = 0; c < 3; ++c) {
        if (!(mask & (1 << c))) list.push_back(c);
      }
      lists.push_back(std::move(list));
      for (const auto& [w, mult] : g.neighbors(v)) {
        if (index[w] > index[v]) sub.edges.emplace_back(index[v], index[w]);
      }
    }
    const auto inst = coloring_to_csp(sub, lists);
    if (!inst) return std::nullopt;
    SolverConfig inner;
    inner.seed = cfg_.seed;
    if (cfg_.node_limit) inner.node_limit = std::max<std::uint64_t>(1, cfg_.node_limit - used_);
    const SolveResult r = solve_deterministic(*inst, inner);
    stats_.csp_nodes += r.stats.nodes;
    spend(r.stats.nodes);
    if (r.status == SolveStatus::ResourceExhausted) throw OutOfBudget{};
    if (r.status != SolveStatus::Sat) return std::nullopt;
    std::vector<int> full = colors;
    const std::vector<int> sub_colors = decode_coloring(*inst, r.assignment);
    for (std::size_t i = 0; i < open.size(); ++i) full[open[i]] = sub_colors[i];
    return g.lift(full);
  }
};

}  // namespace

ColorResult color_graph(const Graph& g, const SolverConfig& cfg) {
  ColorResult out;
  Colorer colorer(cfg, out.stats);
  try {
    const MultiGraph start(g);
    auto colors = start.contradiction() ? std::nullopt : colorer.search(start);
    if (colors) {
      if (!proper_coloring(g, *colors)) throw std::logic_error("color_graph: lifted coloring is not proper");
      out.status = SolveStatus::Sat;
      out.colors = std::move(*colors);
    } else {
      out.status = SolveStatus::Unsat;
    }
  } catch (const OutOfBudget&) {
    out.status = SolveStatus::ResourceExhausted;
  }
  return out;
}

}  // namespace tricolor
