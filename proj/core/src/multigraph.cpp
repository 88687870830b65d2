#include "tricolor/multigraph.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace tricolor {

MultiGraph::MultiGraph(const Graph& g)
    : orig_(std::make_shared<Graph>(g)), adj_(g.n), members_(g.n), alive_(g.n, true), live_(g.n) {
  auto orig_adj = std::make_shared<std::vector<std::vector<int>>>(g.n);
  for (int v = 0; v < g.n; ++v) members_[v] = {v};
  for (auto [u, v] : g.edges) {
    if (u < 0 || v < 0 || u >= g.n || v >= g.n) {
      throw std::invalid_argument("MultiGraph: edge endpoint out of range");
    }
    (*orig_adj)[u].push_back(v);
    if (u != v) (*orig_adj)[v].push_back(u);
    add_edge(u, v);
  }
  orig_adj_ = std::move(orig_adj);
}

std::vector<int> MultiGraph::vertices() const {
  std::vector<int> out;
  for (int v = 0; v < capacity(); ++v) {
    if (alive_[v]) out.push_back(v);
  }
  return out;
}

int MultiGraph::multiplicity(int u, int v) const {
  const auto it = adj_[u].find(v);
  return it == adj_[u].end() ? 0 : it->second;
}

bool MultiGraph::add_edge(int u, int v) {
  if (u == v) {
    contradiction_ = true;
    return false;
  }
  ++adj_[u][v];
  ++adj_[v][u];
  if (orig_adj_) added_.emplace_back(members_[u].front(), members_[v].front());
  return !contradiction_;
}

bool MultiGraph::merge(int a, int b) {
  if (a == b) return !contradiction_;
  if (adjacent(a, b)) {
    contradiction_ = true;
    return false;
  }
  for (const auto& [w, mult] : adj_[b]) {
    adj_[w].erase(b);
    adj_[a][w] += mult;
    adj_[w][a] += mult;
  }
  adj_[b].clear();
  members_[a].insert(members_[a].end(), members_[b].begin(), members_[b].end());
  members_[b].clear();
  alive_[b] = false;
  --live_;
  return !contradiction_;
}

void MultiGraph::detach(int v) {
  for (const auto& [w, mult] : adj_[v]) adj_[w].erase(v);
  adj_[v].clear();
  alive_[v] = false;
  --live_;
}

void MultiGraph::remove_vertex(int v) {
  removals_.push_back({false, {members_[v]}});
  detach(v);
}

void MultiGraph::remove_cycle(const std::vector<int>& cycle) {
  Removal r{true, {}};
  for (int v : cycle) r.groups.push_back(members_[v]);
  removals_.push_back(std::move(r));
  for (int v : cycle) detach(v);
}

std::vector<int> MultiGraph::preprocess_low_degree() {
  std::vector<int> order;
  std::vector<int> stack;
  for (int v = capacity() - 1; v >= 0; --v) {
    if (alive_[v] && degree(v) <= 2) stack.push_back(v);
  }
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    if (!alive_[v] || degree(v) > 2) continue;
    std::vector<int> nbrs;
    for (const auto& [w, mult] : adj_[v]) nbrs.push_back(w);
    remove_vertex(v);
    order.push_back(v);
    for (int w : nbrs) {
      if (degree(w) <= 2) stack.push_back(w);
    }
  }
  return order;
}

Graph MultiGraph::compact(std::vector<int>* ids) const {
  const std::vector<int> live = vertices();
  std::vector<int> index(capacity(), -1);
  for (std::size_t i = 0; i < live.size(); ++i) index[live[i]] = static_cast<int>(i);
  Graph g{static_cast<int>(live.size()), {}};
  for (int v : live) {
    for (const auto& [w, mult] : adj_[v]) {
      if (index[v] < index[w]) g.edges.emplace_back(index[v], index[w]);
    }
  }
  if (ids) *ids = live;
  return g;
}

namespace {

using Palette = std::array<bool, 3>;

// Colors a cycle of groups with per-group palettes so consecutive groups differ.
bool color_cycle(const std::vector<Palette>& allowed, std::vector<int>& out) {
  const int k = static_cast<int>(allowed.size());
  for (int first = 0; first < 3; ++first) {
    if (!allowed[0][first]) continue;
    // from[i][c]: color of group i-1 that reaches color c at group i, or -1.
    std::vector<std::array<int, 3>> from(k, {-1, -1, -1});
    std::vector<Palette> reach(k, {false, false, false});
    reach[0][first] = true;
    for (int i = 1; i < k; ++i) {
      for (int c = 0; c < 3; ++c) {
        if (!allowed[i][c] || (i == k - 1 && c == first)) continue;
        for (int p = 0; p < 3; ++p) {
          if (p != c && reach[i - 1][p]) {
            reach[i][c] = true;
            from[i][c] = p;
            break;
          }
        }
      }
    }
    for (int c = 0; c < 3; ++c) {
      if (!reach[k - 1][c]) continue;
      out.assign(k, -1);
      out[k - 1] = c;
      for (int i = k - 1; i > 0; --i) out[i - 1] = from[i][out[i]];
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<int> MultiGraph::lift(const std::vector<int>& colors) const {
  const Graph& g = *orig_;
  std::vector<std::vector<int>> oadj = *orig_adj_;
  for (auto [a, b] : added_) {
    oadj[a].push_back(b);
    oadj[b].push_back(a);
  }
  std::vector<int> out(g.n, -1);
  for (int v = 0; v < capacity(); ++v) {
    if (!alive_[v]) continue;
    for (int m : members_[v]) out[m] = colors.at(v);
  }
  auto palette = [&](const std::vector<int>& group) {
    Palette p{true, true, true};
    for (int m : group) {
      for (int w : oadj[m]) {
        if (out[w] >= 0) p[out[w]] = false;
      }
    }
    return p;
  };
  for (auto r = removals_.rbegin(); r != removals_.rend(); ++r) {
    if (!r->cycle) {
      const Palette p = palette(r->groups[0]);
      int c = 0;
      while (c < 3 && !p[c]) ++c;
      if (c == 3) throw std::logic_error("MultiGraph::lift: removed vertex has no free color");
      for (int m : r->groups[0]) out[m] = c;
      continue;
    }
    std::vector<Palette> allowed;
    for (const auto& group : r->groups) allowed.push_back(palette(group));
    std::vector<int> cyc;
    if (!color_cycle(allowed, cyc)) throw std::logic_error("MultiGraph::lift: removed cycle cannot be colored");
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      for (int m : r->groups[i]) out[m] = cyc[i];
    }
  }
  return out;
}

}  // namespace tricolor
