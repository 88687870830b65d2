#include "tricolor/graph_alg.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace tricolor {

std::vector<Edge> bipartite_matching(int n_left, int n_right, const std::vector<Edge>& edges) {
  std::vector<std::vector<int>> adj(n_left);
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n_left || v < 0 || v >= n_right) throw std::out_of_range("bipartite_matching: bad edge");
    adj[u].push_back(v);
  }
  constexpr int kInf = std::numeric_limits<int>::max();
  std::vector<int> match_l(n_left, -1), match_r(n_right, -1), dist(n_left);

  auto bfs = [&] {
    std::queue<int> q;
    bool found = false;
    for (int u = 0; u < n_left; ++u) {
      dist[u] = match_l[u] < 0 ? 0 : kInf;
      if (match_l[u] < 0) q.push(u);
    }
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : adj[u]) {
        const int w = match_r[v];
        if (w < 0) {
          found = true;
        } else if (dist[w] == kInf) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  };
  std::vector<std::size_t> it(n_left);
  auto dfs = [&](auto&& self, int u) -> bool {
    for (; it[u] < adj[u].size(); ++it[u]) {
      const int v = adj[u][it[u]];
      const int w = match_r[v];
      if (w < 0 || (dist[w] == dist[u] + 1 && self(self, w))) {
        match_l[u] = v;
        match_r[v] = u;
        return true;
      }
    }
    dist[u] = kInf;
    return false;
  };
  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    for (int u = 0; u < n_left; ++u) {
      if (match_l[u] < 0) dfs(dfs, u);
    }
  }
  std::vector<Edge> out;
  for (int u = 0; u < n_left; ++u) {
    if (match_l[u] >= 0) out.emplace_back(u, match_l[u]);
  }
  return out;
}

std::vector<Edge> general_matching(int n, const std::vector<Edge>& edges) {
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) throw std::out_of_range("general_matching: bad edge");
    if (u == v) continue;
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }

  std::vector<int> match(n, -1), parent(n), base(n);
  std::vector<bool> used(n), blossom(n);

  auto lca = [&](int a, int b) {
    std::vector<bool> seen(n, false);
    while (true) {
      a = base[a];
      seen[a] = true;
      if (match[a] < 0) break;
      a = parent[match[a]];
    }
    while (true) {
      b = base[b];
      if (seen[b]) return b;
      b = parent[match[b]];
    }
  };
  auto mark_path = [&](int v, int b, int child) {
    while (base[v] != b) {
      blossom[base[v]] = blossom[base[match[v]]] = true;
      parent[v] = child;
      child = match[v];
      v = parent[match[v]];
    }
  };
  auto find_path = [&](int root) {
    std::fill(used.begin(), used.end(), false);
    std::fill(parent.begin(), parent.end(), -1);
    for (int i = 0; i < n; ++i) base[i] = i;
    used[root] = true;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int to : adj[v]) {
        if (base[v] == base[to] || match[v] == to) continue;
        if (to == root || (match[to] >= 0 && parent[match[to]] >= 0)) {
          const int cur = lca(v, to);
          std::fill(blossom.begin(), blossom.end(), false);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (int i = 0; i < n; ++i) {
            if (blossom[base[i]]) {
              base[i] = cur;
              if (!used[i]) {
                used[i] = true;
                q.push(i);
              }
            }
          }
        } else if (parent[to] < 0) {
          parent[to] = v;
          if (match[to] < 0) return to;
          used[match[to]] = true;
          q.push(match[to]);
        }
      }
    }
    return -1;
  };

  for (int v = 0; v < n; ++v) {
    if (match[v] >= 0) continue;
    int u = find_path(v);
    while (u >= 0) {
      const int pv = parent[u];
      const int ppv = match[pv];
      match[u] = pv;
      match[pv] = u;
      u = ppv;
    }
  }
  std::vector<Edge> out;
  for (int v = 0; v < n; ++v) {
    if (match[v] > v) out.emplace_back(v, match[v]);
  }
  return out;
}

FlowNetwork::FlowNetwork(int nodes) : adj_(nodes) {}

int FlowNetwork::add_arc(int from, int to, long long capacity) {
  if (capacity < 0) throw std::invalid_argument("FlowNetwork: negative capacity");
  const int id = num_arcs();
  adj_[from].push_back(2 * id);
  arcs_.push_back({to, capacity, 0});
  adj_[to].push_back(2 * id + 1);
  arcs_.push_back({from, 0, 0});
  return id;
}

long long FlowNetwork::max_flow(int source, int sink) {
  long long total = 0;
  while (true) {
    std::vector<int> via(adj_.size(), -1);
    std::queue<int> q;
    q.push(source);
    std::vector<bool> seen(adj_.size(), false);
    seen[source] = true;
    while (!q.empty() && !seen[sink]) {
      const int u = q.front();
      q.pop();
      for (int a : adj_[u]) {
        const Arc& arc = arcs_[a];
        if (!seen[arc.to] && arc.cap - arc.flow > 0) {
          seen[arc.to] = true;
          via[arc.to] = a;
          q.push(arc.to);
        }
      }
    }
    if (!seen[sink]) break;
    long long push = std::numeric_limits<long long>::max();
    for (int v = sink; v != source; v = arcs_[via[v] ^ 1].to) {
      push = std::min(push, arcs_[via[v]].cap - arcs_[via[v]].flow);
    }
    for (int v = sink; v != source; v = arcs_[via[v] ^ 1].to) {
      arcs_[via[v]].flow += push;
      arcs_[via[v] ^ 1].flow -= push;
    }
    total += push;
  }
  return total;
}

}  // namespace tricolor
