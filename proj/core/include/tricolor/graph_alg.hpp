#pragma once

#include <utility>
#include <vector>

namespace tricolor {

using Edge = std::pair<int, int>;

/// Hopcroft-Karp. Edges are (left, right) with left in [0,n_left), right in [0,n_right).
/// Returns matched edges in increasing left order.
std::vector<Edge> bipartite_matching(int n_left, int n_right, const std::vector<Edge>& edges);

/// Edmonds' blossom algorithm on an undirected graph; parallel edges and loops are ignored.
/// Returns the matched edges (u < v) in increasing u order.
std::vector<Edge> general_matching(int n, const std::vector<Edge>& edges);

/// Directed network with integer capacities.
class FlowNetwork {
 public:
  explicit FlowNetwork(int nodes);

  /// Returns the arc id.
  int add_arc(int from, int to, long long capacity);
  /// Edmonds-Karp from `source` to `sink`; returns the flow value.
  long long max_flow(int source, int sink);

  long long flow(int arc) const { return arcs_[2 * arc].flow; }
  long long capacity(int arc) const { return arcs_[2 * arc].cap; }
  int from(int arc) const { return arcs_[2 * arc + 1].to; }
  int to(int arc) const { return arcs_[2 * arc].to; }
  int num_arcs() const { return static_cast<int>(arcs_.size() / 2); }
  int num_nodes() const { return static_cast<int>(adj_.size()); }

 private:
  struct Arc {
    int to;
    long long cap;
    long long flow;
  };
  std::vector<Arc> arcs_;  // arc 2i forward, 2i+1 residual twin
  std::vector<std::vector<int>> adj_;
};

}  // namespace tricolor
