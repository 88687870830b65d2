#pragma once

// Graph of supervertices for the coloring reductions. Each live vertex stands for a
// group of original vertices that must share a color; removed vertices are recorded
// so a coloring of the remaining graph lifts back to the original one.

#include <map>
#include <memory>
#include <vector>

#include "tricolor/transform.hpp"

namespace tricolor {

class MultiGraph {
 public:
  /// Throws std::invalid_argument on an out-of-range endpoint. A self-loop in `g`
  /// makes the graph contradictory.
  explicit MultiGraph(const Graph& g);

  int capacity() const { return static_cast<int>(adj_.size()); }
  bool alive(int v) const { return alive_[v]; }
  int alive_count() const { return live_; }
  /// Live vertices in ascending order.
  std::vector<int> vertices() const;
  /// Distinct neighbors mapped to edge multiplicity.
  const std::map<int, int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  int multiplicity(int u, int v) const;
  bool adjacent(int u, int v) const { return adj_[u].count(v) > 0; }
  /// Original vertices merged into v.
  const std::vector<int>& members(int v) const { return members_[v]; }
  const Graph& original() const { return *orig_; }

  /// A loop (u == v) marks the graph contradictory. Returns !contradiction().
  bool add_edge(int u, int v);
  /// Merges b into a. Merging adjacent vertices marks the graph contradictory.
  bool merge(int a, int b);
  /// Removes v; lifting gives it a color not used by its colored neighbors.
  void remove_vertex(int v);
  /// Removes a chordless cycle whose outside neighbors leave it colorable; lifting
  /// colors it by dynamic programming around the cycle.
  void remove_cycle(const std::vector<int>& cycle);
  /// Repeatedly removes vertices of degree at most two. Returns them in removal order.
  std::vector<int> preprocess_low_degree();

  bool contradiction() const { return contradiction_; }

  /// Simple graph on the live vertices, renumbered in ascending order; ids[i] is the
  /// vertex behind index i.
  Graph compact(std::vector<int>* ids = nullptr) const;

  /// `colors` holds a color in 0..2 for every live vertex (indexed by vertex id, other
  /// entries ignored). Returns a coloring of the original graph. Throws std::logic_error
  /// if a recorded removal cannot be colored, which would mean a reduction was unsound.
  std::vector<int> lift(const std::vector<int>& colors) const;

 private:
  struct Removal {
    bool cycle = false;
    std::vector<std::vector<int>> groups;  // original vertices, cycle order when `cycle`
  };

  std::shared_ptr<const Graph> orig_;
  std::shared_ptr<const std::vector<std::vector<int>>> orig_adj_;
  std::vector<std::map<int, int>> adj_;
  std::vector<std::vector<int>> members_;
  std::vector<bool> alive_;
  int live_ = 0;
  bool contradiction_ = false;
  std::vector<Removal> removals_;
  std::vector<std::pair<int, int>> added_;  // added edges between original representatives

  void detach(int v);
};

}  // namespace tricolor
