#pragma once

// Exact 3-coloring: low-degree preprocessing, branching on cycles and large trees of
// degree-three vertices, then forest-guided partial colorings whose residue is solved
// as a (3,2)-CSP instance.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tricolor/multigraph.hpp"
#include "tricolor/solver.hpp"
#include "tricolor/transform.hpp"

namespace tricolor {

bool proper_coloring(const Graph& g, const std::vector<int>& colors);

struct GraphBranch {
  std::string rule;
  std::string branch;
  std::vector<MultiGraph> children;  // contradictory children are dropped
  std::vector<int> claimed;          // vertices removed from each child, counting merges
};

/// Shortest cycle among the degree-three vertices, in cycle order, or empty.
std::vector<int> find_degree3_cycle(const MultiGraph& g);
/// Handles one chordless cycle of degree-three vertices. A cycle that is even, or whose
/// outside neighbors include an adjacent consecutive pair, is removed in a single child.
std::optional<GraphBranch> branch_degree3_cycle(const MultiGraph& g);
/// Splits on which two neighbors of a central vertex share a color, for a tree of at
/// least eight degree-three vertices.
std::optional<GraphBranch> branch_degree3_tree(const MultiGraph& g);

struct BushyTree {
  int root = -1;
  std::vector<int> internal;  // parent before child, root first
  std::vector<int> leaves;
};

struct BushyForest {
  std::vector<BushyTree> trees;
  std::vector<int> parent;   // per vertex id; -1 for roots and outside vertices
  std::vector<int> tree_of;  // per vertex id; -1 outside the forest

  bool contains(int v) const { return tree_of[v] >= 0; }
  int leaf_count() const;
  int internal_count() const;
};

/// Greedy maximal bushy forest. Requires minimum degree three. Throws std::logic_error if
/// maximality fails, or if the uncovered part exceeds 20r/3 while the graph has no cycle of
/// degree-three vertices and no tree of eight or more of them.
BushyForest build_bushy_forest(const MultiGraph& g);

struct HeightTwoTree {
  int root = -1;
  std::array<int, 3> children{-1, -1, -1};
  std::array<std::vector<int>, 3> grandchildren;  // by child, at most two each

  int grandchild_count() const;
};

struct HeightTwoForest {
  std::vector<HeightTwoTree> trees;
  std::vector<int> x;  // uncovered vertices next to the bushy forest
  std::vector<int> y;  // vertices assigned as grandchildren
};

/// Packs disjoint stars K(1,3) outside the bushy forest, enlarges the packing by
/// one-for-two exchanges, then assigns the remaining vertices to stars by integer max
/// flow. Throws std::logic_error when an assignment-stage invariant fails.
HeightTwoForest build_height_two_forest(const MultiGraph& g, const BushyForest& f);

/// Vertex classes of a forest leaf: bushy roots, other internal nodes, bushy leaves,
/// vertices next to bushy leaves, and the rest.
struct ForestBreakdown {
  int p = 0, q = 0, r = 0, s = 0, t = 0;
};
ForestBreakdown breakdown(const MultiGraph& g, const BushyForest& f);

struct ColorStats {
  std::uint64_t graph_nodes = 0;
  std::uint64_t cycle_branches = 0;
  std::uint64_t cycles_removed = 0;  // cycles deleted without branching
  std::uint64_t tree_branches = 0;
  std::uint64_t forest_leaves = 0;
  std::uint64_t partial_colorings = 0;  // forest colorings handed to the CSP solver
  std::uint64_t csp_nodes = 0;
  ForestBreakdown last_breakdown;

  bool operator==(const ColorStats& o) const {
    return graph_nodes == o.graph_nodes && cycle_branches == o.cycle_branches &&
           cycles_removed == o.cycles_removed && tree_branches == o.tree_branches &&
           forest_leaves == o.forest_leaves && partial_colorings == o.partial_colorings &&
           csp_nodes == o.csp_nodes;
  }
};

struct ColorResult {
  SolveStatus status = SolveStatus::Unsat;  // Sat, Unsat or ResourceExhausted
  std::vector<int> colors;                  // per vertex when Sat
  ColorStats stats;
};

/// cfg.node_limit bounds graph nodes plus CSP search nodes; 0 means unlimited.
ColorResult color_graph(const Graph& g, const SolverConfig& cfg = {});

}  // namespace tricolor
