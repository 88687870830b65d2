#pragma once

// 3-edge-coloring of graphs with maximum degree three: strip edges with few neighbors,
// splice out a matching of four-neighbor edges, and color the line graph of what is left.

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tricolor/solver.hpp"
#include "tricolor/transform.hpp"
#include "tricolor/vertex_color.hpp"

namespace tricolor {

struct EdgeStep {
  enum class Kind { Strip, Splice } kind = Kind::Strip;
  int edge = -1;  // stripped edge, or the spliced center edge
  std::array<int, 2> added{-1, -1};                 // splice: the two new edges
  std::array<std::array<int, 2>, 2> merged{};       // splice: originals colored like added[i]
  std::vector<int> partners;                        // strip: constraint partners at the time
};

/// Edge-coloring instance with difference constraints between edges. Edge ids are stable;
/// ids below `original_edges` are the input edges.
struct EdgeInstance {
  int n = 0;
  int original_edges = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<bool> alive;
  std::vector<std::pair<int, int>> constraints;  // edge ids that must get different colors
  bool unsat = false;                            // a splice produced a loop or a self-constraint
  std::vector<EdgeStep> steps;

  static EdgeInstance from_graph(const Graph& g);

  int degree(int v) const;
  int max_degree() const;
  std::vector<int> incident(int v) const;
  /// Distinct live edges sharing an endpoint with e.
  std::vector<int> adjacent_edges(int e) const;
  /// adjacent_edges plus constraint partners.
  std::vector<int> neighbors(int e) const;
  bool constrained(int e) const;
  int live_edges() const;

  /// Colors per live edge id (other entries ignored) to colors of the input edges. Throws
  /// std::logic_error if a recorded step cannot be undone, which would mean an unsound step.
  std::vector<int> lift(const std::vector<int>& colors) const;
};

/// Removes edges with at most two neighbors until none is left. Returns how many went.
int strip_edges(EdgeInstance& ei);

/// True when e is live and unconstrained, both endpoints have degree three, and e has
/// four distinct adjacent edges.
bool spliceable(const EdgeInstance& ei, int e);
/// The two ways of pairing the four neighbors of e. Children that gain a loop or a
/// self-constraint are returned with `unsat` set. Throws std::invalid_argument unless
/// spliceable(ei, e).
std::vector<EdgeInstance> splice(const EdgeInstance& ei, int e);

/// Maximum matching among the unconstrained four-neighbor edges, in matching order.
std::vector<int> select_splices(const EdgeInstance& ei);

struct ChargeCount {
  int m3 = 0;
  int m4 = 0;
  bool precondition = false;  // every live edge has three or four neighbors
  bool holds = false;         // 5 m3 == 6 n - 4 m4 over non-isolated vertices
};
ChargeCount charge_identity(const EdgeInstance& ei);

/// Simple graph on the live edges: adjacent when sharing an endpoint or constrained.
/// ids[i] is the edge behind vertex i.
Graph constrained_line_graph(const EdgeInstance& ei, std::vector<int>* ids = nullptr);

bool proper_edge_coloring(const Graph& g, const std::vector<int>& colors);

struct EdgeColorStats {
  int stripped = 0;
  int splice_set = 0;        // |S|
  std::uint64_t leaves = 0;  // line-graph colorings attempted
  std::uint64_t unsat_children = 0;
  std::uint64_t broken_splices = 0;  // matched edges whose preconditions failed when reached
  ColorStats vertex;                 // summed over leaves

  bool operator==(const EdgeColorStats& o) const {
    return stripped == o.stripped && splice_set == o.splice_set && leaves == o.leaves &&
           unsat_children == o.unsat_children && broken_splices == o.broken_splices && vertex == o.vertex;
  }
};

struct EdgeColorResult {
  SolveStatus status = SolveStatus::Unsat;
  std::vector<int> colors;  // per input edge when Sat
  EdgeColorStats stats;
};

/// Graphs with a loop or a vertex of degree above three are rejected as Unsat.
EdgeColorResult edge_color(const Graph& g, const SolverConfig& cfg = {});

}  // namespace tricolor
