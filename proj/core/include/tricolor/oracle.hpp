#pragma once

// Brute-force reference solvers and seeded instance generators for testing.

#include <cstdint>
#include <optional>
#include <vector>

#include "tricolor/csp.hpp"
#include "tricolor/transform.hpp"

namespace tricolor::oracle {

/// Refuses (std::length_error) when the search space exceeds this many points.
inline constexpr double kSpaceLimit = 1e8;

/// First satisfying assignment in odometer order over live variables.
std::optional<Assignment> brute_csp(const Instance& inst);
/// Every satisfying assignment, via odometer enumeration.
std::vector<Assignment> all_solutions(const Instance& inst);
/// Independent depth-first enumerator that checks each constraint as soon as both ends are set.
std::optional<Assignment> brute_csp_recursive(const Instance& inst);

/// Proper coloring with colors 0..2, or nullopt.
std::optional<std::vector<int>> brute_vertex_color(const Graph& g);
/// Color 0..2 per edge (in input order) with no two edges sharing an endpoint alike, or nullopt.
std::optional<std::vector<int>> brute_edge_color(const Graph& g);
/// values[1..n] satisfying f, or nullopt.
std::optional<std::vector<bool>> brute_sat(const Cnf& f);

bool proper_vertex_coloring(const Graph& g, const std::vector<int>& colors, int k = 3);
bool proper_edge_coloring(const Graph& g, const std::vector<int>& colors, int k = 3);

// Generators. Equal arguments give equal output.

/// n variables with a uniform color count in [min_colors, max_colors] and `constraints`
/// distinct random constraints (fewer if the instance saturates).
Instance random_csp(int n, int min_colors, int max_colors, int constraints, std::uint64_t seed);
/// As random_csp, but every constraint avoids one hidden assignment, which is returned too.
std::pair<Instance, Assignment> planted_csp(int n, int min_colors, int max_colors, int constraints,
                                            std::uint64_t seed);

/// Pairs get a uniform target degree in [min_degree, max_degree]; constraints join random
/// stubs, and no pair is joined to two colors of one variable. Most pairs reach their target.
/// A non-negative `four_color_max_degree` caps targets on four-color variables.
Instance random_pair_regular_csp(int n, int min_colors, int max_colors, int min_degree, int max_degree,
                                 std::uint64_t seed, int four_color_max_degree = -1);

Graph random_graph(int n, double p, std::uint64_t seed);
/// Random simple graph with maximum degree three and up to `m` edges.
Graph random_subcubic(int n, int m, std::uint64_t seed);
/// 3-regular simple graph by the pairing model with rejection; n must be even.
Graph random_cubic(int n, std::uint64_t seed);
/// Random graph whose edges join different classes of a hidden 3-partition (returned too).
std::pair<Graph, std::vector<int>> planted_3colorable(int n, double p, std::uint64_t seed);
/// Cubic graph = Hamiltonian cycle plus a perfect matching, with its 3-edge-coloring; n even, n >= 4.
std::pair<Graph, std::vector<int>> planted_edge_colorable_cubic(int n, std::uint64_t seed);
/// t clauses over n variables, each with three distinct variables and random signs.
Cnf random_3cnf(int n, int t, std::uint64_t seed);

}  // namespace tricolor::oracle
