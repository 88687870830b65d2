#pragma once

// Translations into (and decodings out of) the (d,2)-CSP form the solver consumes.

#include <optional>
#include <utility>
#include <vector>

#include "tricolor/csp.hpp"

namespace tricolor {

/// CNF over variables 1..num_vars; a literal is +v or -v.
struct Cnf {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;
};

/// Deduplicates literals and clauses and drops tautologies.
/// Throws std::invalid_argument for an empty clause, a clause wider than 3, or an out-of-range literal.
Cnf normalize_cnf(Cnf f);

/// Satisfied by every assignment that does not match all of a constraint's pairs.
struct GeneralCsp {
  std::vector<int> domain;                     // color count per variable
  std::vector<std::vector<PairRef>> constraints;
};

/// Drops pairs repeated within a constraint, constraints that name two colors of one
/// variable (never violated), and duplicate constraints.
GeneralCsp normalize(GeneralCsp csp);

struct DualMap {
  /// Dual variable i, color j rules out source pair origin[i][j].
  std::vector<std::vector<PairRef>> origin;
  std::vector<int> source_domain;
};

struct DualResult {
  GeneralCsp dual;
  DualMap back;
  bool unsat = false;  // some source constraint had no pairs
};

/// Exchanges variables and constraints: (a,b)-CSP -> (b,a)-CSP.
DualResult dualize(const GeneralCsp& csp);

/// Source assignment from a satisfying dual assignment (one color slot per dual variable).
/// `preference` orders the colors tried for each source variable; empty means ascending.
std::vector<int> decode_dual(const DualMap& back, const std::vector<int>& dual_asg,
                             const std::vector<int>& preference = {});

/// Packs a CSP with constraint arity <= 2 into an Instance. Unary constraints become color
/// removals; an empty constraint yields nullopt (unsatisfiable).
std::optional<Instance> to_instance(const GeneralCsp& csp);
GeneralCsp from_instance(const Instance& inst);

/// SAT variable colors in the (2,3)-CSP view.
inline constexpr int kTrue = 0;
inline constexpr int kFalse = 1;

struct SatTranslation {
  Instance instance;
  bool unsat = false;
  std::vector<int> forced;  // per SAT variable (1-based index): kTrue, kFalse, or -1
  DualMap back;
  int three_clauses = 0;
  int two_clauses = 0;
};

/// Unit propagation, then the dual of the residual 2- and 3-clauses.
SatTranslation sat_to_csp(const Cnf& f);
/// Boolean assignment (index 1..num_vars) from a satisfying CSP assignment; free variables are true.
std::vector<bool> decode_sat(const SatTranslation& tr, const Assignment& asg);
bool evaluate(const Cnf& f, const std::vector<bool>& values);

/// Plain undirected graph with vertices 0..n-1.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
};

/// One CSP variable per vertex with the vertex's color list (default {0,1,2}), one
/// constraint per edge and shared color. Returns nullopt if some list is empty.
std::optional<Instance> coloring_to_csp(const Graph& g, const std::vector<std::vector<int>>& lists = {});
/// Vertex colors (palette labels) from a CSP assignment.
std::vector<int> decode_coloring(const Instance& inst, const Assignment& asg);

}  // namespace tricolor
