#pragma once

// Work factors of branching vectors and the composed running-time bases.

#include <string>
#include <vector>

namespace tricolor::analysis {

/// Size decreases (r1,...,rk) of the subinstances produced by one branching step.
using BranchVector = std::vector<double>;

/// Largest root of 1 - sum x^(-ri). Throws std::invalid_argument on an empty vector or a
/// non-positive entry.
double work_factor(const BranchVector& v);

/// 1 - sum x^(-ri).
double characteristic(const BranchVector& v, double x);

struct EpsilonOptimum {
  double epsilon;
  double lambda;      // common value of the two balanced work factors
  double imbalance;   // |lambda(3-e,4-e,4-e) - lambda(1+e,4)| at the returned epsilon
};

/// Balances lambda(3-e,4-e,4-e) against lambda(1+e,4) by bisection on (0, 0.2).
EpsilonOptimum optimize_epsilon();

/// lambda(4,4,5,5), the base of the (3,2)/(4,2)-CSP bound.
double big_lambda();

struct LemmaRow {
  std::string lemma;    // branching rule
  std::string branch;   // case within the rule
  BranchVector vector;  // evaluated at the fixed epsilon
  double factor;
  double claimed;       // bound stated for the whole rule
  bool exceeds_claim;   // factor > claimed + 1e-9
};

/// One row per case of every CSP branching rule, plus the vertex-coloring rules.
std::vector<LemmaRow> lemma_table(double epsilon);
std::vector<LemmaRow> lemma_table();

struct LemmaSummary {
  double max_claimed;      // largest per-rule bound
  double max_case;         // largest case factor, including cases above their rule's bound
  std::vector<std::string> exceeding;
};
LemmaSummary summarize(const std::vector<LemmaRow>& table);

/// Vertex counts by role in the forest covering of a degree-3 graph.
struct BoundBreakdown {
  double p = 0;  // bushy-forest roots
  double q = 0;  // other bushy-forest internal nodes
  double r = 0;  // bushy-forest leaves
  double s = 0;  // neighbors of bushy-forest leaves
  double t = 0;  // degree-3 vertices of the height-two forest
};

/// Per-vertex base 3^p 2^q L^s (3L^3)^(t/7) of a breakdown normalized to n = 1.
double breakdown_base(const BoundBreakdown& b, double lambda);
/// Feasible vertex of the breakdown polytope (n = 1) maximizing breakdown_base.
BoundBreakdown worst_breakdown(double lambda);
bool feasible(const BoundBreakdown& b, double tol = 1e-9);

struct NamedConstant {
  std::string name;
  std::string formula;
  double value;
};

/// Composed bases for coloring, edge coloring and (d,2)-CSP.
std::vector<NamedConstant> bound_report();
double coloring_coefficient(int d);  // base of the (d,2)-CSP bound, d >= 3

}  // namespace tricolor::analysis
