#pragma once

// Branch-and-reduce search for (3,2)- and (4,2)-CSP instances, the matching
// endgame, and the two randomized drivers.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tricolor/csp.hpp"

namespace tricolor {

struct BranchChild {
  Instance instance;
  LiftTrace trace;  // maps a solution of `instance` back to the parent
};

struct BranchSet {
  std::string rule;
  std::string branch;  // case within the rule
  std::vector<BranchChild> children;
  std::vector<double> claimed;  // size decrease promised for each child
};

/// Rule names in dispatch order.
inline constexpr const char* kRuleNames[] = {
    "isolated",   "dangling",        "multiple-adjacency",   "high-degree", "triple-with-four",
    "triple-with-two", "small-three-component", "large-three-component", "large-two-component"};

// Individual branching rules. Each expects a reduced instance in which no earlier rule
// applies, and returns nullopt when its pattern is absent.
std::optional<BranchSet> branch_isolated(const Instance& inst);
std::optional<BranchSet> branch_dangling(const Instance& inst);
std::optional<BranchSet> branch_multiple_adjacency(const Instance& inst);
std::optional<BranchSet> branch_high_degree(const Instance& inst);
std::optional<BranchSet> branch_triple_with_four(const Instance& inst);
std::optional<BranchSet> branch_triple_with_two(const Instance& inst);
std::optional<BranchSet> branch_small_three(const Instance& inst);
std::optional<BranchSet> branch_large_three(const Instance& inst);
std::optional<BranchSet> branch_large_two(const Instance& inst);

/// First applicable rule in priority order, or nullopt when only the endgame remains.
std::optional<BranchSet> choose_branch(const Instance& reduced);

enum class ComponentKind { GoodSmallThree, SmallThree, FullSmallThree, LargeThree, SmallTwo, LargeTwo };
const char* to_string(ComponentKind k);

struct Component {
  ComponentKind kind;
  std::vector<PairRef> pairs;  // sorted
  std::vector<int> variables;  // sorted, distinct
};

/// Partitions the constrained pairs of a reduced instance in which rules 1-6 do not apply.
/// Throws std::logic_error if some pair's degree differs from a neighbor's or is not 2 or 3.
std::vector<Component> classify_components(const Instance& inst);

/// Five pairs on distinct variables: `v` constrains w, x, y; `z` is constrained by one of them.
struct Witness {
  PairRef v, w, x, y, z;
};
/// All witnesses of a large three-component in deterministic order.
std::vector<Witness> find_witnesses(const Instance& inst, const Component& c);

/// Solves an instance whose constraints all lie in good three-components or small two-components.
/// Returns a slot per variable (-1 for removed variables), or nullopt if unsatisfiable.
std::optional<Assignment> matching_endgame(const Instance& inst);

enum class SolverMode { Deterministic, Randomized32, RandomizedD2 };
enum class SolveStatus { Sat, Unsat, NotFound, ResourceExhausted };
const char* to_string(SolverMode m);
const char* to_string(SolveStatus s);

struct SolverConfig {
  SolverMode mode = SolverMode::Deterministic;
  std::uint64_t seed = 1;
  std::uint64_t node_limit = 0;   // 0 = unlimited; counts search nodes or random walks
  std::uint64_t trial_budget = 0; // randomized modes; 0 = the default budget
  bool statistics = true;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;
  int max_depth = 0;
  std::map<std::string, std::uint64_t> rule_counts;
  std::uint64_t endgame_count = 0;
  std::uint64_t trials = 0;  // random walks or random restrictions
  double wall_ms = 0;        // excluded from equality

  bool operator==(const SearchStats& o) const {
    return nodes == o.nodes && leaves == o.leaves && max_depth == o.max_depth &&
           rule_counts == o.rule_counts && endgame_count == o.endgame_count && trials == o.trials;
  }
};

struct SolveResult {
  SolveStatus status = SolveStatus::Unsat;
  Assignment assignment;  // color slot per input variable when status == Sat
  SearchStats stats;
};

/// Dispatches on cfg.mode. A Sat result always passes check() against `inst`.
SolveResult solve(const Instance& inst, const SolverConfig& cfg = {});

SolveResult solve_deterministic(const Instance& inst, const SolverConfig& cfg = {});
/// Random two-color restrictions of one constraint per round; one-sided (NotFound, never Unsat).
SolveResult solve_randomized_32(const Instance& inst, const SolverConfig& cfg = {});
/// Random four-color restriction per variable, then the deterministic solver; one-sided.
SolveResult solve_randomized_d2(const Instance& inst, const SolverConfig& cfg = {});

/// The four two-color restrictions of the randomized step on constraint ((v,X),(w,Y)): each
/// returns the instance with v and w restricted so that exactly one of them keeps its
/// constrained color. Requires v and w to have exactly three colors.
std::vector<Instance> random_step_restrictions(const Instance& inst, const Constraint& c);

}  // namespace tricolor
