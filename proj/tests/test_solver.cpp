#include <algorithm>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "tricolor/oracle.hpp"
#include "tricolor/solver.hpp"

using namespace tricolor;

namespace {

// Reduced instance on which only the component rules or the endgame remain.
std::optional<Instance> component_stage(Instance inst) {
  LiftTrace trace;
  if (!detail::simplify_in_place(inst, trace)) return std::nullopt;
  for (auto rule : {branch_isolated, branch_dangling, branch_multiple_adjacency, branch_high_degree,
                    branch_triple_with_four, branch_triple_with_two}) {
    if (rule(inst)) return std::nullopt;
  }
  return inst;
}

}  // namespace

TEST_CASE("the deterministic solver agrees with brute force") {
  int sat = 0, unsat = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const int n = 4 + seed % 7;
    const Instance inst = oracle::random_csp(n, 2 + seed % 2, 4, n * (2 + seed % 6), seed);
    const SolveResult r = solve(inst);
    const bool expected = oracle::brute_csp(inst).has_value();
    REQUIRE(r.status == (expected ? SolveStatus::Sat : SolveStatus::Unsat));
    if (expected) {
      CHECK(check(inst, r.assignment));
      ++sat;
    } else {
      ++unsat;
    }
  }
  CHECK(sat > 50);
  CHECK(unsat > 25);
}

TEST_CASE("every branching rule yields equisatisfiable children") {
  std::set<std::string> seen;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    Instance inst = oracle::random_pair_regular_csp(8, 3, 4, 2 + seed % 2, 3, seed, seed % 3 == 0 ? 2 : -1);
    LiftTrace trace;
    if (!detail::simplify_in_place(inst, trace) || inst.alive_count() == 0) continue;
    const auto b = choose_branch(inst);
    if (!b) continue;
    seen.insert(b->rule);
    CHECK(b->children.size() == b->claimed.size());
    bool any = false;
    for (const BranchChild& child : b->children) {
      if (const auto sol = oracle::brute_csp(child.instance)) {
        any = true;
        Assignment lifted = lift(*sol, child.trace);
        lifted.resize(inst.num_variables(), -1);
        CHECK(check(inst, lifted));
      }
    }
    CHECK(any == oracle::brute_csp(inst).has_value());
  }
  CHECK(seen.size() >= 4);
}

TEST_CASE("components of a reduced instance cover every constrained pair once") {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 400 && checked < 60; ++seed) {
    const auto inst = component_stage(oracle::random_pair_regular_csp(6 + seed % 5, 3, 3, 2 + seed % 2, 3, seed));
    if (!inst) continue;
    ++checked;
    std::set<PairRef> covered;
    for (const Component& c : classify_components(*inst)) {
      CHECK(std::is_sorted(c.pairs.begin(), c.pairs.end()));
      CHECK(std::is_sorted(c.variables.begin(), c.variables.end()));
      for (const PairRef& p : c.pairs) {
        CHECK(covered.insert(p).second);
        for (const PairRef& q : inst->neighbors(p)) CHECK(std::binary_search(c.pairs.begin(), c.pairs.end(), q));
      }
    }
    for (int v = 0; v < inst->num_variables(); ++v) {
      if (!inst->alive(v)) continue;
      for (int c : inst->colors(v)) CHECK((inst->degree({v, c}) == 0) == !covered.count({v, c}));
    }
  }
  CHECK(checked >= 20);
}

TEST_CASE("the matching endgame agrees with brute force on two-components") {
  int solved = 0;
  for (std::uint64_t seed = 1; seed <= 3000; ++seed) {
    const auto inst = component_stage(oracle::random_pair_regular_csp(5 + seed % 4, 3, 3, 2, 2, seed));
    if (!inst || choose_branch(*inst)) continue;
    const auto asg = matching_endgame(*inst);
    const auto expected = oracle::brute_csp(*inst);
    CHECK(asg.has_value() == expected.has_value());
    if (asg) CHECK(check(*inst, *asg));
    ++solved;
  }
  CHECK(solved > 30);
}

TEST_CASE("the node limit stops the search") {
  const Instance inst = oracle::random_csp(20, 3, 3, 160, 101);
  SolverConfig cfg;
  cfg.node_limit = 1;
  CHECK(solve(inst, cfg).status == SolveStatus::ResourceExhausted);
  CHECK(solve(inst).status == SolveStatus::Unsat);
}

TEST_CASE("search statistics are reproducible") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance inst = oracle::random_csp(14, 3, 4, 70, seed);
    const SolveResult a = solve(inst), b = solve(inst);
    CHECK(a.stats == b.stats);
    CHECK(a.assignment == b.assignment);
    CHECK(a.stats.leaves <= a.stats.nodes);
  }
}

TEST_CASE("the deterministic solver rejects variables wider than four colors") {
  Instance inst;
  inst.add_variable({0, 1, 2, 3, 4});
  CHECK_THROWS_AS(solve(inst), std::invalid_argument);
}

TEST_CASE("each pair of a constraint survives in exactly two of the four restrictions") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Instance inst = oracle::random_csp(5, 3, 3, 8, seed);
    for (const Constraint& c : inst.constraints()) {
      const auto restricted = random_step_restrictions(inst, c);
      REQUIRE(restricted.size() == 4);
      for (int cv : inst.colors(c.a.var)) {
        for (int cw : inst.colors(c.b.var)) {
          if (cv == c.a.color && cw == c.b.color) continue;
          int kept = 0;
          for (const Instance& r : restricted) kept += r.has_color(c.a.var, cv) && r.has_color(c.b.var, cw);
          CHECK(kept == 2);
        }
      }
      for (const Instance& r : restricted) {
        CHECK(r.color_count(c.a.var) == 2);
        CHECK(r.color_count(c.b.var) == 2);
        CHECK((r.has_color(c.a.var, c.a.color) != r.has_color(c.b.var, c.b.color)));
      }
    }
  }
}

TEST_CASE("randomized modes are one-sided and seeded") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto [inst, planted] = oracle::planted_csp(10, 3, 3, 30, seed);
    SolverConfig cfg;
    cfg.mode = SolverMode::Randomized32;
    cfg.seed = seed;
    const SolveResult a = solve(inst, cfg), b = solve(inst, cfg);
    CHECK(a.status != SolveStatus::Unsat);
    CHECK(a.stats == b.stats);
    if (a.status == SolveStatus::Sat) CHECK(check(inst, a.assignment));
  }
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto [inst, planted] = oracle::planted_csp(8, 3, 6, 25, seed);
    SolverConfig cfg;
    cfg.mode = SolverMode::RandomizedD2;
    cfg.seed = seed;
    const SolveResult r = solve(inst, cfg);
    CHECK(r.status != SolveStatus::Unsat);
    if (r.status == SolveStatus::Sat) CHECK(check(inst, r.assignment));
  }
  Instance four;
  four.add_variable({0, 1, 2, 3});
  SolverConfig cfg;
  cfg.mode = SolverMode::Randomized32;
  CHECK_THROWS_AS(solve(four, cfg), std::invalid_argument);
}
