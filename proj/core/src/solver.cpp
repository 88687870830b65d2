#include "tricolor/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace tricolor {

const char* to_string(SolverMode m) {
  switch (m) {
    case SolverMode::Deterministic: return "deterministic";
    case SolverMode::Randomized32: return "randomized-32";
    case SolverMode::RandomizedD2: return "randomized-d2";
  }
  return "?";
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Sat: return "sat";
    case SolveStatus::Unsat: return "unsat";
    case SolveStatus::NotFound: return "not-found";
    case SolveStatus::ResourceExhausted: return "resource-exhausted";
  }
  return "?";
}

namespace {

struct LimitReached {};

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

class Search {
 public:
  Search(const SolverConfig& cfg, SearchStats& stats) : cfg_(cfg), stats_(stats) {}

  std::optional<Assignment> run(Instance inst, int depth) {
    ++stats_.nodes;
    if (cfg_.node_limit && stats_.nodes > cfg_.node_limit) throw LimitReached{};
    stats_.max_depth = std::max(stats_.max_depth, depth);

    LiftTrace trace;
    if (!detail::simplify_in_place(inst, trace)) {
      ++stats_.leaves;
      return std::nullopt;
    }
    if (inst.alive_count() == 0) {
      ++stats_.leaves;
      return lift(Assignment(inst.num_variables(), -1), trace);
    }
    auto branch = choose_branch(inst);
    if (!branch) {
      ++stats_.leaves;
      ++stats_.endgame_count;
      auto asg = matching_endgame(inst);
      if (!asg) return std::nullopt;
      return lift(std::move(*asg), trace);
    }
    ++stats_.rule_counts[branch->rule];
    if (branch->children.empty()) ++stats_.leaves;
    for (auto& child : branch->children) {
      if (auto r = run(std::move(child.instance), depth + 1)) {
        return lift(lift(std::move(*r), child.trace), trace);
      }
    }
    return std::nullopt;
  }

 private:
  const SolverConfig& cfg_;
  SearchStats& stats_;
};

void require_colors(const Instance& inst, int max_colors, const char* who) {
  for (int v = 0; v < inst.num_variables(); ++v) {
    if (inst.alive(v) && inst.color_count(v) > max_colors) {
      throw std::invalid_argument(std::string(who) + ": variable " + std::to_string(v) + " has more than " +
                                  std::to_string(max_colors) + " colors");
    }
  }
}

SolveResult finish(const Instance& inst, std::optional<Assignment> asg, SolveStatus if_missing) {
  SolveResult r;
  if (!asg) {
    r.status = if_missing;
    return r;
  }
  asg->resize(inst.num_variables(), -1);
  if (!check(inst, *asg)) throw std::logic_error("solver produced an assignment that violates a constraint");
  r.status = SolveStatus::Sat;
  r.assignment = std::move(*asg);
  return r;
}

std::uint64_t default_budget(double log2_trials) {
  if (log2_trials >= 62) return std::numeric_limits<std::uint64_t>::max() / 2;
  return static_cast<std::uint64_t>(std::ceil(std::exp2(log2_trials)));
}

// Restricts v and w (three colors each) for randomized step `which` in 0..3.
void restrict_step(Instance& inst, const Constraint& c, int which) {
  auto others = [&](PairRef p) {
    std::vector<int> out;
    for (int col : inst.colors(p.var)) {
      if (col != p.color) out.push_back(col);
    }
    return out;
  };
  const auto ov = others(c.a);
  const auto ow = others(c.b);
  if (ov.size() != 2 || ow.size() != 2) {
    throw std::invalid_argument("randomized step needs two three-color variables");
  }
  // Exactly one side is restricted to its two unconstrained colors; the other keeps its
  // constrained color and one of the others.
  const PairRef narrowed = which < 2 ? c.a : c.b;
  const PairRef kept = which < 2 ? c.b : c.a;
  const auto& kept_others = which < 2 ? ow : ov;
  inst.remove_color(narrowed.var, narrowed.color);
  inst.remove_color(kept.var, kept_others[which % 2 == 0 ? 1 : 0]);
}

std::optional<Constraint> first_constraint(const Instance& inst) {
  for (int v = 0; v < inst.num_variables(); ++v) {
    if (!inst.alive(v)) continue;
    for (int c : inst.colors(v)) {
      for (const PairRef& q : inst.neighbors({v, c})) return Constraint({v, c}, q);
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<Instance> random_step_restrictions(const Instance& inst, const Constraint& c) {
  std::vector<Instance> out;
  for (int which = 0; which < 4; ++which) {
    Instance copy = inst;
    restrict_step(copy, c, which);
    out.push_back(std::move(copy));
  }
  return out;
}

SolveResult solve_deterministic(const Instance& inst, const SolverConfig& cfg) {
  require_colors(inst, 4, "solve");
  Stopwatch clock;
  SearchStats stats;
  SolveResult r;
  try {
    Search search(cfg, stats);
    r = finish(inst, search.run(inst, 0), SolveStatus::Unsat);
  } catch (const LimitReached&) {
    r.status = SolveStatus::ResourceExhausted;
  }
  stats.wall_ms = clock.ms();
  r.stats = std::move(stats);
  return r;
}

SolveResult solve_randomized_32(const Instance& inst, const SolverConfig& cfg) {
  require_colors(inst, 3, "solve_randomized_32");
  Stopwatch clock;
  SearchStats stats;
  std::mt19937_64 rng(cfg.seed);
  const std::uint64_t budget =
      cfg.trial_budget ? cfg.trial_budget : default_budget(std::log2(50.0) + inst.alive_count() / 2.0);
  SolveResult r;
  r.status = SolveStatus::NotFound;
  for (std::uint64_t trial = 0; trial < budget; ++trial) {
    if (cfg.node_limit && trial >= cfg.node_limit) {
      r.status = SolveStatus::ResourceExhausted;
      break;
    }
    ++stats.trials;
    Instance cur = inst;
    LiftTrace trace;
    bool ok = detail::simplify_in_place(cur, trace);
    int rounds = 0;
    while (ok && cur.alive_count() > 0) {
      ++stats.nodes;
      ++rounds;
      const auto c = first_constraint(cur);
      if (!c) throw std::logic_error("solve_randomized_32: reduced instance without constraints");
      restrict_step(cur, *c, static_cast<int>(std::uniform_int_distribution<int>(0, 3)(rng)));
      for (int var : {c->a.var, c->b.var}) {
        if (!cur.contradiction() && cur.alive(var) && cur.color_count(var) == 2) {
          trace.push_back(detail::eliminate_two_color_in_place(cur, var));
        }
      }
      ok = detail::simplify_in_place(cur, trace);
    }
    stats.max_depth = std::max(stats.max_depth, rounds);
    ++stats.leaves;
    if (ok) {
      SolveResult found = finish(inst, lift(Assignment(cur.num_variables(), -1), trace), SolveStatus::NotFound);
      found.stats = stats;
      found.stats.wall_ms = clock.ms();
      return found;
    }
  }
  stats.wall_ms = clock.ms();
  r.stats = std::move(stats);
  return r;
}

SolveResult solve_randomized_d2(const Instance& inst, const SolverConfig& cfg) {
  Stopwatch clock;
  double log2_trials = std::log2(50.0);
  bool wide = false;
  for (int v = 0; v < inst.num_variables(); ++v) {
    if (!inst.alive(v) || inst.color_count(v) <= 4) continue;
    wide = true;
    log2_trials += std::log2(inst.color_count(v) / 4.0);
  }
  SolverConfig inner = cfg;
  inner.mode = SolverMode::Deterministic;
  if (!wide) return solve_deterministic(inst, inner);

  std::mt19937_64 rng(cfg.seed);
  const std::uint64_t budget = cfg.trial_budget ? cfg.trial_budget : default_budget(log2_trials);
  SearchStats total;
  SolveResult r;
  r.status = SolveStatus::NotFound;
  for (std::uint64_t trial = 0; trial < budget; ++trial) {
    ++total.trials;
    Instance restricted = inst;
    for (int v = 0; v < inst.num_variables(); ++v) {
      if (!inst.alive(v) || inst.color_count(v) <= 4) continue;
      std::vector<int> cs = inst.colors(v);
      std::shuffle(cs.begin(), cs.end(), rng);
      for (std::size_t i = 4; i < cs.size(); ++i) restricted.remove_color(v, cs[i]);
    }
    SolveResult sub = solve_deterministic(restricted, inner);
    total.nodes += sub.stats.nodes;
    total.leaves += sub.stats.leaves;
    total.endgame_count += sub.stats.endgame_count;
    total.max_depth = std::max(total.max_depth, sub.stats.max_depth);
    for (const auto& [rule, n] : sub.stats.rule_counts) total.rule_counts[rule] += n;
    if (sub.status == SolveStatus::ResourceExhausted) {
      r.status = SolveStatus::ResourceExhausted;
      break;
    }
    if (sub.status == SolveStatus::Sat) {
      r = finish(inst, std::move(sub.assignment), SolveStatus::NotFound);
      break;
    }
  }
  total.wall_ms = clock.ms();
  r.stats = std::move(total);
  return r;
}

SolveResult solve(const Instance& inst, const SolverConfig& cfg) {
  switch (cfg.mode) {
    case SolverMode::Deterministic: return solve_deterministic(inst, cfg);
    case SolverMode::Randomized32: return solve_randomized_32(inst, cfg);
    case SolverMode::RandomizedD2: return solve_randomized_d2(inst, cfg);
  }
  throw std::invalid_argument("solve: unknown mode");
}

}  // namespace tricolor
