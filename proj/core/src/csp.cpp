#include "tricolor/csp.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace tricolor {

int Instance::add_variable(std::vector<int> labels) {
  if (labels.empty() || labels.size() > static_cast<std::size_t>(kMaxColors)) {
    throw std::invalid_argument("variable must have 1.." + std::to_string(kMaxColors) + " colors");
  }
  Variable v;
  v.adj.resize(labels.size());
  v.mask = static_cast<std::uint8_t>((1u << labels.size()) - 1u);
  v.labels = std::move(labels);
  vars_.push_back(std::move(v));
  return num_variables() - 1;
}

bool Instance::add_constraint(PairRef a, PairRef b) {
  if (!valid(a) || !valid(b)) {
    throw std::invalid_argument("constraint refers to a missing (variable,color) pair");
  }
  if (a.var == b.var) {
    throw std::invalid_argument("constraint endpoints must be distinct variables");
  }
  auto& la = vars_[a.var].adj[a.color];
  auto it = std::lower_bound(la.begin(), la.end(), b);
  if (it != la.end() && *it == b) return false;
  la.insert(it, b);
  auto& lb = vars_[b.var].adj[b.color];
  lb.insert(std::lower_bound(lb.begin(), lb.end(), a), a);
  ++constraint_count_;
  return true;
}

void Instance::unlink(PairRef p) {
  auto& own = vars_[p.var].adj[p.color];
  for (const PairRef& q : own) {
    auto& other = vars_[q.var].adj[q.color];
    other.erase(std::lower_bound(other.begin(), other.end(), p));
  }
  constraint_count_ -= own.size();
  own.clear();
}

void Instance::remove_color(int var, int color) {
  if (!has_color(var, color)) return;
  unlink({var, color});
  vars_[var].mask = static_cast<std::uint8_t>(vars_[var].mask & ~(1u << color));
  if (vars_[var].alive && vars_[var].mask == 0) contradiction_ = true;
}

void Instance::remove_variable(int var) {
  Variable& v = vars_[var];
  for (int c = 0; c < static_cast<int>(v.labels.size()); ++c) {
    if (v.mask & (1u << c)) unlink({var, c});
  }
  v.alive = false;
  v.mask = 0;
}

int Instance::alive_count() const {
  return static_cast<int>(std::count_if(vars_.begin(), vars_.end(), [](const Variable& v) { return v.alive; }));
}

bool Instance::has_color(int var, int color) const {
  if (var < 0 || var >= num_variables() || color < 0 || color >= kMaxColors) return false;
  const Variable& v = vars_[var];
  return v.alive && (v.mask & (1u << color)) != 0;
}

bool Instance::valid(PairRef p) const { return has_color(p.var, p.color); }

int Instance::color_count(int var) const { return std::popcount(static_cast<unsigned>(vars_[var].mask)); }

std::vector<int> Instance::colors(int var) const {
  std::vector<int> out;
  for (int c = 0; c < slot_count(var); ++c) {
    if (vars_[var].mask & (1u << c)) out.push_back(c);
  }
  return out;
}

bool Instance::constrained(PairRef a, PairRef b) const {
  if (!valid(a) || !valid(b)) return false;
  const auto& la = vars_[a.var].adj[a.color];
  return std::binary_search(la.begin(), la.end(), b);
}

std::vector<Constraint> Instance::constraints() const {
  std::vector<Constraint> out;
  out.reserve(constraint_count_);
  for (int v = 0; v < num_variables(); ++v) {
    for (int c = 0; c < slot_count(v); ++c) {
      PairRef p{v, c};
      for (const PairRef& q : vars_[v].adj[c]) {
        if (p < q) out.emplace_back(p, q);
      }
    }
  }
  return out;
}

std::vector<std::string> validate(const Instance& inst, int max_colors) {
  std::vector<std::string> problems;
  std::size_t half_edges = 0;
  for (int v = 0; v < inst.num_variables(); ++v) {
    const std::string name = "variable " + std::to_string(v);
    if (!inst.alive(v)) {
      for (int c = 0; c < inst.slot_count(v); ++c) {
        if (!inst.neighbors({v, c}).empty()) problems.push_back(name + " is removed but still constrained");
      }
      continue;
    }
    const int k = inst.color_count(v);
    if (k < 1 || k > max_colors) {
      problems.push_back(name + " has " + std::to_string(k) + " colors");
    }
    for (int c = 0; c < inst.slot_count(v); ++c) {
      PairRef p{v, c};
      auto nbrs = inst.neighbors(p);
      if (nbrs.empty()) continue;
      if (!inst.has_color(v, c)) {
        problems.push_back(name + " color " + std::to_string(c) + " is removed but still constrained");
      }
      if (!std::is_sorted(nbrs.begin(), nbrs.end()) ||
          std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end()) {
        problems.push_back(name + " color " + std::to_string(c) + " has unsorted or duplicate adjacency");
      }
      for (const PairRef& q : nbrs) {
        ++half_edges;
        if (q.var == v) problems.push_back(name + " is constrained against itself");
        if (q.var < 0 || q.var >= inst.num_variables() || q.color < 0 || q.color >= inst.slot_count(q.var)) {
          problems.push_back(name + " has a neighbor outside the instance");
          continue;
        }
        auto back = inst.neighbors(q);
        if (!std::binary_search(back.begin(), back.end(), p)) {
          problems.push_back(name + " has an asymmetric constraint");
        }
      }
    }
  }
  if (half_edges != 2 * inst.constraint_count()) problems.push_back("constraint count mismatch");
  return problems;
}

double size_of(int colors) {
  if (colors == 3) return 1.0;
  if (colors == 4) return 2.0 - kEpsilon;
  return 0.0;
}

double measure(const Instance& inst) {
  double total = 0.0;
  for (int v = 0; v < inst.num_variables(); ++v) {
    if (!inst.alive(v)) continue;
    const int k = inst.color_count(v);
    if (k < 3 || k > 4) {
      throw std::logic_error("measure: variable " + std::to_string(v) + " has " + std::to_string(k) +
                             " colors; simplify first");
    }
    total += size_of(k);
  }
  return total;
}

double relaxed_measure(const Instance& inst) {
  double total = 0.0;
  for (int v = 0; v < inst.num_variables(); ++v) {
    if (inst.alive(v)) total += size_of(inst.color_count(v));
  }
  return total;
}

bool check(const Instance& inst, const Assignment& asg) {
  for (int v = 0; v < inst.num_variables(); ++v) {
    if (!inst.alive(v)) continue;
    if (v >= static_cast<int>(asg.size()) || !inst.has_color(v, asg[v])) {
      throw std::invalid_argument("check: assignment does not give variable " + std::to_string(v) +
                                  " an available color");
    }
  }
  for (const Constraint& c : inst.constraints()) {
    if (asg[c.a.var] == c.a.color && asg[c.b.var] == c.b.color) return false;
  }
  return true;
}

namespace detail {

LiftStep assign_in_place(Instance& inst, PairRef p) {
  if (!inst.valid(p)) throw std::logic_error("assign: pair is not available");
  const std::vector<PairRef> nbrs(inst.neighbors(p).begin(), inst.neighbors(p).end());
  inst.remove_variable(p.var);
  for (const PairRef& q : nbrs) inst.remove_color(q.var, q.color);
  return lift_step::Assigned{p.var, p.color};
}

LiftStep eliminate_two_color_in_place(Instance& inst, int var) {
  const std::vector<int> cs = inst.colors(var);
  if (cs.size() != 2) throw std::logic_error("eliminate_two_color: variable does not have two colors");
  lift_step::TwoColorEliminated step{var, cs[0], cs[1], {}, {}};
  step.conflict_r.assign(inst.neighbors({var, cs[0]}).begin(), inst.neighbors({var, cs[0]}).end());
  step.conflict_g.assign(inst.neighbors({var, cs[1]}).begin(), inst.neighbors({var, cs[1]}).end());
  inst.remove_variable(var);
  // A pair conflicting with both colors can never be used.
  for (const PairRef& a : step.conflict_r) {
    if (std::binary_search(step.conflict_g.begin(), step.conflict_g.end(), a)) inst.remove_color(a.var, a.color);
  }
  for (const PairRef& a : step.conflict_r) {
    for (const PairRef& b : step.conflict_g) {
      if (a.var == b.var) continue;
      if (inst.valid(a) && inst.valid(b)) inst.add_constraint(a, b);
    }
  }
  return step;
}

namespace {

bool free_pair_step(Instance& inst, LiftTrace& trace) {
  for (int v = 0; v < inst.num_variables(); ++v) {
    if (!inst.alive(v)) continue;
    for (int x : inst.colors(v)) {
      auto nx = inst.neighbors({v, x});
      if (nx.empty()) continue;
      const int w = nx.front().var;
      if (!std::all_of(nx.begin(), nx.end(), [w](const PairRef& q) { return q.var == w; })) continue;
      for (int y : inst.colors(w)) {
        if (inst.constrained({v, x}, {w, y})) continue;
        auto ny = inst.neighbors({w, y});
        if (std::all_of(ny.begin(), ny.end(), [v](const PairRef& q) { return q.var == v; })) {
          inst.remove_variable(v);
          inst.remove_variable(w);
          trace.push_back(lift_step::FreePairUsed{{v, x}, {w, y}});
          return true;
        }
      }
    }
  }
  return false;
}

bool dominance_step(Instance& inst, LiftTrace& trace) {
  for (int v = 0; v < inst.num_variables(); ++v) {
    if (!inst.alive(v)) continue;
    const auto cs = inst.colors(v);
    for (int r : cs) {
      auto nr = inst.neighbors({v, r});
      for (int b : cs) {
        if (b == r) continue;
        auto nb = inst.neighbors({v, b});
        if (std::includes(nb.begin(), nb.end(), nr.begin(), nr.end())) {
          inst.remove_color(v, b);
          trace.push_back(lift_step::DominatedColorRemoved{v, b});
          return true;
        }
      }
    }
  }
  return false;
}

bool unconstrained_step(Instance& inst, LiftTrace& trace) {
  for (int v = 0; v < inst.num_variables(); ++v) {
    if (!inst.alive(v)) continue;
    for (int c : inst.colors(v)) {
      if (inst.degree({v, c}) == 0) {
        trace.push_back(assign_in_place(inst, {v, c}));
        return true;
      }
    }
  }
  return false;
}

bool dead_color_step(Instance& inst, LiftTrace& trace) {
  for (int v = 0; v < inst.num_variables(); ++v) {
    if (!inst.alive(v)) continue;
    for (int c : inst.colors(v)) {
      auto nbrs = inst.neighbors({v, c});
      // Neighbors are sorted, so pairs on one variable are contiguous.
      for (std::size_t i = 0; i < nbrs.size();) {
        std::size_t j = i;
        while (j < nbrs.size() && nbrs[j].var == nbrs[i].var) ++j;
        if (static_cast<int>(j - i) == inst.color_count(nbrs[i].var)) {
          inst.remove_color(v, c);
          trace.push_back(lift_step::DeadColorRemoved{v, c});
          return true;
        }
        i = j;
      }
    }
  }
  return false;
}

bool small_domain_step(Instance& inst, LiftTrace& trace) {
  for (int v = 0; v < inst.num_variables(); ++v) {
    if (!inst.alive(v)) continue;
    const int k = inst.color_count(v);
    if (k == 1) {
      trace.push_back(assign_in_place(inst, {v, inst.colors(v).front()}));
      return true;
    }
    if (k == 2) {
      trace.push_back(eliminate_two_color_in_place(inst, v));
      return true;
    }
  }
  return false;
}

// Follows a one-shot rule with the elimination its lemma promises.
void settle(Instance& inst, LiftTrace& trace, int var) {
  if (!inst.alive(var) || inst.contradiction()) return;
  if (inst.color_count(var) == 2) trace.push_back(eliminate_two_color_in_place(inst, var));
}

int last_var(const LiftStep& step) {
  if (auto* s = std::get_if<lift_step::DominatedColorRemoved>(&step)) return s->var;
  if (auto* s = std::get_if<lift_step::DeadColorRemoved>(&step)) return s->var;
  return -1;
}

}  // namespace

bool simplify_in_place(Instance& inst, LiftTrace& trace) {
  while (!inst.contradiction()) {
    if (small_domain_step(inst, trace)) continue;
    if (free_pair_step(inst, trace)) continue;
    if (dominance_step(inst, trace)) continue;
    if (unconstrained_step(inst, trace)) continue;
    if (dead_color_step(inst, trace)) continue;
    break;
  }
  return !inst.contradiction();
}

void apply_step(Assignment& asg, const LiftStep& step) {
  auto grow = [&asg](int var) {
    if (var >= static_cast<int>(asg.size())) asg.resize(var + 1, -1);
  };
  auto used = [&asg](const PairRef& p) {
    return p.var < static_cast<int>(asg.size()) && asg[p.var] == p.color;
  };
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, lift_step::Assigned>) {
          grow(s.var);
          asg[s.var] = s.color;
        } else if constexpr (std::is_same_v<T, lift_step::TwoColorEliminated>) {
          const bool blocked = std::any_of(s.conflict_r.begin(), s.conflict_r.end(), used);
          grow(s.var);
          asg[s.var] = blocked ? s.color_g : s.color_r;
        } else if constexpr (std::is_same_v<T, lift_step::IsolatedMerge>) {
          if (s.merged >= static_cast<int>(asg.size()) || asg[s.merged] < 0 ||
              asg[s.merged] >= static_cast<int>(s.origins.size())) {
            throw std::invalid_argument("lift: merged variable is unassigned");
          }
          const PairRef origin = s.origins[asg[s.merged]];
          grow(std::max(s.v.var, s.w.var));
          if (origin.var == s.v.var) {
            asg[s.v.var] = origin.color;
            asg[s.w.var] = s.w.color;
          } else {
            asg[s.w.var] = origin.color;
            asg[s.v.var] = s.v.color;
          }
        } else if constexpr (std::is_same_v<T, lift_step::FreePairUsed>) {
          grow(std::max(s.a.var, s.b.var));
          asg[s.a.var] = s.a.color;
          asg[s.b.var] = s.b.color;
        }
        // Color removals never change an assignment of the reduced instance.
      },
      step);
}

}  // namespace detail

std::pair<Instance, LiftStep> assign(Instance inst, PairRef p) {
  LiftStep step = detail::assign_in_place(inst, p);
  return {std::move(inst), std::move(step)};
}

std::pair<Instance, LiftStep> eliminate_two_color(Instance inst, int var) {
  LiftStep step = detail::eliminate_two_color_in_place(inst, var);
  return {std::move(inst), std::move(step)};
}

namespace {

template <class Step>
std::optional<std::pair<Instance, LiftTrace>> one_shot(const Instance& inst, Step step) {
  Instance copy = inst;
  LiftTrace trace;
  if (!step(copy, trace)) return std::nullopt;
  detail::settle(copy, trace, detail::last_var(trace.front()));
  return std::make_pair(std::move(copy), std::move(trace));
}

}  // namespace

std::optional<std::pair<Instance, LiftTrace>> apply_free_pair(const Instance& inst) {
  return one_shot(inst, detail::free_pair_step);
}
std::optional<std::pair<Instance, LiftTrace>> apply_dominance(const Instance& inst) {
  return one_shot(inst, detail::dominance_step);
}
std::optional<std::pair<Instance, LiftTrace>> apply_unconstrained(const Instance& inst) {
  return one_shot(inst, detail::unconstrained_step);
}
std::optional<std::pair<Instance, LiftTrace>> apply_dead_color(const Instance& inst) {
  return one_shot(inst, detail::dead_color_step);
}

SimplifyResult simplify(Instance inst) {
  SimplifyResult out;
  out.unsat = !detail::simplify_in_place(inst, out.trace);
  out.instance = std::move(inst);
  return out;
}

Assignment lift(Assignment asg, const LiftTrace& trace) {
  for (auto it = trace.rbegin(); it != trace.rend(); ++it) detail::apply_step(asg, *it);
  return asg;
}

}  // namespace tricolor
