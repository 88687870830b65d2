#include "tricolor/transform.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>
#include <stdexcept>

namespace tricolor {

Cnf normalize_cnf(Cnf f) {
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> out;
  for (auto clause : f.clauses) {
    if (clause.empty()) throw std::invalid_argument("empty clause");
    for (int lit : clause) {
      if (lit == 0 || std::abs(lit) > f.num_vars) throw std::invalid_argument("literal out of range");
    }
    std::sort(clause.begin(), clause.end());
    clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
    const bool tautology = std::any_of(clause.begin(), clause.end(), [&](int lit) {
      return std::binary_search(clause.begin(), clause.end(), -lit);
    });
    if (tautology) continue;
    if (clause.size() > 3) throw std::invalid_argument("clause wider than three literals");
    if (seen.insert(clause).second) out.push_back(std::move(clause));
  }
  f.clauses = std::move(out);
  return f;
}

GeneralCsp normalize(GeneralCsp csp) {
  std::set<std::vector<PairRef>> seen;
  std::vector<std::vector<PairRef>> out;
  for (auto c : csp.constraints) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    bool vacuous = false;
    for (std::size_t i = 1; i < c.size(); ++i) vacuous |= c[i].var == c[i - 1].var;
    if (vacuous) continue;
    if (seen.insert(c).second) out.push_back(std::move(c));
  }
  csp.constraints = std::move(out);
  return csp;
}

DualResult dualize(const GeneralCsp& source) {
  const GeneralCsp csp = normalize(source);
  DualResult r;
  r.back.source_domain = csp.domain;
  const int nvars = static_cast<int>(csp.domain.size());
  // occurrences[V][C]: dual pairs (constraint index, position) carrying (V,C)
  std::vector<std::vector<std::vector<PairRef>>> occurrences(nvars);
  for (int v = 0; v < nvars; ++v) occurrences[v].resize(csp.domain[v]);

  for (int i = 0; i < static_cast<int>(csp.constraints.size()); ++i) {
    const auto& c = csp.constraints[i];
    if (c.empty()) r.unsat = true;
    r.dual.domain.push_back(static_cast<int>(c.size()));
    r.back.origin.push_back(c);
    for (int j = 0; j < static_cast<int>(c.size()); ++j) occurrences[c[j].var][c[j].color].push_back({i, j});
  }

  // For each source variable, forbid every choice of dual colors that rules out all of its colors.
  for (int v = 0; v < nvars; ++v) {
    const auto& occ = occurrences[v];
    if (std::any_of(occ.begin(), occ.end(), [](const auto& l) { return l.empty(); })) continue;
    std::vector<PairRef> tuple;
    std::function<void(std::size_t)> rec = [&](std::size_t color) {
      if (color == occ.size()) {
        r.dual.constraints.push_back(tuple);
        return;
      }
      for (const PairRef& p : occ[color]) {
        tuple.push_back(p);
        rec(color + 1);
        tuple.pop_back();
      }
    };
    rec(0);
  }
  r.dual = normalize(std::move(r.dual));
  return r;
}

std::vector<int> decode_dual(const DualMap& back, const std::vector<int>& dual_asg,
                             const std::vector<int>& preference) {
  const int nvars = static_cast<int>(back.source_domain.size());
  std::vector<std::vector<bool>> ruled_out(nvars);
  for (int v = 0; v < nvars; ++v) ruled_out[v].assign(back.source_domain[v], false);
  for (int i = 0; i < static_cast<int>(back.origin.size()); ++i) {
    if (i >= static_cast<int>(dual_asg.size()) || dual_asg[i] < 0 ||
        dual_asg[i] >= static_cast<int>(back.origin[i].size())) {
      throw std::invalid_argument("decode_dual: dual variable " + std::to_string(i) + " is unassigned");
    }
    const PairRef p = back.origin[i][dual_asg[i]];
    ruled_out[p.var][p.color] = true;
  }
  std::vector<int> out(nvars, -1);
  for (int v = 0; v < nvars; ++v) {
    std::vector<int> order = preference;
    if (order.empty()) {
      for (int c = 0; c < back.source_domain[v]; ++c) order.push_back(c);
    }
    for (int c : order) {
      if (c < back.source_domain[v] && !ruled_out[v][c]) {
        out[v] = c;
        break;
      }
    }
    if (out[v] < 0) throw std::invalid_argument("decode_dual: every color of a source variable is ruled out");
  }
  return out;
}

std::optional<Instance> to_instance(const GeneralCsp& csp) {
  Instance inst;
  for (int d : csp.domain) {
    std::vector<int> labels(d);
    for (int c = 0; c < d; ++c) labels[c] = c;
    inst.add_variable(std::move(labels));
  }
  std::vector<PairRef> removals;
  for (const auto& c : csp.constraints) {
    if (c.empty()) return std::nullopt;
    if (c.size() == 1) {
      removals.push_back(c[0]);
    } else if (c.size() == 2) {
      if (c[0].var == c[1].var) {
        if (c[0].color == c[1].color) removals.push_back(c[0]);
        continue;
      }
      inst.add_constraint(c[0], c[1]);
    } else {
      throw std::invalid_argument("to_instance: constraint arity exceeds two");
    }
  }
  for (const PairRef& p : removals) inst.remove_color(p.var, p.color);
  return inst;
}

GeneralCsp from_instance(const Instance& inst) {
  GeneralCsp csp;
  for (int v = 0; v < inst.num_variables(); ++v) csp.domain.push_back(inst.slot_count(v));
  for (int v = 0; v < inst.num_variables(); ++v) {
    for (int c = 0; c < inst.slot_count(v); ++c) {
      if (!inst.has_color(v, c)) csp.constraints.push_back({{v, c}});
    }
  }
  for (const Constraint& c : inst.constraints()) csp.constraints.push_back({c.a, c.b});
  return csp;
}

namespace {

// Returns false on conflict. values: index 1..n, -1 unknown.
bool unit_propagate(const Cnf& f, std::vector<int>& values) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& clause : f.clauses) {
      int open = 0;
      int last = 0;
      bool sat = false;
      for (int lit : clause) {
        const int val = values[std::abs(lit)];
        if (val < 0) {
          ++open;
          last = lit;
        } else if ((val == kTrue) == (lit > 0)) {
          sat = true;
          break;
        }
      }
      if (sat) continue;
      if (open == 0) return false;
      if (open == 1) {
        values[std::abs(last)] = last > 0 ? kTrue : kFalse;
        changed = true;
      }
    }
  }
  return true;
}

}  // namespace

SatTranslation sat_to_csp(const Cnf& input) {
  const Cnf f = normalize_cnf(input);
  SatTranslation tr;
  tr.forced.assign(f.num_vars + 1, -1);
  if (!unit_propagate(f, tr.forced)) {
    tr.unsat = true;
    return tr;
  }
  GeneralCsp csp;
  csp.domain.assign(f.num_vars, 2);
  for (const auto& clause : f.clauses) {
    std::vector<PairRef> c;
    bool sat = false;
    for (int lit : clause) {
      const int val = tr.forced[std::abs(lit)];
      if (val < 0) {
        // The clause is violated only if the literal is false.
        c.push_back({std::abs(lit) - 1, lit > 0 ? kFalse : kTrue});
      } else if ((val == kTrue) == (lit > 0)) {
        sat = true;
      }
    }
    if (sat) continue;
    if (c.size() == 3) ++tr.three_clauses;
    if (c.size() == 2) ++tr.two_clauses;
    csp.constraints.push_back(std::move(c));
  }
  DualResult d = dualize(csp);
  tr.back = std::move(d.back);
  auto inst = to_instance(d.dual);
  if (d.unsat || !inst) {
    tr.unsat = true;
    return tr;
  }
  tr.instance = std::move(*inst);
  return tr;
}

std::vector<bool> decode_sat(const SatTranslation& tr, const Assignment& asg) {
  std::vector<int> dual(tr.back.origin.size());
  for (std::size_t i = 0; i < dual.size(); ++i) dual[i] = i < asg.size() ? asg[i] : -1;
  const std::vector<int> source = decode_dual(tr.back, dual, {kTrue, kFalse});
  std::vector<bool> values(tr.forced.size(), true);
  for (std::size_t v = 1; v < tr.forced.size(); ++v) {
    values[v] = tr.forced[v] >= 0 ? tr.forced[v] == kTrue : source[v - 1] == kTrue;
  }
  return values;
}

bool evaluate(const Cnf& f, const std::vector<bool>& values) {
  return std::all_of(f.clauses.begin(), f.clauses.end(), [&](const std::vector<int>& clause) {
    return std::any_of(clause.begin(), clause.end(),
                       [&](int lit) { return values[std::abs(lit)] == (lit > 0); });
  });
}

std::optional<Instance> coloring_to_csp(const Graph& g, const std::vector<std::vector<int>>& lists) {
  Instance inst;
  for (int v = 0; v < g.n; ++v) {
    std::vector<int> list = lists.empty() ? std::vector<int>{0, 1, 2} : lists[v];
    if (list.empty()) return std::nullopt;
    inst.add_variable(std::move(list));
  }
  for (auto [u, v] : g.edges) {
    if (u == v) return std::nullopt;
    const auto& lu = inst.labels(u);
    const auto& lv = inst.labels(v);
    for (int i = 0; i < static_cast<int>(lu.size()); ++i) {
      for (int j = 0; j < static_cast<int>(lv.size()); ++j) {
        if (lu[i] == lv[j]) inst.add_constraint({u, i}, {v, j});
      }
    }
  }
  return inst;
}

std::vector<int> decode_coloring(const Instance& inst, const Assignment& asg) {
  std::vector<int> colors(inst.num_variables(), -1);
  for (int v = 0; v < inst.num_variables(); ++v) {
    if (v < static_cast<int>(asg.size()) && asg[v] >= 0) colors[v] = inst.labels(v)[asg[v]];
  }
  return colors;
}

}  // namespace tricolor
