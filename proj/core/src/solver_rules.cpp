#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "tricolor/graph_alg.hpp"
#include "tricolor/solver.hpp"

namespace tricolor {

namespace {

constexpr double kE = kEpsilon;

double vsize(const Instance& in, int v) { return size_of(in.color_count(v)); }

// Size lost when `v` gives up `n` of its colors.
double drop(const Instance& in, int v, int n = 1) {
  const int k = in.color_count(v);
  return size_of(k) - size_of(std::max(0, k - n));
}

// Eliminating p.var and the adjacent colors; variables in `skip` are not credited.
double use_claim(const Instance& in, PairRef p, std::set<int> skip = {}) {
  std::map<int, int> lost;
  for (const PairRef& q : in.neighbors(p)) {
    if (q.var != p.var && !skip.count(q.var)) ++lost[q.var];
  }
  double total = vsize(in, p.var);
  for (auto [u, n] : lost) total += drop(in, u, n);
  return total;
}

// Joint effect of using and avoiding several pairs, each lost color counted once.
double joint_claim(const Instance& in, const std::vector<PairRef>& uses, const std::vector<PairRef>& avoids) {
  std::set<int> assigned;
  for (const PairRef& p : uses) assigned.insert(p.var);
  std::map<int, std::set<int>> lost;
  for (const PairRef& p : uses) {
    for (const PairRef& q : in.neighbors(p)) lost[q.var].insert(q.color);
  }
  for (const PairRef& p : avoids) lost[p.var].insert(p.color);
  double total = 0;
  for (int v : assigned) total += vsize(in, v);
  for (const auto& [u, colors] : lost) {
    if (!assigned.count(u)) total += drop(in, u, static_cast<int>(colors.size()));
  }
  return total;
}

std::vector<PairRef> live_pairs(const Instance& in) {
  std::vector<PairRef> out;
  for (int v = 0; v < in.num_variables(); ++v) {
    if (!in.alive(v)) continue;
    for (int c : in.colors(v)) out.push_back({v, c});
  }
  return out;
}

PairRef other_neighbor(const Instance& in, PairRef p, PairRef not_this) {
  for (const PairRef& q : in.neighbors(p)) {
    if (q != not_this) return q;
  }
  throw std::logic_error("other_neighbor: pair has no second constraint");
}

class ChildBuilder {
 public:
  explicit ChildBuilder(const Instance& in) : inst_(in) {}

  ChildBuilder& use(PairRef p) {
    if (dead_) return *this;
    if (!inst_.alive(p.var) || !inst_.valid(p)) {
      dead_ = true;
      return *this;
    }
    trace_.push_back(detail::assign_in_place(inst_, p));
    dead_ = inst_.contradiction();
    return *this;
  }
  ChildBuilder& avoid(PairRef p) {
    if (!dead_ && inst_.alive(p.var) && inst_.valid(p)) {
      inst_.remove_color(p.var, p.color);
      dead_ = inst_.contradiction();
    }
    return *this;
  }
  // Replaces the isolated constraint (a,b) by one variable holding the other colors of both.
  ChildBuilder& merge(PairRef a, PairRef b) {
    if (dead_) return *this;
    lift_step::IsolatedMerge step{-1, a, b, {}};
    std::vector<int> labels;
    for (PairRef src : {a, b}) {
      for (int c : inst_.colors(src.var)) {
        if (c == src.color) continue;
        step.origins.push_back({src.var, c});
        labels.push_back(inst_.label({src.var, c}));
      }
    }
    const int m = inst_.add_variable(std::move(labels));
    step.merged = m;
    for (int i = 0; i < static_cast<int>(step.origins.size()); ++i) {
      const std::vector<PairRef> nbrs(inst_.neighbors(step.origins[i]).begin(),
                                      inst_.neighbors(step.origins[i]).end());
      for (const PairRef& q : nbrs) {
        if (q.var != a.var && q.var != b.var) inst_.add_constraint({m, i}, q);
      }
    }
    inst_.remove_variable(a.var);
    inst_.remove_variable(b.var);
    trace_.push_back(std::move(step));
    return *this;
  }

  bool dead() const { return dead_; }
  BranchChild take() { return {std::move(inst_), std::move(trace_)}; }

 private:
  Instance inst_;
  LiftTrace trace_;
  bool dead_ = false;
};

class SetBuilder {
 public:
  SetBuilder(std::string rule, std::string branch) {
    set_.rule = std::move(rule);
    set_.branch = std::move(branch);
  }
  void add(ChildBuilder& child, double claim) {
    if (child.dead()) return;  // provably unsatisfiable branch
    set_.children.push_back(child.take());
    set_.claimed.push_back(claim);
  }
  BranchSet done() { return std::move(set_); }

 private:
  BranchSet set_;
};

std::string color_case(const Instance& in, int v, int w) {
  const int kv = in.color_count(v);
  const int kw = in.color_count(w);
  if (kv == 3 && kw == 3) return "both three-color";
  if (kv == 4 && kw == 4) return "both four-color";
  return kv == 4 ? "v four-color" : "w four-color";
}

// Three children: use p; avoid p then expand the dangling constraint (w,x) both ways.
BranchSet dangling_expansion(const Instance& in, std::string rule, std::string branch, PairRef p,
                             PairRef w, PairRef x, std::vector<PairRef> pre_avoid = {},
                             double pre_claim = 0) {
  SetBuilder s(std::move(rule), std::move(branch));
  std::set<int> skip;
  for (const PairRef& a : pre_avoid) skip.insert(a.var);
  auto base = [&] {
    ChildBuilder b(in);
    for (const PairRef& a : pre_avoid) b.avoid(a);
    return b;
  };
  {
    ChildBuilder c = base();
    c.use(p);
    s.add(c, pre_claim + use_claim(in, p, skip));
  }
  {
    ChildBuilder c = base();
    c.avoid(p).use(x);
    s.add(c, pre_claim + drop(in, p.var) + vsize(in, x.var) + drop(in, w.var) + (1 - kE));
  }
  {
    ChildBuilder c = base();
    c.avoid(p).avoid(x).use(w);
    s.add(c, pre_claim + drop(in, p.var) + vsize(in, w.var) + drop(in, x.var));
  }
  return s.done();
}

BranchSet use_each(const Instance& in, std::string rule, std::string branch, const std::vector<PairRef>& pairs,
                   std::vector<PairRef> pre_avoid = {}, double pre_claim = 0) {
  SetBuilder s(std::move(rule), std::move(branch));
  std::set<int> skip;
  for (const PairRef& a : pre_avoid) skip.insert(a.var);
  for (const PairRef& p : pairs) {
    ChildBuilder c(in);
    for (const PairRef& a : pre_avoid) c.avoid(a);
    c.use(p);
    s.add(c, pre_claim + use_claim(in, p, skip));
  }
  return s.done();
}

// One child per maximal consistent choice of component pairs (at most one per variable).
BranchSet component_colorings(const Instance& in, const Component& comp, std::string rule) {
  const auto& vars = comp.variables;
  if (vars.size() > 8) throw std::logic_error("component_colorings: component spans too many variables");
  std::vector<std::vector<PairRef>> options(vars.size());
  for (const PairRef& p : comp.pairs) {
    const auto idx = std::lower_bound(vars.begin(), vars.end(), p.var) - vars.begin();
    options[idx].push_back(p);
  }
  std::vector<std::vector<PairRef>> maximal;
  std::vector<PairRef> chosen;
  auto consistent = [&](PairRef p) {
    return std::none_of(chosen.begin(), chosen.end(), [&](PairRef q) { return in.constrained(p, q); });
  };
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == vars.size()) {
      // Maximal iff no uncolored variable could still take a component pair.
      for (std::size_t j = 0; j < vars.size(); ++j) {
        const bool colored = std::any_of(chosen.begin(), chosen.end(), [&](PairRef q) { return q.var == vars[j]; });
        if (colored) continue;
        if (std::any_of(options[j].begin(), options[j].end(), consistent)) return;
      }
      maximal.push_back(chosen);
      return;
    }
    for (const PairRef& p : options[i]) {
      if (!consistent(p)) continue;
      chosen.push_back(p);
      rec(i + 1);
      chosen.pop_back();
    }
    rec(i + 1);
  };
  rec(0);

  for (const auto& m : maximal) {
    if (m.size() == vars.size()) {
      SetBuilder s(std::move(rule), "complete coloring");
      ChildBuilder c(in);
      double claim = 0;
      for (const PairRef& p : m) {
        c.use(p);
        claim += vsize(in, p.var);
      }
      s.add(c, claim);
      return s.done();
    }
  }
  SetBuilder s(std::move(rule), "maximal partial colorings");
  for (const auto& m : maximal) {
    ChildBuilder c(in);
    double claim = 0;
    for (std::size_t j = 0; j < vars.size(); ++j) {
      auto it = std::find_if(m.begin(), m.end(), [&](PairRef q) { return q.var == vars[j]; });
      if (it != m.end()) {
        claim += vsize(in, vars[j]);
      } else {
        claim += drop(in, vars[j], static_cast<int>(options[j].size()));
      }
    }
    for (const PairRef& p : m) c.use(p);
    for (std::size_t j = 0; j < vars.size(); ++j) {
      for (const PairRef& p : options[j]) c.avoid(p);
    }
    s.add(c, claim);
  }
  return s.done();
}

}  // namespace

std::optional<BranchSet> branch_isolated(const Instance& in) {
  for (const PairRef& p : live_pairs(in)) {
    if (in.degree(p) != 1) continue;
    const PairRef q = in.neighbors(p).front();
    if (in.degree(q) != 1) continue;
    const int v = p.var;
    const int w = q.var;
    if (in.color_count(v) == 3 && in.color_count(w) == 3) {
      SetBuilder s("isolated", "both three-color (merge)");
      ChildBuilder c(in);
      c.merge(p, q);
      s.add(c, kE);
      return s.done();
    }
    SetBuilder s("isolated", color_case(in, v, w));
    ChildBuilder a(in);
    a.use(p);
    s.add(a, vsize(in, v) + drop(in, w));
    ChildBuilder b(in);
    b.use(q);
    s.add(b, vsize(in, w) + drop(in, v));
    return s.done();
  }
  return std::nullopt;
}

std::optional<BranchSet> branch_dangling(const Instance& in) {
  for (const PairRef& p : live_pairs(in)) {
    if (in.degree(p) != 1) continue;
    const PairRef q = in.neighbors(p).front();
    if (in.degree(q) < 2) continue;
    const int v = p.var;
    const int w = q.var;
    SetBuilder s("dangling", color_case(in, v, w));
    ChildBuilder a(in);
    a.use(q);
    s.add(a, vsize(in, w) + drop(in, v) + (1 - kE));
    ChildBuilder b(in);
    b.avoid(q).use(p);
    s.add(b, vsize(in, v) + drop(in, w));
    return s.done();
  }
  return std::nullopt;
}

std::optional<BranchSet> branch_multiple_adjacency(const Instance& in) {
  struct Implication {
    PairRef source;
    PairRef target;
  };
  std::vector<Implication> implications;
  std::optional<std::pair<PairRef, int>> double_adj;  // (source pair, variable hit twice)
  for (const PairRef& p : live_pairs(in)) {
    std::map<int, std::vector<int>> hit;
    for (const PairRef& q : in.neighbors(p)) hit[q.var].push_back(q.color);
    for (const auto& [u, cs] : hit) {
      if (cs.size() < 2) continue;
      if (!double_adj) double_adj = std::make_pair(p, u);
      if (static_cast<int>(cs.size()) == in.color_count(u) - 1) {
        for (int c : in.colors(u)) {
          if (std::find(cs.begin(), cs.end(), c) == cs.end()) implications.push_back({p, {u, c}});
        }
      }
    }
  }
  if (!double_adj) return std::nullopt;

  std::set<PairRef> sources;
  for (const auto& im : implications) sources.insert(im.source);

  for (const auto& im : implications) {
    if (sources.count(im.target)) continue;
    const int w = im.target.var;
    SetBuilder s("multiple-adjacency", in.color_count(w) == 4 ? "implication target not a source, w four-color"
                                                              : "implication target not a source, w three-color");
    ChildBuilder a(in);
    a.use(im.target);
    s.add(a, vsize(in, w) + 2 * (1 - kE));
    ChildBuilder b(in);
    b.avoid(im.target).avoid(im.source);
    s.add(b, drop(in, w) + drop(in, im.source.var));
    return s.done();
  }

  if (!implications.empty()) {
    std::map<PairRef, PairRef> next;
    for (const auto& im : implications) next.emplace(im.source, im.target);
    std::vector<PairRef> walk;
    PairRef cur = implications.front().source;
    while (std::find(walk.begin(), walk.end(), cur) == walk.end()) {
      walk.push_back(cur);
      cur = next.at(cur);
    }
    const std::vector<PairRef> cycle(std::find(walk.begin(), walk.end(), cur), walk.end());
    std::map<int, int> per_var;
    for (const PairRef& p : cycle) ++per_var[p.var];
    bool consistent = per_var.size() == cycle.size();
    for (std::size_t i = 0; i < cycle.size() && consistent; ++i) {
      for (std::size_t j = i + 1; j < cycle.size(); ++j) consistent &= !in.constrained(cycle[i], cycle[j]);
    }
    double avoid_claim = 0;
    for (auto [u, n] : per_var) avoid_claim += drop(in, u, n);
    if (!consistent) {
      SetBuilder s("multiple-adjacency", "implication cycle, cannot all be used");
      ChildBuilder c(in);
      for (const PairRef& p : cycle) c.avoid(p);
      s.add(c, avoid_claim);
      return s.done();
    }
    bool outside = false;
    double use_total = 0;
    for (const PairRef& p : cycle) {
      use_total += vsize(in, p.var);
      for (const PairRef& q : in.neighbors(p)) outside |= !per_var.count(q.var);
    }
    ChildBuilder all(in);
    for (const PairRef& p : cycle) all.use(p);
    if (!outside) {
      SetBuilder s("multiple-adjacency", "implication cycle without outside constraints");
      s.add(all, use_total);
      return s.done();
    }
    SetBuilder s("multiple-adjacency", "implication cycle");
    s.add(all, use_total + (1 - kE));
    ChildBuilder none(in);
    for (const PairRef& p : cycle) none.avoid(p);
    s.add(none, avoid_claim);
    return s.done();
  }

  // A pair constrains exactly two colors of a four-color variable.
  const auto [p, u] = *double_adj;
  std::vector<int> hit;
  for (const PairRef& q : in.neighbors(p)) {
    if (q.var == u) hit.push_back(q.color);
  }
  SetBuilder s("multiple-adjacency", "no implication, four-color w");
  ChildBuilder a(in);
  for (int c : in.colors(u)) {
    if (std::find(hit.begin(), hit.end(), c) == hit.end()) a.avoid({u, c});
  }
  a.avoid(p);
  s.add(a, vsize(in, u) + drop(in, p.var));
  ChildBuilder b(in);
  for (int c : hit) b.avoid({u, c});
  s.add(b, vsize(in, u));
  return s.done();
}

std::optional<BranchSet> branch_high_degree(const Instance& in) {
  for (const PairRef& p : live_pairs(in)) {
    const int k = in.color_count(p.var);
    const int threshold = k >= 4 ? 3 : 4;
    if (in.degree(p) < threshold) continue;
    SetBuilder s("high-degree", k >= 4 ? "four-color, degree >= 3" : "three-color, degree >= 4");
    ChildBuilder a(in);
    a.use(p);
    s.add(a, vsize(in, p.var) + threshold * (1 - kE));
    ChildBuilder b(in);
    b.avoid(p);
    s.add(b, drop(in, p.var));
    return s.done();
  }
  return std::nullopt;
}

std::optional<BranchSet> branch_triple_with_four(const Instance& in) {
  for (const PairRef& p : live_pairs(in)) {
    if (in.degree(p) != 3) continue;
    // Prefer a four-color neighbor outside any triangle with p.
    std::optional<std::pair<PairRef, PairRef>> pick, triangle;
    for (const PairRef& w : in.neighbors(p)) {
      if (in.color_count(w.var) != 4 || in.degree(w) != 2) continue;
      const PairRef x = other_neighbor(in, w, p);
      if (!in.constrained(p, x)) {
        pick = {w, x};
        break;
      }
      if (!triangle) triangle = {w, x};
    }
    if (pick) {
      const auto [w, x] = *pick;
      return dangling_expansion(in, "triple-with-four", "no triangle", p, w, x);
    }
    if (triangle) {
      const auto [w, x] = *triangle;
      return use_each(in, "triple-with-four",
                      in.color_count(x.var) == 4 ? "triangle, x four-color" : "triangle, x three-color", {p, w, x});
    }
  }
  return std::nullopt;
}

std::optional<BranchSet> branch_triple_with_two(const Instance& in) {
  for (const PairRef& p : live_pairs(in)) {
    if (in.degree(p) != 3) continue;
    for (const PairRef& w : in.neighbors(p)) {
      if (in.degree(w) != 2) continue;
      const PairRef x = other_neighbor(in, w, p);
      if (!in.constrained(p, x)) return dangling_expansion(in, "triple-with-two", "no triangle", p, w, x);
      if (in.degree(x) >= 3) return use_each(in, "triple-with-two", "triangle, x triple", {p, w, x});
      SetBuilder s("triple-with-two", "triangle, x double");
      ChildBuilder a(in);
      a.use(p);
      s.add(a, use_claim(in, p));
      ChildBuilder b(in);
      b.avoid(p).merge(w, x);
      s.add(b, drop(in, p.var) + kE);
      return s.done();
    }
  }
  return std::nullopt;
}

const char* to_string(ComponentKind k) {
  switch (k) {
    case ComponentKind::GoodSmallThree: return "good-small-3";
    case ComponentKind::SmallThree: return "small-3";
    case ComponentKind::FullSmallThree: return "full-small-3";
    case ComponentKind::LargeThree: return "large-3";
    case ComponentKind::SmallTwo: return "small-2";
    case ComponentKind::LargeTwo: return "large-2";
  }
  return "?";
}

std::vector<Component> classify_components(const Instance& in) {
  std::vector<Component> out;
  std::set<PairRef> seen;
  for (const PairRef& start : live_pairs(in)) {
    if (seen.count(start)) continue;
    const int deg = in.degree(start);
    if (deg != 2 && deg != 3) {
      throw std::logic_error("classify_components: pair of degree " + std::to_string(deg));
    }
    Component comp{ComponentKind::LargeTwo, {}, {}};
    std::deque<PairRef> queue{start};
    seen.insert(start);
    while (!queue.empty()) {
      const PairRef p = queue.front();
      queue.pop_front();
      comp.pairs.push_back(p);
      for (const PairRef& q : in.neighbors(p)) {
        if (in.degree(q) != deg) throw std::logic_error("classify_components: neighbors differ in degree");
        if (seen.insert(q).second) queue.push_back(q);
      }
    }
    std::sort(comp.pairs.begin(), comp.pairs.end());
    for (const PairRef& p : comp.pairs) comp.variables.push_back(p.var);
    comp.variables.erase(std::unique(comp.variables.begin(), comp.variables.end()), comp.variables.end());
    const std::size_t k = comp.pairs.size();
    if (deg == 3) {
      if (comp.variables.size() >= 5) {
        comp.kind = ComponentKind::LargeThree;
      } else if (k == 4) {
        comp.kind = ComponentKind::GoodSmallThree;
      } else if (k == 8) {
        comp.kind = ComponentKind::SmallThree;
      } else if (k == 12) {
        comp.kind = ComponentKind::FullSmallThree;
      } else {
        throw std::logic_error("classify_components: small three-component with " + std::to_string(k) + " pairs");
      }
    } else {
      comp.kind = k == 3 ? ComponentKind::SmallTwo : ComponentKind::LargeTwo;
    }
    out.push_back(std::move(comp));
  }
  return out;
}

std::vector<Witness> find_witnesses(const Instance& in, const Component& c) {
  // Candidate centers in breadth-first order from the component's first pair.
  std::vector<PairRef> order;
  std::set<PairRef> seen{c.pairs.front()};
  std::deque<PairRef> queue{c.pairs.front()};
  while (!queue.empty()) {
    const PairRef p = queue.front();
    queue.pop_front();
    order.push_back(p);
    for (const PairRef& q : in.neighbors(p)) {
      if (seen.insert(q).second) queue.push_back(q);
    }
  }
  std::vector<Witness> out;
  for (const PairRef& v : order) {
    const std::vector<PairRef> n(in.neighbors(v).begin(), in.neighbors(v).end());
    if (n.size() != 3) continue;
    const std::set<int> used{v.var, n[0].var, n[1].var, n[2].var};
    if (used.size() != 4) continue;
    std::set<PairRef> zs;
    for (const PairRef& q : n) {
      for (const PairRef& z : in.neighbors(q)) {
        if (!used.count(z.var)) zs.insert(z);
      }
    }
    for (const PairRef& z : zs) {
      // w, x, y ordered so that the pairs adjacent to z come first.
      std::vector<PairRef> wxy = n;
      std::stable_partition(wxy.begin(), wxy.end(), [&](PairRef q) { return in.constrained(q, z); });
      out.push_back({v, wxy[0], wxy[1], wxy[2], z});
    }
  }
  return out;
}

namespace {

std::optional<Component> first_of(const Instance& in, std::initializer_list<ComponentKind> kinds) {
  for (auto& c : classify_components(in)) {
    if (std::find(kinds.begin(), kinds.end(), c.kind) != kinds.end()) return std::move(c);
  }
  return std::nullopt;
}

int witness_hits(const Instance& in, const Witness& t) {
  return in.constrained(t.z, t.w) + in.constrained(t.z, t.x) + in.constrained(t.z, t.y);
}

// Triangle partner of w once z is avoided, if w's remaining neighbors include x or y.
std::optional<PairRef> triangle_partner(const Instance& in, const Witness& t) {
  for (const PairRef& q : in.neighbors(t.w)) {
    if (q == t.x || q == t.y) return q;
  }
  return std::nullopt;
}

bool usable(const Instance& in, const Witness& t) {
  if (witness_hits(in, t) != 1) return true;
  const auto partner = triangle_partner(in, t);
  if (!partner) return true;
  for (const PairRef& q : in.neighbors(*partner)) {
    if (q != t.v && q != t.w && q.var == t.z.var) return false;
  }
  return true;
}

}  // namespace

std::optional<BranchSet> branch_small_three(const Instance& in) {
  const auto comp = first_of(in, {ComponentKind::SmallThree, ComponentKind::FullSmallThree});
  if (!comp) return std::nullopt;
  return component_colorings(in, *comp, "small-three-component");
}

std::optional<BranchSet> branch_large_three(const Instance& in) {
  const auto comp = first_of(in, {ComponentKind::LargeThree});
  if (!comp) return std::nullopt;
  const auto witnesses = find_witnesses(in, *comp);
  if (witnesses.empty()) throw std::logic_error("branch_large_three: large three-component without a witness");
  auto chosen = std::find_if(witnesses.begin(), witnesses.end(), [&](const Witness& t) { return usable(in, t); });
  const Witness t = chosen != witnesses.end() ? *chosen : witnesses.front();
  const std::string rule = "large-three-component";
  const double z_drop = drop(in, t.z.var);

  switch (witness_hits(in, t)) {
    case 1: {
      if (const auto partner = triangle_partner(in, t)) {
        BranchSet s = use_each(in, rule, "one witness neighbor", {t.v, t.w, *partner}, {t.z}, z_drop);
        ChildBuilder c(in);
        c.use(t.z);
        if (!c.dead()) {
          s.children.insert(s.children.begin(), c.take());
          s.claimed.insert(s.claimed.begin(), use_claim(in, t.z));
        }
        return s;
      }
      std::optional<PairRef> q;
      for (const PairRef& r : in.neighbors(t.w)) {
        if (r != t.v && r != t.z) q = r;
      }
      if (!q) throw std::logic_error("branch_large_three: witness pair lacks a third constraint");
      BranchSet s = dangling_expansion(in, rule, "one witness neighbor, no triangle", t.v, t.w, *q, {t.z}, z_drop);
      ChildBuilder c(in);
      c.use(t.z);
      if (!c.dead()) {
        s.children.insert(s.children.begin(), c.take());
        s.claimed.insert(s.claimed.begin(), use_claim(in, t.z));
      }
      return s;
    }
    case 2: {
      SetBuilder s(rule, "two witness neighbors");
      ChildBuilder a(in);
      a.avoid(t.z);
      s.add(a, z_drop);
      ChildBuilder b(in);
      b.use(t.z).use(t.y);
      s.add(b, joint_claim(in, {t.z, t.y}, {}));
      ChildBuilder c(in);
      c.use(t.z).avoid(t.y).use(t.v);
      s.add(c, joint_claim(in, {t.z, t.v}, {t.y}));
      return s.done();
    }
    default: {
      SetBuilder s(rule, "three witness neighbors");
      ChildBuilder a(in);
      a.avoid(t.z);
      s.add(a, z_drop);
      ChildBuilder b(in);
      b.use(t.z).use(t.v);
      s.add(b, joint_claim(in, {t.z, t.v}, {}));
      return s.done();
    }
  }
}

std::optional<BranchSet> branch_large_two(const Instance& in) {
  const auto comp = first_of(in, {ComponentKind::LargeTwo});
  if (!comp) return std::nullopt;
  std::vector<PairRef> cycle{comp->pairs.front()};
  PairRef prev = comp->pairs.front();
  PairRef cur = in.neighbors(prev).front();
  while (cur != cycle.front()) {
    cycle.push_back(cur);
    const PairRef next = other_neighbor(in, cur, prev);
    prev = cur;
    cur = next;
  }
  const int len = static_cast<int>(cycle.size());
  auto at = [&](int i) { return cycle[((i % len) + len) % len]; };
  const std::string rule = "large-two-component";

  if (len >= 5) {
    int best = -1;
    for (int i = 0; i < len; ++i) {
      std::set<int> vars;
      for (int j = 0; j < 5; ++j) vars.insert(at(i + j).var);
      if (vars.size() != 5) continue;
      if (best < 0) best = i;
      if (in.color_count(at(i + 4).var) == 3) {
        best = i;
        break;
      }
    }
    if (best >= 0) {
      const PairRef v = at(best), w = at(best + 1), x = at(best + 2), y = at(best + 3), z = at(best + 4);
      SetBuilder s(rule, "five distinct variables");
      ChildBuilder a(in);
      a.use(w);
      s.add(a, use_claim(in, w));
      ChildBuilder b(in);
      b.use(x);
      s.add(b, use_claim(in, x));
      ChildBuilder c(in);
      c.use(v).use(y);
      s.add(c, vsize(in, v.var) + vsize(in, y.var) + drop(in, w.var) + drop(in, x.var) + drop(in, z.var));
      return s.done();
    }
  }
  for (int i = 0; i < len; ++i) {
    if (at(i).var != at(i + 3).var) continue;
    const PairRef w = at(i + 1), x = at(i + 2);
    SetBuilder s(rule, "repeated variable");
    ChildBuilder a(in);
    a.use(w);
    s.add(a, use_claim(in, w));
    ChildBuilder b(in);
    b.use(x);
    s.add(b, use_claim(in, x));
    return s.done();
  }
  BranchSet s = component_colorings(in, *comp, rule);
  s.branch = len == 4 ? "length-four cycle" : "repeated four-variable cycle";
  return s;
}

std::optional<BranchSet> choose_branch(const Instance& in) {
  using Rule = std::optional<BranchSet> (*)(const Instance&);
  static constexpr Rule rules[] = {branch_isolated,         branch_dangling,        branch_multiple_adjacency,
                                   branch_high_degree,      branch_triple_with_four, branch_triple_with_two,
                                   branch_small_three,      branch_large_three,     branch_large_two};
  for (Rule r : rules) {
    if (auto s = r(in)) return s;
  }
  return std::nullopt;
}

std::optional<Assignment> matching_endgame(const Instance& in) {
  const auto comps = classify_components(in);
  for (const auto& c : comps) {
    if (c.kind != ComponentKind::GoodSmallThree && c.kind != ComponentKind::SmallTwo) {
      throw std::logic_error(std::string("matching_endgame: unexpected ") + to_string(c.kind) + " component");
    }
  }
  std::vector<int> vars;
  std::map<int, int> var_index;
  for (int v = 0; v < in.num_variables(); ++v) {
    if (!in.alive(v)) continue;
    var_index[v] = static_cast<int>(vars.size());
    vars.push_back(v);
  }
  std::vector<Edge> edges;
  std::map<std::pair<int, int>, PairRef> via;
  for (int ci = 0; ci < static_cast<int>(comps.size()); ++ci) {
    for (const PairRef& p : comps[ci].pairs) {
      const std::pair<int, int> e{var_index.at(p.var), ci};
      if (via.emplace(e, p).second) edges.push_back(e);
    }
  }
  const auto m = bipartite_matching(static_cast<int>(vars.size()), static_cast<int>(comps.size()), edges);
  if (m.size() != vars.size()) return std::nullopt;
  Assignment asg(in.num_variables(), -1);
  for (const auto& e : m) asg[vars[e.first]] = via.at(e).color;
  return asg;
}

}  // namespace tricolor
