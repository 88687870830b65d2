#include "commands.hpp"

#include <algorithm>
#include <stdexcept>

#include "tricolor/edge_color.hpp"
#include "tricolor/oracle.hpp"
#include "tricolor/transform.hpp"
#include "tricolor/vertex_color.hpp"

namespace tricolor::cli {

namespace {

int max_colors(const Instance& inst) {
  int d = 0;
  for (int v = 0; v < inst.num_variables(); ++v) {
    if (inst.alive(v)) d = std::max(d, inst.color_count(v));
  }
  return d;
}

SolverConfig config_for(const Options& opt, const Instance& inst) {
  SolverConfig cfg;
  cfg.seed = opt.seed;
  cfg.node_limit = opt.node_limit;
  if (opt.mode == "det") {
    if (max_colors(inst) > 4) {
      throw std::invalid_argument("deterministic search handles at most four colors per variable; use --mode rand");
    }
    cfg.mode = SolverMode::Deterministic;
  } else if (opt.mode == "rand") {
    cfg.mode = max_colors(inst) <= 3 ? SolverMode::Randomized32 : SolverMode::RandomizedD2;
  } else {
    throw std::invalid_argument("unknown mode \"" + opt.mode + "\" (expected det or rand)");
  }
  return cfg;
}

Json color_stats_json(const ColorStats& s) {
  return Json{{"graph_nodes", s.graph_nodes},         {"cycle_branches", s.cycle_branches},
              {"cycles_removed", s.cycles_removed},   {"tree_branches", s.tree_branches},
              {"forest_leaves", s.forest_leaves},     {"partial_colorings", s.partial_colorings},
              {"csp_nodes", s.csp_nodes}};
}

Json vertex_solution(const std::vector<int>& colors, std::vector<std::string>& text) {
  Json map = Json::object();
  for (std::size_t v = 0; v < colors.size(); ++v) {
    map[std::to_string(v + 1)] = colors[v];
    text.push_back(std::to_string(v + 1) + " " + std::to_string(colors[v]));
  }
  return map;
}

Json csp_solution(const io::CspDocument& doc, const Assignment& asg, std::vector<std::string>& text) {
  Json map = Json::object();
  for (int v = 0; v < doc.instance.num_variables(); ++v) {
    const std::string& name = doc.color_names.at(doc.instance.label({v, asg[v]}));
    map[std::to_string(doc.ids[v])] = name;
    text.push_back(std::to_string(doc.ids[v]) + " " + name);
  }
  return map;
}

Json edge_solution(const Graph& g, const std::vector<int>& colors, std::vector<std::string>& text) {
  Json list = Json::array();
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto [u, v] = g.edges[e];
    list.push_back(Json::array({u + 1, v + 1, colors[e]}));
    text.push_back(std::to_string(u + 1) + " " + std::to_string(v + 1) + " " + std::to_string(colors[e]));
  }
  return list;
}

Json sat_solution(const Cnf& f, const std::vector<bool>& values, std::vector<std::string>& text) {
  Json map = Json::object();
  std::string line = "v";
  for (int v = 1; v <= f.num_vars; ++v) {
    map[std::to_string(v)] = static_cast<bool>(values[v]);
    line += " " + std::string(values[v] ? "" : "-") + std::to_string(v);
  }
  text.push_back(line + " 0");
  return map;
}

// Randomized coloring goes through the CSP view, since the graph search is deterministic.
Outcome color_via_csp(const Graph& g, const Options& opt, std::vector<int>& colors) {
  Outcome o;
  const auto inst = coloring_to_csp(g);
  if (!inst) {
    o.status = SolveStatus::Unsat;
    o.solver = "preprocessing";
    return o;
  }
  const SolverConfig cfg = config_for(opt, *inst);
  const SolveResult r = solve(*inst, cfg);
  o.status = r.status;
  o.solver = to_string(cfg.mode);
  o.stats = stats_json(r.stats);
  if (r.status == SolveStatus::Sat) colors = decode_coloring(*inst, r.assignment);
  return o;
}

bool has_loop(const Graph& g) {
  return std::any_of(g.edges.begin(), g.edges.end(), [](const auto& e) { return e.first == e.second; });
}

int max_degree(const Graph& g) {
  std::vector<int> deg(g.n, 0);
  for (auto [u, v] : g.edges) {
    ++deg[u];
    ++deg[v];
  }
  return g.n ? *std::max_element(deg.begin(), deg.end()) : 0;
}

}  // namespace

const char* result_name(SolveStatus s) {
  return s == SolveStatus::ResourceExhausted ? "limit" : to_string(s);
}

int exit_code(SolveStatus s) {
  switch (s) {
    case SolveStatus::Sat: return kSolved;
    case SolveStatus::Unsat:
    case SolveStatus::NotFound: return kNotSolved;
    case SolveStatus::ResourceExhausted: return kLimit;
  }
  return kNotSolved;
}

Json stats_json(const SearchStats& s) {
  Json rules = Json::object();
  for (const auto& [name, count] : s.rule_counts) rules[name] = count;
  return Json{{"nodes", s.nodes},       {"leaves", s.leaves},
              {"max_depth", s.max_depth}, {"rule_counts", rules},
              {"endgame_count", s.endgame_count}, {"trials", s.trials}};
}

Outcome run_csp(const io::CspDocument& doc, const Options& opt, bool verify) {
  const SolverConfig cfg = config_for(opt, doc.instance);
  const SolveResult r = solve(doc.instance, cfg);
  Outcome o;
  o.status = r.status;
  o.solver = to_string(cfg.mode);
  o.stats = stats_json(r.stats);
  if (r.status != SolveStatus::Sat) return o;
  o.solution = csp_solution(doc, r.assignment, o.text);
  if (verify) o.verified = check(doc.instance, r.assignment);
  return o;
}

Outcome run_color(const Graph& g, const Options& opt, bool verify) {
  Outcome o;
  std::vector<int> colors;
  if (opt.mode == "rand") {
    o = color_via_csp(g, opt, colors);
  } else if (opt.mode == "det") {
    SolverConfig cfg;
    cfg.seed = opt.seed;
    cfg.node_limit = opt.node_limit;
    const ColorResult r = color_graph(g, cfg);
    o.status = r.status;
    o.solver = "graph-reductions";
    o.stats = color_stats_json(r.stats);
    colors = r.colors;
  } else {
    throw std::invalid_argument("unknown mode \"" + opt.mode + "\" (expected det or rand)");
  }
  if (o.status != SolveStatus::Sat) return o;
  o.solution = vertex_solution(colors, o.text);
  if (verify) o.verified = oracle::proper_vertex_coloring(g, colors);
  return o;
}

Outcome run_edge_color(const Graph& g, const Options& opt, bool verify) {
  Outcome o;
  std::vector<int> colors;
  if (opt.mode == "rand") {
    if (has_loop(g) || max_degree(g) > 3) {
      o.status = SolveStatus::Unsat;
      o.solver = "preprocessing";
      return o;
    }
    const EdgeInstance ei = EdgeInstance::from_graph(g);
    std::vector<int> ids;
    const Graph line = constrained_line_graph(ei, &ids);
    std::vector<int> line_colors;
    o = color_via_csp(line, opt, line_colors);
    if (o.status == SolveStatus::Sat) {
      colors.assign(g.edges.size(), -1);
      for (std::size_t i = 0; i < ids.size(); ++i) colors[ids[i]] = line_colors[i];
    }
  } else if (opt.mode == "det") {
    SolverConfig cfg;
    cfg.seed = opt.seed;
    cfg.node_limit = opt.node_limit;
    const EdgeColorResult r = edge_color(g, cfg);
    o.status = r.status;
    o.solver = "splice-and-line-graph";
    o.stats = Json{{"stripped", r.stats.stripped},
                   {"splice_set", r.stats.splice_set},
                   {"leaves", r.stats.leaves},
                   {"unsat_children", r.stats.unsat_children},
                   {"broken_splices", r.stats.broken_splices},
                   {"vertex", color_stats_json(r.stats.vertex)}};
    colors = r.colors;
  } else {
    throw std::invalid_argument("unknown mode \"" + opt.mode + "\" (expected det or rand)");
  }
  if (o.status != SolveStatus::Sat) return o;
  o.solution = edge_solution(g, colors, o.text);
  if (verify) o.verified = oracle::proper_edge_coloring(g, colors);
  return o;
}

Outcome run_sat(const Cnf& f, const Options& opt, bool verify) {
  Outcome o;
  std::vector<bool> values;
  if (std::any_of(f.clauses.begin(), f.clauses.end(), [](const auto& c) { return c.empty(); })) {
    o.status = SolveStatus::Unsat;
    o.solver = "preprocessing";
    return o;
  }
  const SatTranslation tr = sat_to_csp(f);
  if (tr.unsat) {
    o.status = SolveStatus::Unsat;
    o.solver = "unit-propagation";
    o.stats = Json{{"three_clauses", tr.three_clauses}, {"two_clauses", tr.two_clauses}};
    return o;
  }
  const SolverConfig cfg = config_for(opt, tr.instance);
  const SolveResult r = solve(tr.instance, cfg);
  o.status = r.status;
  o.solver = to_string(cfg.mode);
  o.stats = stats_json(r.stats);
  o.stats["three_clauses"] = tr.three_clauses;
  o.stats["two_clauses"] = tr.two_clauses;
  if (r.status != SolveStatus::Sat) return o;
  values = decode_sat(tr, r.assignment);
  o.solution = sat_solution(f, values, o.text);
  if (verify) o.verified = evaluate(f, values);
  return o;
}

Outcome oracle_csp(const io::CspDocument& doc, bool verify) {
  Outcome o;
  o.solver = "brute-force";
  const auto asg = oracle::brute_csp(doc.instance);
  o.status = asg ? SolveStatus::Sat : SolveStatus::Unsat;
  if (!asg) return o;
  o.solution = csp_solution(doc, *asg, o.text);
  if (verify) o.verified = check(doc.instance, *asg);
  return o;
}

Outcome oracle_color(const Graph& g, bool verify) {
  Outcome o;
  o.solver = "brute-force";
  const auto colors = oracle::brute_vertex_color(g);
  o.status = colors ? SolveStatus::Sat : SolveStatus::Unsat;
  if (!colors) return o;
  o.solution = vertex_solution(*colors, o.text);
  if (verify) o.verified = oracle::proper_vertex_coloring(g, *colors);
  return o;
}

Outcome oracle_edge_color(const Graph& g, bool verify) {
  Outcome o;
  o.solver = "brute-force";
  const auto colors = oracle::brute_edge_color(g);
  o.status = colors ? SolveStatus::Sat : SolveStatus::Unsat;
  if (!colors) return o;
  o.solution = edge_solution(g, *colors, o.text);
  if (verify) o.verified = oracle::proper_edge_coloring(g, *colors);
  return o;
}

Outcome oracle_sat(const Cnf& f, bool verify) {
  Outcome o;
  o.solver = "brute-force";
  const auto values = oracle::brute_sat(f);
  o.status = values ? SolveStatus::Sat : SolveStatus::Unsat;
  if (!values) return o;
  o.solution = sat_solution(f, *values, o.text);
  if (verify) o.verified = evaluate(f, *values);
  return o;
}

}  // namespace tricolor::cli
