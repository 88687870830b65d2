#include "cli.hpp"

#include <chrono>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <mutex>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "tricolor/analysis.hpp"
#include "tricolor/io.hpp"
#include "tricolor/transform.hpp"

namespace tricolor::cli {

namespace {

// Input problems carry the file name so messages read "FILE: line L, column C: ...".
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string load(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  try {
    return io::read_file(path);
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }
}

template <class Parse>
auto parse_file(const std::string& path, Parse parse) {
  const std::string text = load(path);
  try {
    return parse(text);
  } catch (const io::ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

io::CspDocument load_csp(const std::string& path) {
  return parse_file(path, [](const std::string& t) { return io::parse_csp_json(t); });
}
Graph load_col(const std::string& path) {
  return parse_file(path, [](const std::string& t) { return io::parse_dimacs_col(t); });
}
Cnf load_cnf(const std::string& path) {
  return parse_file(path, [](const std::string& t) { return io::parse_dimacs_cnf(t); });
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

// Prints the run report and picks the exit code. A failed re-check never exits 0.
int report(const std::string& command, const std::string& input, const Options& opt, const Outcome& o,
           double wall_ms, std::ostream& out, std::ostream& err) {
  const bool failed_check = o.verified.has_value() && !*o.verified;
  if (opt.json) {
    Json r;
    r["tool"] = "tricolor";
    r["version"] = kToolVersion;
    r["command"] = command;
    r["input"] = input;
    r["mode"] = opt.mode;
    r["solver"] = o.solver;
    r["seed"] = opt.seed;
    r["node_limit"] = opt.node_limit;
    r["result"] = result_name(o.status);
    r["solution"] = o.solution;
    r["verified"] = o.verified ? Json(*o.verified) : Json(nullptr);
    r["stats"] = o.stats;
    r["wall_ms"] = wall_ms;
    out << r.dump() << "\n";
  } else {
    out << "result: " << result_name(o.status) << "\n";
    for (const std::string& line : o.text) out << line << "\n";
    if (o.verified) out << "verified: " << (*o.verified ? "yes" : "NO") << "\n";
    if (opt.stats) {
      out << "solver: " << o.solver << "\n";
      out << "stats: " << o.stats.dump() << "\n";
      out << "wall_ms: " << std::fixed << std::setprecision(3) << wall_ms << "\n";
    }
  }
  if (failed_check) {
    err << "error: the returned solution failed the independent check\n";
    return kNotSolved;
  }
  return exit_code(o.status);
}

template <class Solve>
int timed(const std::string& command, const std::string& input, const Options& opt, std::ostream& out,
          std::ostream& err, Solve solve) {
  const auto start = std::chrono::steady_clock::now();
  const Outcome o = solve();
  return report(command, input, opt, o, elapsed_ms(start), out, err);
}

std::string fixed(double x, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << x;
  return s.str();
}

std::string vector_text(const analysis::BranchVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fixed(v[i], 4);
  return s + ")";
}

}  // namespace

int cmd_csp_solve(const std::string& path, const Options& opt, std::ostream& out, std::ostream& err) {
  const io::CspDocument doc = load_csp(path);
  return timed("csp solve", path, opt, out, err, [&] { return run_csp(doc, opt, opt.verify); });
}

int cmd_color(const std::string& path, const Options& opt, std::ostream& out, std::ostream& err) {
  const Graph g = load_col(path);
  return timed("color", path, opt, out, err, [&] { return run_color(g, opt, opt.verify); });
}

int cmd_edge_color(const std::string& path, const Options& opt, std::ostream& out, std::ostream& err) {
  const Graph g = load_col(path);
  return timed("edge-color", path, opt, out, err, [&] { return run_edge_color(g, opt, opt.verify); });
}

int cmd_sat(const std::string& path, const Options& opt, std::ostream& out, std::ostream& err) {
  const Cnf f = load_cnf(path);
  return timed("sat", path, opt, out, err, [&] { return run_sat(f, opt, opt.verify); });
}

int cmd_oracle(const std::string& mode, const std::string& path, const Options& opt, std::ostream& out, std::ostream& err) {
  const std::string command = "oracle " + mode;
  if (mode == "csp") {
    const io::CspDocument doc = load_csp(path);
    return timed(command, path, opt, out, err, [&] { return oracle_csp(doc, opt.verify); });
  }
  if (mode == "color" || mode == "edge-color") {
    const Graph g = load_col(path);
    return timed(command, path, opt, out, err,
                 [&] { return mode == "color" ? oracle_color(g, opt.verify) : oracle_edge_color(g, opt.verify); });
  }
  if (mode == "sat") {
    const Cnf f = load_cnf(path);
    return timed(command, path, opt, out, err, [&] { return oracle_sat(f, opt.verify); });
  }
  throw std::invalid_argument("unknown oracle mode \"" + mode + "\" (expected csp, color, edge-color or sat)");
}

int cmd_translate(const std::string& what, const std::string& path, const Options& opt, std::ostream& out, std::ostream& err) {
  const std::string emit = opt.emit.empty() ? "csp" : opt.emit;
  if (emit != "csp" && emit != "source") {
    throw std::invalid_argument("unknown --emit format \"" + emit + "\" (expected csp or source)");
  }
  if (what == "sat") {
    const Cnf f = load_cnf(path);
    if (emit == "source") {
      out << io::write_dimacs_cnf(f);
      return kSolved;
    }
    for (const auto& clause : f.clauses) {
      if (clause.empty()) {
        err << "formula has an empty clause; no instance emitted\n";
        return kNotSolved;
      }
    }
    const SatTranslation tr = sat_to_csp(f);
    if (tr.unsat) {
      err << "unit propagation refutes the formula; no instance emitted\n";
      return kNotSolved;
    }
    out << io::write_csp_json(io::document_for(tr.instance));
    return kSolved;
  }
  if (what == "color") {
    const Graph g = load_col(path);
    if (emit == "source") {
      out << io::write_dimacs_col(g);
      return kSolved;
    }
    const auto inst = coloring_to_csp(g);
    if (!inst) {
      err << "graph has a self-loop; no instance emitted\n";
      return kNotSolved;
    }
    out << io::write_csp_json(io::document_for(*inst));
    return kSolved;
  }
  if (what == "dual") {
    const std::string text = load(path);
    const GeneralCsp csp = parse_file(path, [&](const std::string&) { return io::parse_general_csp_json(text); });
    if (emit == "source") {
      // Binary inputs keep their ids and color names.
      try {
        out << io::write_csp_json(io::parse_csp_json(text));
      } catch (const io::ParseError&) {
        out << io::write_general_csp_json(csp);
      }
      return kSolved;
    }
    const DualResult dual = dualize(csp);
    if (dual.unsat) {
      err << "a constraint allows nothing; no instance emitted\n";
      return kNotSolved;
    }
    out << io::write_general_csp_json(dual.dual);
    return kSolved;
  }
  throw std::invalid_argument("unknown translation \"" + what + "\" (expected sat, color or dual)");
}

int cmd_factors(const Options& opt, std::ostream& out, std::ostream&) {
  const auto opt_eps = analysis::optimize_epsilon();
  const auto table = analysis::lemma_table();
  const auto summary = analysis::summarize(table);
  const auto constants = analysis::bound_report();
  double vertex_bound = 0;
  for (const auto& c : constants) {
    if (c.name == "coloring") vertex_bound = c.value;
  }
  if (opt.json) {
    Json rows = Json::array();
    for (const auto& row : table) {
      rows.push_back({{"rule", row.lemma},
                      {"case", row.branch},
                      {"vector", row.vector},
                      {"factor", row.factor},
                      {"claimed", row.claimed},
                      {"exceeds_claim", row.exceeds_claim}});
    }
    Json named = Json::array();
    for (const auto& c : constants) named.push_back({{"name", c.name}, {"formula", c.formula}, {"value", c.value}});
    Json r{{"lambda_4455", analysis::big_lambda()},
           {"epsilon", opt_eps.epsilon},
           {"vertex_bound", vertex_bound},
           {"balanced_lambda", opt_eps.lambda},
           {"max_rule_bound", summary.max_claimed},
           {"max_case_factor", summary.max_case},
           {"cases_above_rule_bound", summary.exceeding},
           {"rules", rows},
           {"constants", named}};
    out << r.dump(2) << "\n";
    return kSolved;
  }
  std::size_t rule_w = 4, case_w = 4, vec_w = 6;
  for (const auto& row : table) {
    rule_w = std::max(rule_w, row.lemma.size());
    case_w = std::max(case_w, row.branch.size());
    vec_w = std::max(vec_w, vector_text(row.vector).size());
  }
  out << "epsilon " << fixed(opt_eps.epsilon, 6) << "  lambda(4,4,5,5) " << fixed(analysis::big_lambda(), 6)
      << "  vertex bound " << fixed(vertex_bound, 6) << "\n\n";
  out << std::left << std::setw(static_cast<int>(rule_w)) << "rule" << "  " << std::setw(static_cast<int>(case_w))
      << "case" << "  " << std::setw(static_cast<int>(vec_w)) << "vector" << "  factor    bound\n";
  for (const auto& row : table) {
    out << std::left << std::setw(static_cast<int>(rule_w)) << row.lemma << "  "
        << std::setw(static_cast<int>(case_w)) << row.branch << "  " << std::setw(static_cast<int>(vec_w))
        << vector_text(row.vector) << "  " << fixed(row.factor, 6) << "  " << fixed(row.claimed, 6)
        << (row.exceeds_claim ? "  above bound" : "") << "\n";
  }
  out << "\n";
  std::size_t name_w = 4, formula_w = 7;
  for (const auto& c : constants) {
    name_w = std::max(name_w, c.name.size());
    formula_w = std::max(formula_w, c.formula.size());
  }
  for (const auto& c : constants) {
    out << std::left << std::setw(static_cast<int>(name_w)) << c.name << "  " << std::setw(static_cast<int>(formula_w))
        << c.formula << "  " << fixed(c.value, 6) << "\n";
  }
  return kSolved;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Branch-and-reduce solvers for 3-coloring, 3-edge-coloring, 3-SAT and small-domain CSPs",
               "tricolor"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Options opt;
  std::string path, what, mode, spec;
  app.add_option("--mode", opt.mode, "Search mode")->check(CLI::IsMember({"det", "rand"}));
  app.add_option("--seed", opt.seed, "Seed for randomized search and generators");
  app.add_option("--node-limit", opt.node_limit, "Stop after this many search nodes (0 = none)");
  app.add_flag("--stats", opt.stats, "Print search statistics");
  app.add_flag("--verify", opt.verify, "Re-check every solution with an independent checker");
  app.add_flag("--json", opt.json, "Print a JSON run report");

  auto* csp = app.add_subcommand("csp", "CSP instances in JSON form");
  csp->require_subcommand(1);
  auto* solve_cmd = csp->add_subcommand("solve", "Solve a CSP instance");
  solve_cmd->add_option("FILE", path, "Instance file, - for stdin")->required();
  auto* color = app.add_subcommand("color", "3-color a DIMACS .col graph");
  color->add_option("FILE", path, "Graph file, - for stdin")->required();
  auto* edge = app.add_subcommand("edge-color", "3-edge-color a DIMACS .col graph");
  edge->add_option("FILE", path, "Graph file, - for stdin")->required();
  auto* sat = app.add_subcommand("sat", "Solve a DIMACS .cnf formula with at most three literals per clause");
  sat->add_option("FILE", path, "Formula file, - for stdin")->required();
  auto* translate = app.add_subcommand("translate", "Print an input as a CSP instance");
  translate->add_option("KIND", what, "sat, color or dual")->required()->check(CLI::IsMember({"sat", "color", "dual"}));
  translate->add_option("FILE", path, "Input file, - for stdin")->required();
  translate->add_option("--emit", opt.emit, "csp (default) or source to re-emit the parsed input")
      ->check(CLI::IsMember({"csp", "source"}));
  auto* factors = app.add_subcommand("factors", "Print branching work factors and running-time constants");
  auto* oracle = app.add_subcommand("oracle", "Solve an input by exhaustive enumeration");
  oracle->add_option("MODE", mode, "csp, color, edge-color or sat")
      ->required()
      ->check(CLI::IsMember({"csp", "color", "edge-color", "sat"}));
  oracle->add_option("FILE", path, "Input file, - for stdin")->required();
  auto* fuzz = app.add_subcommand("fuzz", "Compare solvers with the oracles on generated instances");
  fuzz->add_option("SPEC", spec, "KIND[:key=value,...]")->required();
  fuzz->add_option("--jobs", opt.jobs, "Worker threads")->check(CLI::PositiveNumber);
  auto* bench = app.add_subcommand("bench", "Time the solvers on generated instances");
  bench->add_option("SPEC", spec, "KIND[:key=value,...]")->required();
  bench->add_option("--jobs", opt.jobs, "Worker threads")->check(CLI::PositiveNumber);
  for (auto* sub : {csp, solve_cmd, color, edge, sat, translate, factors, oracle, fuzz, bench}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*csp) return cmd_csp_solve(path, opt, out, err);
    if (*color) return cmd_color(path, opt, out, err);
    if (*edge) return cmd_edge_color(path, opt, out, err);
    if (*sat) return cmd_sat(path, opt, out, err);
    if (*translate) return cmd_translate(what, path, opt, out, err);
    if (*factors) return cmd_factors(opt, out, err);
    if (*oracle) return cmd_oracle(mode, path, opt, out, err);
    if (*fuzz) return cmd_fuzz(spec, opt, out, err);
    if (*bench) return cmd_bench(spec, opt, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return kLimit;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace tricolor::cli
