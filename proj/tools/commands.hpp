#pragma once

// Solve paths shared by the single-run subcommands and the fuzz/bench batches.

#include <optional>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"
#include "tricolor/io.hpp"
#include "tricolor/solver.hpp"

namespace tricolor::cli {

using Json = nlohmann::ordered_json;

struct Outcome {
  SolveStatus status = SolveStatus::Unsat;
  std::string solver;             // which search ran
  Json solution;                  // null unless Sat
  std::vector<std::string> text;  // solution lines for plain output
  Json stats = Json::object();
  std::optional<bool> verified;   // set when the independent checker ran
};

/// Throws std::invalid_argument for an unknown mode or a deterministic run on more than
/// four colors.
Outcome run_csp(const io::CspDocument& doc, const Options& opt, bool verify);
Outcome run_color(const Graph& g, const Options& opt, bool verify);
Outcome run_edge_color(const Graph& g, const Options& opt, bool verify);
Outcome run_sat(const Cnf& f, const Options& opt, bool verify);

/// Brute-force counterparts. Throw std::length_error past the enumeration guard.
Outcome oracle_csp(const io::CspDocument& doc, bool verify);
Outcome oracle_color(const Graph& g, bool verify);
Outcome oracle_edge_color(const Graph& g, bool verify);
Outcome oracle_sat(const Cnf& f, bool verify);

const char* result_name(SolveStatus s);
int exit_code(SolveStatus s);
Json stats_json(const SearchStats& s);

}  // namespace tricolor::cli
