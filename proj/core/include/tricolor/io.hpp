#pragma once

// File formats: CSP instances as JSON, graphs as DIMACS .col, formulas as DIMACS .cnf.
// Parsers report the position of the first problem; writers emit text the parsers accept.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tricolor/csp.hpp"
#include "tricolor/transform.hpp"

namespace tricolor::io {

/// `where` is "line L, column C" for text formats or a JSON pointer for JSON structure.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& where, const std::string& message)
      : std::runtime_error(where + ": " + message), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// {"variables":[{"id":0,"colors":["R","G","B"]},...],
///  "constraints":[[[0,"R"],[1,"R"]],...]}
/// Colors may be strings or integers. Instance labels index `color_names`.
struct CspDocument {
  Instance instance;
  std::vector<long long> ids;            // external id per variable
  std::vector<std::string> color_names;  // by label
};

CspDocument parse_csp_json(std::string_view text);
std::string write_csp_json(const CspDocument& doc);
/// Ids 0..n-1 and labels printed as decimal numbers.
CspDocument document_for(const Instance& inst);
/// Same format, but a constraint may list any positive number of pairs on distinct
/// variables. Color slots follow each variable's list order.
GeneralCsp parse_general_csp_json(std::string_view text);
/// Ids 0..n-1 and colors 0..d-1.
std::string write_general_csp_json(const GeneralCsp& csp);

/// Lines `c ...`, `p edge N M` (or `p col N M`), `e U V` with 1-based vertices. The
/// number of edge lines must equal M.
Graph parse_dimacs_col(std::string_view text);
std::string write_dimacs_col(const Graph& g, const std::string& comment = "");

/// Standard DIMACS CNF; clauses end with 0 and may span lines; `%` ends the input.
Cnf parse_dimacs_cnf(std::string_view text);
std::string write_dimacs_cnf(const Cnf& f, const std::string& comment = "");

/// Whole file contents. Throws std::runtime_error if the file cannot be read.
std::string read_file(const std::string& path);

}  // namespace tricolor::io
