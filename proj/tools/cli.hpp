#pragma once

// The tricolor command line. `run` is main() without the process: tests drive it with
// string streams and compare exit codes and output.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace tricolor::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kSolved = 0,     // sat, colored, or a batch without failures
  kNotSolved = 1,  // unsat, not found, or a batch with failures
  kUsage = 2,      // bad arguments or malformed input
  kLimit = 3,      // node limit or oracle size guard reached
};

struct Options {
  std::string mode = "det";  // det | rand
  std::uint64_t seed = 1;
  std::uint64_t node_limit = 0;
  bool stats = false;
  bool verify = false;
  bool json = false;
  std::string emit;  // translate output format: csp | col | cnf
  int jobs = 1;
};

/// Batch description for `fuzz` and `bench`: KIND[:key=value,...], for example
/// "csp:n=8,d=3,m=16,count=200" or "planted-color:n=40,p=0.2".
struct BatchSpec {
  std::string kind;
  std::map<std::string, std::string> params;

  /// Throws std::invalid_argument on a malformed spec.
  static BatchSpec parse(const std::string& text);
  /// Throws std::invalid_argument when the value is not a number.
  double number(const std::string& key, double fallback) const;
  /// Throws std::invalid_argument for keys outside `allowed`.
  void require_keys(const std::vector<std::string>& allowed) const;
};

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Subcommands, exposed for run() and the tests. Each returns an ExitCode.
int cmd_csp_solve(const std::string& path, const Options& opt, std::ostream& out, std::ostream& err);
int cmd_color(const std::string& path, const Options& opt, std::ostream& out, std::ostream& err);
int cmd_edge_color(const std::string& path, const Options& opt, std::ostream& out, std::ostream& err);
int cmd_sat(const std::string& path, const Options& opt, std::ostream& out, std::ostream& err);
int cmd_translate(const std::string& what, const std::string& path, const Options& opt, std::ostream& out, std::ostream& err);
int cmd_factors(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_oracle(const std::string& mode, const std::string& path, const Options& opt, std::ostream& out, std::ostream& err);
int cmd_fuzz(const std::string& spec, const Options& opt, std::ostream& out, std::ostream& err);
int cmd_bench(const std::string& spec, const Options& opt, std::ostream& out, std::ostream& err);

}  // namespace tricolor::cli
