// fuzz and bench: generated instances, optionally spread over worker threads. Results are
// collected by instance index, so the report does not depend on scheduling.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cli.hpp"
#include "commands.hpp"
#include "tricolor/oracle.hpp"

namespace tricolor::cli {

BatchSpec BatchSpec::parse(const std::string& text) {
  BatchSpec spec;
  const auto colon = text.find(':');
  spec.kind = text.substr(0, colon);
  if (spec.kind.empty()) throw std::invalid_argument("batch spec needs a kind before ':'");
  if (colon == std::string::npos) return spec;
  std::stringstream rest(text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
      throw std::invalid_argument("batch spec entry \"" + item + "\" is not key=value");
    }
    if (!spec.params.emplace(item.substr(0, eq), item.substr(eq + 1)).second) {
      throw std::invalid_argument("batch spec repeats \"" + item.substr(0, eq) + "\"");
    }
  }
  return spec;
}

double BatchSpec::number(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(it->second, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != it->second.size()) throw std::invalid_argument("batch spec value " + key + "=" + it->second + " is not a number");
  return value;
}

void BatchSpec::require_keys(const std::vector<std::string>& allowed) const {
  for (const auto& [key, value] : params) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw std::invalid_argument("batch spec key \"" + key + "\" does not apply to " + kind);
    }
  }
}

namespace {

enum class Expect { Sat, Unsat, Unknown };

struct Item {
  std::uint64_t seed = 0;
  Outcome outcome;
  Expect expect = Expect::Unknown;
  double ms = 0;
};

// One generated instance: the solve under test and, for fuzz, the reference answer.
struct Case {
  std::function<Outcome(const Options&)> solve;
  std::function<Expect()> reference;
};

int as_int(const BatchSpec& spec, const std::string& key, int fallback) {
  const double v = spec.number(key, fallback);
  if (v != static_cast<int>(v)) throw std::invalid_argument("batch spec value " + key + " must be an integer");
  return static_cast<int>(v);
}

Expect from(bool sat) { return sat ? Expect::Sat : Expect::Unsat; }

std::function<Case(std::uint64_t)> generator(const BatchSpec& spec) {
  const std::string& k = spec.kind;
  if (k == "csp" || k == "planted-csp") {
    spec.require_keys({"n", "d", "mind", "m", "count"});
    const int n = as_int(spec, "n", 8), d = as_int(spec, "d", 3);
    const int mind = as_int(spec, "mind", std::min(3, d)), m = as_int(spec, "m", 7 * n);
    const bool planted = k == "planted-csp";
    return [=](std::uint64_t seed) {
      const Instance inst = planted ? oracle::planted_csp(n, mind, d, m, seed).first
                                    : oracle::random_csp(n, mind, d, m, seed);
      const io::CspDocument doc = io::document_for(inst);
      return Case{[doc](const Options& o) { return run_csp(doc, o, true); },
                  [inst, planted] { return planted ? Expect::Sat : from(oracle::brute_csp(inst).has_value()); }};
    };
  }
  if (k == "color" || k == "planted-color") {
    spec.require_keys({"n", "p", "count"});
    const int n = as_int(spec, "n", k == "color" ? 10 : 40);
    const double p = spec.number("p", k == "color" ? 0.3 : 0.2);
    const bool planted = k == "planted-color";
    return [=](std::uint64_t seed) {
      const Graph g = planted ? oracle::planted_3colorable(n, p, seed).first : oracle::random_graph(n, p, seed);
      return Case{[g](const Options& o) { return run_color(g, o, true); },
                  [g, planted] { return planted ? Expect::Sat : from(oracle::brute_vertex_color(g).has_value()); }};
    };
  }
  if (k == "edge-color" || k == "cubic" || k == "planted-cubic") {
    const bool subcubic = k == "edge-color";
    spec.require_keys(subcubic ? std::vector<std::string>{"n", "m", "count"} : std::vector<std::string>{"n", "count"});
    const int n = as_int(spec, "n", subcubic ? 8 : 10), m = as_int(spec, "m", 10);
    const bool planted = k == "planted-cubic";
    return [=](std::uint64_t seed) {
      const Graph g = subcubic ? oracle::random_subcubic(n, m, seed)
                      : planted ? oracle::planted_edge_colorable_cubic(n, seed).first
                                : oracle::random_cubic(n, seed);
      return Case{[g](const Options& o) { return run_edge_color(g, o, true); },
                  [g, planted] { return planted ? Expect::Sat : from(oracle::brute_edge_color(g).has_value()); }};
    };
  }
  if (k == "sat") {
    spec.require_keys({"n", "t", "count"});
    const int n = as_int(spec, "n", 8), t = as_int(spec, "t", 4 * n);
    return [=](std::uint64_t seed) {
      const Cnf f = oracle::random_3cnf(n, t, seed);
      return Case{[f](const Options& o) { return run_sat(f, o, true); },
                  [f] { return from(oracle::brute_sat(f).has_value()); }};
    };
  }
  throw std::invalid_argument("unknown batch kind \"" + k +
                              "\" (expected csp, planted-csp, color, planted-color, edge-color, cubic, "
                              "planted-cubic or sat)");
}

std::vector<Item> run_batch(const BatchSpec& spec, const Options& opt, bool with_reference) {
  const auto make = generator(spec);
  const int count = as_int(spec, "count", with_reference ? 100 : 10);
  if (count < 0) throw std::invalid_argument("batch spec count must be non-negative");
  std::vector<Item> items(count);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        Item& item = items[i];
        item.seed = opt.seed + static_cast<std::uint64_t>(i);
        Options local = opt;
        local.seed = item.seed;
        const Case c = make(item.seed);
        const auto start = std::chrono::steady_clock::now();
        item.outcome = c.solve(local);
        item.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (with_reference) item.expect = c.reference();
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int jobs = std::max(1, std::min(opt.jobs, count));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return items;
}

const char* expect_name(Expect e) { return e == Expect::Sat ? "sat" : e == Expect::Unsat ? "unsat" : "unknown"; }

// Empty when the outcome is consistent with the reference.
std::string disagreement(const Item& item) {
  const Outcome& o = item.outcome;
  if (o.verified && !*o.verified) return "solution failed the independent check";
  if (o.status == SolveStatus::Sat && item.expect == Expect::Unsat) return "solver found a solution the oracle says cannot exist";
  if (o.status == SolveStatus::Unsat && item.expect == Expect::Sat) return "solver reported unsat on a satisfiable instance";
  return "";
}

}  // namespace

int cmd_fuzz(const std::string& text, const Options& opt, std::ostream& out, std::ostream&) {
  const BatchSpec spec = BatchSpec::parse(text);
  const auto items = run_batch(spec, opt, true);
  int failures = 0, missed = 0, limits = 0, sat = 0, unsat = 0;
  Json rows = Json::array();
  for (const Item& item : items) {
    const std::string why = disagreement(item);
    if (!why.empty()) {
      ++failures;
      rows.push_back({{"seed", item.seed},
                      {"result", result_name(item.outcome.status)},
                      {"oracle", expect_name(item.expect)},
                      {"reason", why}});
    }
    if (item.outcome.status == SolveStatus::NotFound) ++missed;
    if (item.outcome.status == SolveStatus::ResourceExhausted) ++limits;
    if (item.expect == Expect::Sat) ++sat;
    if (item.expect == Expect::Unsat) ++unsat;
  }
  if (opt.json) {
    out << Json{{"tool", "tricolor"},     {"version", kToolVersion}, {"command", "fuzz"},
                {"spec", text},           {"mode", opt.mode},        {"seed", opt.seed},
                {"instances", items.size()}, {"oracle_sat", sat},    {"oracle_unsat", unsat},
                {"not_found", missed},    {"limits", limits},        {"failures", failures},
                {"failed", rows}}
               .dump()
        << "\n";
  } else {
    out << "fuzz " << text << ": " << items.size() << " instances (oracle: " << sat << " sat, " << unsat
        << " unsat), " << failures << " failures, " << missed << " not found, " << limits << " limits\n";
    for (const auto& row : rows) {
      out << "  seed " << row["seed"].get<std::uint64_t>() << ": " << row["reason"].get<std::string>() << "\n";
    }
  }
  return failures ? kNotSolved : kSolved;
}

int cmd_bench(const std::string& text, const Options& opt, std::ostream& out, std::ostream&) {
  const BatchSpec spec = BatchSpec::parse(text);
  const auto items = run_batch(spec, opt, false);
  std::vector<double> times;
  Json rows = Json::array();
  int solved = 0;
  for (const Item& item : items) {
    times.push_back(item.ms);
    if (item.outcome.status == SolveStatus::Sat) ++solved;
    rows.push_back({{"seed", item.seed},
                    {"result", result_name(item.outcome.status)},
                    {"stats", item.outcome.stats},
                    {"wall_ms", item.ms}});
  }
  std::sort(times.begin(), times.end());
  double total = 0;
  for (double t : times) total += t;
  const double mean = times.empty() ? 0 : total / times.size();
  const double median = times.empty() ? 0 : times[times.size() / 2];
  const double worst = times.empty() ? 0 : times.back();
  if (opt.json) {
    out << Json{{"tool", "tricolor"}, {"version", kToolVersion}, {"command", "bench"}, {"spec", text},
                {"mode", opt.mode},   {"seed", opt.seed},        {"instances", items.size()},
                {"sat", solved},      {"mean_ms", mean},         {"median_ms", median},
                {"max_ms", worst},    {"runs", rows}}
               .dump()
        << "\n";
  } else {
    out << std::fixed << std::setprecision(3) << "bench " << text << ": " << items.size() << " instances, " << solved
        << " sat, mean " << mean << " ms, median " << median << " ms, max " << worst << " ms\n";
  }
  return kSolved;
}

}  // namespace tricolor::cli
