#include "tricolor/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "tricolor/csp.hpp"

namespace tricolor::analysis {

double characteristic(const BranchVector& v, double x) {
  double sum = 0;
  for (double r : v) sum += std::pow(x, -r);
  return 1.0 - sum;
}

double work_factor(const BranchVector& v) {
  if (v.empty()) throw std::invalid_argument("work_factor: empty branch vector");
  for (double r : v) {
    if (!(r > 0)) throw std::invalid_argument("work_factor: branch entries must be positive");
  }
  const double min_r = *std::min_element(v.begin(), v.end());
  double lo = 1.0;
  double hi = std::pow(static_cast<double>(v.size()), 1.0 / min_r);
  // f(lo) <= 0 <= f(hi); f is increasing on (0, inf).
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (characteristic(v, mid) < 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double big_lambda() { return work_factor({4, 4, 5, 5}); }

EpsilonOptimum optimize_epsilon() {
  auto gap = [](double e) { return work_factor({3 - e, 4 - e, 4 - e}) - work_factor({1 + e, 4}); };
  double lo = 0.0;
  double hi = 0.2;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (gap(mid) < 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double e = 0.5 * (lo + hi);
  EpsilonOptimum out{e, work_factor({1 + e, 4}), std::abs(gap(e))};
  if (std::abs(out.lambda - big_lambda()) > 1e-6) {
    throw std::logic_error("optimize_epsilon: balanced factor differs from lambda(4,4,5,5)");
  }
  return out;
}

std::vector<LemmaRow> lemma_table(double e) {
  std::vector<LemmaRow> rows;
  auto rule = [&](const std::string& lemma, const BranchVector& claim,
                  std::vector<std::pair<std::string, BranchVector>> cases) {
    const double claimed = work_factor(claim);
    for (auto& [name, vec] : cases) {
      const double f = work_factor(vec);
      rows.push_back({lemma, name, vec, f, claimed, f > claimed + 1e-9});
    }
  };
  auto claim_max = [](std::initializer_list<BranchVector> vs) {
    BranchVector best;
    double f = 0;
    for (const auto& v : vs) {
      if (work_factor(v) > f) {
        f = work_factor(v);
        best = v;
      }
    }
    return best;
  };

  rule("isolated", {2 - e, 3 - e},
       {{"both three-color (merge)", {e}},
        {"one four-color", {2 - e, 3 - e}},
        {"both four-color", {3 - 2 * e, 3 - 2 * e}}});
  rule("dangling", {2 - e, 3 - e},
       {{"both three-color", {2, 3 - e}},
        {"v four-color", {3 - e, 3 - 2 * e}},
        {"w four-color", {2 - e, 4 - 2 * e}},
        {"both four-color", {3 - 2 * e, 4 - 3 * e}}});
  rule("multiple-adjacency", {2 - e, 3 - 2 * e},
       {{"implication target not a source, w three-color", {2 - e, 3 - 2 * e}},
        {"implication target not a source, w four-color", {2 - 2 * e, 4 - 3 * e}},
        {"implication cycle", {2, 3 - e}},
        {"no implication, four-color w", {2 - e, 3 - 2 * e}}});
  rule("high-degree", {1 - e, 5 - 4 * e},
       {{"four-color, degree >= 3", {1 - e, 5 - 4 * e}},
        {"three-color, degree >= 4", {1, 5 - 4 * e}}});
  rule("triple with four-color neighbor", {3 - e, 4 - e, 4 - e},
       {{"no triangle", {4 - e, 4 - 2 * e, 4 - 3 * e}},
        {"triangle, x three-color", {3 - e, 4 - e, 4 - e}},
        {"triangle, x four-color", {4 - 2 * e, 4 - 2 * e, 4 - 2 * e}}});
  rule("triple with two-constraint neighbor", claim_max({{1 + e, 4}, {3, 4 - e, 4}}),
       {{"no triangle", {3, 4 - e, 4}},
        {"triangle, x triple", {3, 4, 4}},
        {"triangle, x double", {1 + e, 4}}});
  rule("small three-component", {4, 4, 4}, {{"k >= 8", {4, 4, 4}}});
  rule("large three-component", {4, 4, 5, 5},
       {{"one witness neighbor", {4, 4, 5, 5}},
        {"two witness neighbors", {1, 6, 7}},
        {"three witness neighbors", {1, 5}}});
  rule("large two-component", {3, 3, 5},
       {{"five distinct variables", {3, 3, 5}},
        {"four-color variables", {3 - e, 4 - e, 5 - 2 * e}},
        {"repeated variable", {3 - e, 3 - e}},
        {"length-four cycle", {4, 4}}});
  // Vertex-coloring rules, measured in vertices.
  rule("degree-3 cycle", {5, 6, 7, 8},
       {{"triangle", {3, 4}}, {"odd cycle, k >= 7", {4, 7, 8}}, {"five-cycle", {5, 6, 7, 8}}});
  rule("degree-3 tree", {2, 5, 6}, {{"centroid split", {2, 5, 6}}});
  return rows;
}

std::vector<LemmaRow> lemma_table() { return lemma_table(kEpsilon); }

LemmaSummary summarize(const std::vector<LemmaRow>& table) {
  LemmaSummary s{0, 0, {}};
  for (const auto& row : table) {
    s.max_claimed = std::max(s.max_claimed, row.claimed);
    s.max_case = std::max(s.max_case, row.factor);
    if (row.exceeds_claim) s.exceeding.push_back(row.lemma + ": " + row.branch);
  }
  return s;
}

double breakdown_base(const BoundBreakdown& b, double lambda) {
  const double n = b.p + b.q + b.r + b.s + b.t;
  const double log_cost = b.p * std::log(3.0) + b.q * std::log(2.0) + b.s * std::log(lambda) +
                          b.t / 7.0 * std::log(3 * lambda * lambda * lambda);
  return std::exp(log_cost / n);
}

bool feasible(const BoundBreakdown& b, double tol) {
  return b.p >= -tol && b.q >= -tol && b.r >= -tol && b.s >= -tol && b.t >= -tol &&
         std::abs(b.p + b.q + b.r + b.s + b.t - 1) <= tol && 4 * b.p + 2 * b.q <= b.r + tol &&
         b.s <= 2 * b.r + tol && b.s + b.t <= 20 * b.r / 3 + tol;
}

BoundBreakdown worst_breakdown(double lambda) {
  // Rows a.x <= 0 over x = (p,q,r,s,t); the polytope also has p+q+r+s+t = 1.
  const std::array<std::array<double, 5>, 8> rows{{
      {-1, 0, 0, 0, 0},
      {0, -1, 0, 0, 0},
      {0, 0, -1, 0, 0},
      {0, 0, 0, -1, 0},
      {0, 0, 0, 0, -1},
      {4, 2, -1, 0, 0},
      {0, 0, -2, 1, 0},
      {0, 0, -20.0 / 3, 1, 1},
  }};
  BoundBreakdown best;
  double best_base = -1;
  for (int mask = 0; mask < (1 << 8); ++mask) {
    if (__builtin_popcount(mask) != 4) continue;
    std::array<std::array<double, 6>, 5> m{};
    int k = 0;
    for (int i = 0; i < 8; ++i) {
      if (mask >> i & 1) {
        for (int j = 0; j < 5; ++j) m[k][j] = rows[i][j];
        m[k][5] = 0;
        ++k;
      }
    }
    m[4] = {1, 1, 1, 1, 1, 1};
    bool singular = false;
    for (int c = 0; c < 5 && !singular; ++c) {
      int piv = c;
      for (int r = c + 1; r < 5; ++r) {
        if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
      }
      if (std::abs(m[piv][c]) < 1e-12) {
        singular = true;
        break;
      }
      std::swap(m[c], m[piv]);
      for (int r = 0; r < 5; ++r) {
        if (r == c) continue;
        const double f = m[r][c] / m[c][c];
        for (int j = c; j < 6; ++j) m[r][j] -= f * m[c][j];
      }
    }
    if (singular) continue;
    const BoundBreakdown b{m[0][5] / m[0][0], m[1][5] / m[1][1], m[2][5] / m[2][2], m[3][5] / m[3][3],
                           m[4][5] / m[4][4]};
    if (!feasible(b)) continue;
    const double base = breakdown_base(b, lambda);
    if (base > best_base + 1e-12) {
      best_base = base;
      best = b;
    }
  }
  return best;
}

double coloring_coefficient(int d) {
  if (d < 3) throw std::invalid_argument("coloring_coefficient: d must be at least 3");
  const EpsilonOptimum opt = optimize_epsilon();
  if (d == 3) return opt.lambda;
  return d / 4.0 * std::pow(opt.lambda, 2 - opt.epsilon);
}

std::vector<NamedConstant> bound_report() {
  const EpsilonOptimum opt = optimize_epsilon();
  const double L = opt.lambda;
  const double coloring = std::pow(2.0, 3.0 / 49) * std::pow(3.0, 4.0 / 49) * std::pow(L, 24.0 / 49);
  std::vector<NamedConstant> out{
      {"epsilon", "balanced epsilon", opt.epsilon},
      {"csp", "lambda(4,4,5,5)", L},
      {"two-fork", "(3L^3)^(1/7)", std::pow(3 * L * L * L, 1.0 / 7)},
      {"two-fork-fallback", "(6+3L)^(1/8)", std::pow(6 + 3 * L, 1.0 / 8)},
      {"forest-first-cut", "(3L^6)^(1/10)", std::pow(3 * std::pow(L, 6), 1.0 / 10)},
      {"coloring", "2^(3/49) 3^(4/49) L^(24/49)", coloring},
      {"coloring-root-heavy", "3^(11/95) L^(48/95)", std::pow(3.0, 11.0 / 95) * std::pow(L, 48.0 / 95)},
      {"coloring-lp", "max over breakdown polytope", breakdown_base(worst_breakdown(L), L)},
      {"edge-line-graph", "coloring^(3/2)", std::pow(coloring, 1.5)},
      {"edge-m3", "coloring^(6/5)", std::pow(coloring, 1.2)},
      {"edge-m4-factor", "2^(1/3) coloring^(-4/5)", std::pow(2.0, 1.0 / 3) * std::pow(coloring, -0.8)},
      {"csp-d4", "L^(2-epsilon)", std::pow(L, 2 - opt.epsilon)},
  };
  for (int d = 3; d <= 6; ++d) {
    out.push_back({"csp-d" + std::to_string(d) + "-coefficient", d == 3 ? "L" : "(d/4) L^(2-epsilon)",
                   coloring_coefficient(d)});
  }
  return out;
}

}  // namespace tricolor::analysis
