#pragma once

// (d,2) constraint satisfaction instances, the size measure, and the
// polynomial-time simplification rules that keep an instance "reduced".
//
// A variable owns up to kMaxColors color slots. Slots are never renumbered:
// removing a color clears its bit in the availability mask, so a PairRef
// stays meaningful for the lifetime of every copy of the instance.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace tricolor {

/// Size-measure constant: a four-color variable counts 2 - kEpsilon.
inline constexpr double kEpsilon = 0.095543;

// Range conditions the branching lemmas place on epsilon.
static_assert(kEpsilon <= 0.545 && kEpsilon <= 0.4 && kEpsilon <= 0.3576 && kEpsilon <= 0.287);

inline constexpr int kMaxColors = 8;

struct PairRef {
  int var = -1;
  int color = -1;

  auto operator<=>(const PairRef&) const = default;
};

struct Constraint {
  PairRef a;
  PairRef b;

  Constraint() = default;
  Constraint(PairRef x, PairRef y) : a(x < y ? x : y), b(x < y ? y : x) {}

  auto operator<=>(const Constraint&) const = default;
};

class Instance {
 public:
  Instance() = default;

  /// Appends a variable whose color slots carry the given palette labels.
  int add_variable(std::vector<int> labels);
  /// Adds the constraint forbidding both pairs at once. Returns false for a duplicate.
  bool add_constraint(PairRef a, PairRef b);

  void remove_color(int var, int color);
  void remove_variable(int var);

  int num_variables() const { return static_cast<int>(vars_.size()); }
  int alive_count() const;
  bool alive(int var) const { return vars_[var].alive; }
  bool has_color(int var, int color) const;
  bool valid(PairRef p) const;
  int color_count(int var) const;
  int slot_count(int var) const { return static_cast<int>(vars_[var].labels.size()); }
  std::vector<int> colors(int var) const;
  int label(PairRef p) const { return vars_[p.var].labels[p.color]; }
  const std::vector<int>& labels(int var) const { return vars_[var].labels; }

  std::span<const PairRef> neighbors(PairRef p) const { return vars_[p.var].adj[p.color]; }
  int degree(PairRef p) const { return static_cast<int>(vars_[p.var].adj[p.color].size()); }
  bool constrained(PairRef a, PairRef b) const;

  std::vector<Constraint> constraints() const;
  std::size_t constraint_count() const { return constraint_count_; }

  /// Set once some live variable has lost every color.
  bool contradiction() const { return contradiction_; }

  bool operator==(const Instance&) const = default;

 private:
  struct Variable {
    std::vector<int> labels;
    std::vector<std::vector<PairRef>> adj;
    std::uint8_t mask = 0;
    bool alive = true;
    bool operator==(const Variable&) const = default;
  };

  friend struct InstanceTestAccess;

  void unlink(PairRef p);

  std::vector<Variable> vars_;
  std::size_t constraint_count_ = 0;
  bool contradiction_ = false;
};

/// Color slot per variable id; -1 where unassigned.
using Assignment = std::vector<int>;

namespace lift_step {
struct Assigned {
  int var;
  int color;
};
struct TwoColorEliminated {
  int var;
  int color_r;
  int color_g;
  std::vector<PairRef> conflict_r;
  std::vector<PairRef> conflict_g;
};
struct IsolatedMerge {
  int merged;
  PairRef v;  // the constrained pair on the first source variable
  PairRef w;  // the constrained pair on the second source variable
  std::vector<PairRef> origins;  // merged color slot -> source pair
};
struct DeadColorRemoved {
  int var;
  int color;
};
struct DominatedColorRemoved {
  int var;
  int color;
};
struct FreePairUsed {
  PairRef a;
  PairRef b;
};
}  // namespace lift_step

using LiftStep = std::variant<lift_step::Assigned, lift_step::TwoColorEliminated,
                              lift_step::IsolatedMerge, lift_step::DeadColorRemoved,
                              lift_step::DominatedColorRemoved, lift_step::FreePairUsed>;
using LiftTrace = std::vector<LiftStep>;

std::vector<std::string> validate(const Instance& inst, int max_colors = 4);

/// Contribution of a variable with `colors` available colors to the size measure.
double size_of(int colors);
/// Size measure n3 + (2 - eps) n4. Throws std::logic_error if a live variable has <3 or >4 colors.
double measure(const Instance& inst);
/// Same sum, but variables with fewer than three colors simply count zero.
double relaxed_measure(const Instance& inst);

/// True iff `asg` violates no constraint. Throws std::invalid_argument on a partial assignment.
bool check(const Instance& inst, const Assignment& asg);

std::pair<Instance, LiftStep> assign(Instance inst, PairRef p);
std::pair<Instance, LiftStep> eliminate_two_color(Instance inst, int var);

// Individual simplification rules. Each returns nullopt when its pattern is absent.
std::optional<std::pair<Instance, LiftTrace>> apply_free_pair(const Instance& inst);
std::optional<std::pair<Instance, LiftTrace>> apply_dominance(const Instance& inst);
std::optional<std::pair<Instance, LiftTrace>> apply_unconstrained(const Instance& inst);
std::optional<std::pair<Instance, LiftTrace>> apply_dead_color(const Instance& inst);

struct SimplifyResult {
  Instance instance;
  LiftTrace trace;
  bool unsat = false;
};

/// Applies every simplification rule to a fixpoint.
SimplifyResult simplify(Instance inst);

/// Replays `trace` most-recent-first over an assignment of the reduced instance.
Assignment lift(Assignment asg, const LiftTrace& trace);

// In-place forms used by the solver; same semantics as the value-returning ones.
namespace detail {
LiftStep assign_in_place(Instance& inst, PairRef p);
LiftStep eliminate_two_color_in_place(Instance& inst, int var);
bool simplify_in_place(Instance& inst, LiftTrace& trace);
void apply_step(Assignment& asg, const LiftStep& step);
}  // namespace detail

}  // namespace tricolor
