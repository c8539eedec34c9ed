#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "slddb/conditions.hpp"
#include "slddb/program.hpp"

namespace slddb {

// Compile-time construction of SLDDB-systems: sets of SLD goals over
// parameters C1..Ck stand for states, EDB facts drive transitions between
// them, and the result is emitted as bottom-up rules with one predicate per
// parameterized state.

enum class Granularity { SingleGoal, Maximal };

std::string to_string(Granularity g);

class LeftRecursionDiverged : public Error {
 public:
  LeftRecursionDiverged(std::size_t bound, std::vector<Goal> prefix);
  // The first `bound` goals of the closure in generation order.
  const std::vector<Goal>& prefix() const { return prefix_; }

 private:
  std::vector<Goal> prefix_;
};

class StateSpaceExceeded : public Error {
 public:
  explicit StateSpaceExceeded(std::size_t max_states);
  StateSpaceExceeded(std::size_t max_states, const std::string& what);
  std::size_t max_states() const { return max_states_; }

 private:
  std::size_t max_states_;
};

// Maximal granularity was requested for a program outside the class for
// which closures are finite (left recursion or IDB facts).
class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

struct State {
  std::vector<Goal> goals;  // normalized, in canonical order
  std::uint32_t param_count = 0;
  std::uint32_t id = 0;

  friend bool operator==(const State& a, const State& b) {
    return a.goals == b.goals && a.param_count == b.param_count;
  }
};

std::string to_string(const State& s);

// Where the value of a parameter of the target state comes from.
struct ParamSource {
  enum class Kind { StateParam, FactArg, Constant };
  Kind kind = Kind::StateParam;
  std::uint32_t index = 0;  // 1-based state parameter, or 0-based fact argument
  Term constant{};

  friend bool operator==(const ParamSource&, const ParamSource&) = default;
};

struct Transition {
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  // Fact pattern over parameters C_{k+1}..C_{k+a}, k = from-state parameter
  // count; nullopt for an epsilon transition.
  std::optional<Literal> fact;
  ConditionConjunction guard;
  std::vector<ParamSource> param_passing;  // entry j-1 feeds parameter C_j of `to`
};

using AnswerTemplate = std::vector<Term>;  // parameters and constants

struct SLDDBSystem {
  Granularity granularity = Granularity::Maximal;
  std::vector<State> states;  // indexed by State::id
  std::uint32_t initial = 0;
  std::vector<Transition> transitions;
  // States containing lone answer goals, with one template per such goal.
  std::map<std::uint32_t, std::vector<AnswerTemplate>> accepting;
  std::set<Predicate> edb;
  std::uint32_t answer_arity = 0;
  // Predicate names of the program and query; state predicates avoid them.
  std::set<std::string> used_names;
};

struct GuardedGoals {
  ConditionConjunction guard;
  std::vector<Goal> goals;
};

// Saturation of a goal set under SLD steps with program rules, each result
// normalized. EDB and answer literals are not resolved. A unification that
// needs a condition on parameters not decided by `guard` splits the
// computation, so the result is a list of cases with disjoint guards; for
// parameter-free goals there is exactly one case.
struct ClosureResult {
  std::vector<GuardedGoals> cases;
  bool diverged = false;
  std::vector<Goal> prefix;  // set when diverged

  // Goals of the single case; throws if there is not exactly one.
  const std::vector<Goal>& goals() const;
};

ClosureResult closure(const Program& program, const std::vector<Goal>& goals, std::size_t bound,
                      const ConditionConjunction& guard = {});

// Unique representative up to goal order and parameter renaming.
State canonicalize(const State& state);

struct CanonicalState {
  State state;
  // origin[j-1] is the parameter (or constant) that became C_j.
  std::vector<Term> origin;
};

CanonicalState canonicalize_goals(std::vector<Goal> goals);

State initial_state(const Program& program, const Query& query, Granularity granularity, std::size_t closure_bound);

struct Successor {
  ConditionConjunction guard;
  State next;
  std::vector<ParamSource> param_passing;
};

// Fact transitions for one EDB predicate: a fresh parameterized fact
// p(C_{k+1}, ..., C_{k+a}) is resolved against every goal starting with p,
// one result per consistent case of the parameter conditions that leaves at
// least one resolvent. In maximal granularity the resolvents are closed.
// Trying more than `max_cases` guards throws StateSpaceExceeded.
std::vector<Successor> successor_cases(const Program& program, const State& state, Predicate edb_pred,
                                       Granularity granularity, std::size_t closure_bound,
                                       std::size_t max_cases = 4096);

// Single-goal granularity: one SLD step with a program rule.
std::vector<Successor> epsilon_successors(const Program& program, const State& state);

struct ExploreLimits {
  std::size_t max_states = 10'000;
  std::size_t closure_bound = 10'000;
  std::size_t max_cases = 4096;  // guards tried per successor computation
  // Attempt maximal granularity even when closures may be infinite.
  bool force = false;
};

SLDDBSystem explore(const Program& program, const Query& query, Granularity granularity,
                    const ExploreLimits& limits = {});

struct CompiledRules {
  // State predicates, transition rules, the seed fact and answer rules;
  // `program.edb` carries the source program's EDB declarations.
  Program program;
  std::vector<Predicate> state_predicates;  // indexed by state id
  Predicate answer;
};

CompiledRules emit_rules(const SLDDBSystem& system);

// GraphViz rendering; deterministic.
std::string export_dot(const SLDDBSystem& system);

}  // namespace slddb
