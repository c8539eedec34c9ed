#include "slddb/compiler.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <unordered_map>
#include <unordered_set>
#include <variant>

#include "slddb/analysis.hpp"
#include "slddb/sld.hpp"
#include "slddb/unify.hpp"

namespace slddb {

std::string to_string(Granularity g) { return g == Granularity::Maximal ? "max" : "single"; }

LeftRecursionDiverged::LeftRecursionDiverged(std::size_t bound, std::vector<Goal> prefix)
    : Error("closure exceeded " + std::to_string(bound) + " goals (left recursion?)"), prefix_(std::move(prefix)) {}

StateSpaceExceeded::StateSpaceExceeded(std::size_t max_states)
    : Error("state space exceeded " + std::to_string(max_states) + " states"), max_states_(max_states) {}

StateSpaceExceeded::StateSpaceExceeded(std::size_t max_states, const std::string& what)
    : Error(what), max_states_(max_states) {}

std::string to_string(const State& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.goals.size(); ++i) {
    if (i) out += "; ";
    out += to_string(s.goals[i]);
  }
  return out + "}";
}

const std::vector<Goal>& ClosureResult::goals() const {
  if (diverged) throw LeftRecursionDiverged(prefix.size(), prefix);
  if (cases.size() != 1) throw Error("closure depends on parameter values (" + std::to_string(cases.size()) + " cases)");
  return cases.front().goals;
}

namespace {

// ---------------------------------------------------------------------------
// Case splitting on parameter conditions

struct Undecided {
  Term a;
  Term b;
};

struct Diverged {
  std::vector<Goal> prefix;
};

// Goal sets that become separate successors under the same guard.
struct Parts {
  std::vector<std::vector<Goal>> parts;
};

using Attempt = std::variant<std::vector<Goal>, Parts, Undecided, Diverged>;

// Whether the conditions of a unifier hold under `guard`. On Unknown, the
// first undecided equality is stored in `pending`.
Truth decide(const ConditionConjunction& guard, const ParamUnifier& u, Undecided& pending) {
  for (const auto& [a, b] : u.equalities) {
    switch (guard.equal(a, b)) {
      case Truth::True: break;
      case Truth::False: return Truth::False;
      case Truth::Unknown:
        pending = {a, b};
        return Truth::Unknown;
    }
  }
  return Truth::True;
}

// Re-runs `attempt` under refined guards until every branch is decided.
// Equal-branches are explored before unequal ones.
template <typename F>
std::vector<GuardedGoals> split_cases(const ConditionConjunction& base, F&& attempt, std::optional<Diverged>& diverged,
                                     std::size_t max_cases = std::numeric_limits<std::size_t>::max()) {
  std::vector<GuardedGoals> out;
  std::vector<ConditionConjunction> pending{base};
  for (std::size_t tried = 0; !pending.empty(); ++tried) {
    if (tried >= max_cases)
      throw StateSpaceExceeded(0, "successor computation tried more than " + std::to_string(max_cases) + " parameter cases");
    auto guard = std::move(pending.back());
    pending.pop_back();
    auto result = attempt(guard);
    if (auto* goals = std::get_if<std::vector<Goal>>(&result)) {
      out.push_back({std::move(guard), std::move(*goals)});
    } else if (auto* parts = std::get_if<Parts>(&result)) {
      for (auto& p : parts->parts) out.push_back({guard, std::move(p)});
    } else if (auto* u = std::get_if<Undecided>(&result)) {
      ConditionConjunction eq = guard;
      ConditionConjunction ne = guard;
      if (ne.add_unequal(u->a, u->b)) pending.push_back(std::move(ne));
      if (eq.add_equal(u->a, u->b)) pending.push_back(std::move(eq));
    } else {
      diverged = std::move(std::get<Diverged>(result));
      return {};
    }
  }
  return out;
}

Literal with_representatives(const ConditionConjunction& guard, const Literal& lit) {
  Literal out{lit.pred, lit.args};
  for (auto& t : out.args) t = guard.representative(t);
  return out;
}

Goal with_representatives(const ConditionConjunction& guard, const Goal& goal) {
  if (guard.empty()) return goal;
  Goal out;
  out.literals.reserve(goal.size());
  for (const auto& l : goal.literals) out.literals.push_back(with_representatives(guard, l));
  return out;
}

// Resolvent of `goal` whose first literal was unified by `u`, the first
// literal replaced by `body`.
Goal resolvent(const ParamUnifier& u, const std::vector<Literal>& body, const Goal& goal) {
  Goal out;
  out.literals.reserve(body.size() + goal.size() - 1);
  for (const auto& b : body) out.literals.push_back(u.subst.apply(b));
  for (std::size_t i = 1; i < goal.size(); ++i) out.literals.push_back(u.subst.apply(goal.literals[i]));
  return out;
}

bool expandable(const Program& program, const Goal& g) {
  return !g.empty() && !is_answer(g.first().pred) && !program.is_edb(g.first().pred);
}

Attempt close_under(const Program& program, const std::vector<Goal>& seeds, const ConditionConjunction& guard,
                    std::size_t bound) {
  std::unordered_set<Goal> seen;
  std::vector<Goal> order;
  auto add = [&](const Goal& g) {
    Goal n = normalize(with_representatives(guard, g));
    if (seen.insert(n).second) order.push_back(std::move(n));
  };
  for (const auto& g : seeds) add(g);

  std::uint32_t fresh = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order.size() > bound) break;
    if (!expandable(program, order[i])) continue;
    const Goal goal = order[i];
    for (auto r : program.rules_for(goal.first().pred)) {
      const Rule rule = rename_apart(program.rules[r], fresh);
      auto u = param_unify(goal.first(), rule.head);
      if (!u) continue;
      Undecided pending{};
      auto truth = decide(guard, *u, pending);
      if (truth == Truth::Unknown) return pending;
      if (truth == Truth::False) continue;
      add(resolvent(*u, rule.body, goal));
      if (order.size() > bound) break;
    }
  }
  if (order.size() > bound) {
    order.resize(bound);
    return Diverged{std::move(order)};
  }
  return order;
}

// ---------------------------------------------------------------------------
// Canonical form of parameterized states

std::string masked_key(const Goal& g) {
  std::vector<std::uint32_t> seen;
  std::string out;
  for (const auto& lit : g.literals) {
    out += lit.pred.name_text();
    out += '(';
    for (auto t : lit.args) {
      if (t.is_parameter()) {
        auto it = std::find(seen.begin(), seen.end(), t.id);
        if (it == seen.end()) {
          seen.push_back(t.id);
          it = std::prev(seen.end());
        }
        out += "#P" + std::to_string(it - seen.begin() + 1);
      } else {
        out += to_string(t);
      }
      out += ',';
    }
    out += ')';
  }
  return out;
}

struct Printed {
  std::size_t size;
  std::string text;
  friend auto operator<=>(const Printed&, const Printed&) = default;
};

constexpr std::size_t kMaxTieOrderings = 5040;

}  // namespace

CanonicalState canonicalize_goals(std::vector<Goal> goals) {
  for (auto& g : goals) g = normalize(g);
  std::sort(goals.begin(), goals.end(), [](const Goal& a, const Goal& b) {
    return Printed{a.size(), to_string(a)} < Printed{b.size(), to_string(b)};
  });
  goals.erase(std::unique(goals.begin(), goals.end()), goals.end());

  // Order goals by a key that ignores parameter names; goals with equal keys
  // may be numbered in any order, so every ordering of each tie group is
  // tried and the smallest result kept.
  std::vector<std::pair<Printed, std::size_t>> keyed;
  for (std::size_t i = 0; i < goals.size(); ++i) keyed.push_back({{goals[i].size(), masked_key(goals[i])}, i});
  std::sort(keyed.begin(), keyed.end());

  std::vector<std::pair<std::size_t, std::size_t>> groups;  // [begin, end) in keyed
  std::size_t orderings = 1;
  for (std::size_t i = 0; i < keyed.size();) {
    std::size_t j = i + 1;
    while (j < keyed.size() && keyed[j].first == keyed[i].first) ++j;
    if (j - i > 1) {
      groups.emplace_back(i, j);
      for (std::size_t k = 2; k <= j - i && orderings <= kMaxTieOrderings; ++k) orderings *= k;
    }
    i = j;
  }
  const bool exhaustive = orderings <= kMaxTieOrderings;

  std::vector<std::size_t> order;
  for (const auto& k : keyed) order.push_back(k.second);

  std::optional<std::vector<Printed>> best_key;
  CanonicalState best;
  auto evaluate = [&] {
    std::vector<Term> origin;
    auto rename = [&](Term t) {
      if (!t.is_parameter()) return t;
      auto it = std::find(origin.begin(), origin.end(), t);
      if (it == origin.end()) {
        origin.push_back(t);
        return Term::parameter(static_cast<std::uint32_t>(origin.size()));
      }
      return Term::parameter(static_cast<std::uint32_t>(it - origin.begin() + 1));
    };
    std::vector<std::pair<Printed, Goal>> renamed;
    for (auto idx : order) {
      Goal g = goals[idx];
      for (auto& l : g.literals)
        for (auto& t : l.args) t = rename(t);
      renamed.push_back({{g.size(), to_string(g)}, std::move(g)});
    }
    std::sort(renamed.begin(), renamed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Printed> key;
    for (const auto& r : renamed) key.push_back(r.first);
    if (best_key && !(key < *best_key)) return;
    best_key = std::move(key);
    best.origin = std::move(origin);
    best.state.goals.clear();
    for (auto& r : renamed) best.state.goals.push_back(std::move(r.second));
    best.state.param_count = static_cast<std::uint32_t>(best.origin.size());
  };

  if (!exhaustive) {
    evaluate();
    return best;
  }
  // Odometer over the permutations of every tie group.
  for (auto [b, e] : groups) std::sort(order.begin() + b, order.begin() + e);
  for (;;) {
    evaluate();
    std::size_t g = 0;
    for (; g < groups.size(); ++g) {
      auto [b, e] = groups[g];
      if (std::next_permutation(order.begin() + b, order.begin() + e)) break;
    }
    if (g == groups.size()) break;
  }
  return best;
}

State canonicalize(const State& state) {
  auto c = canonicalize_goals(state.goals);
  c.state.id = state.id;
  return std::move(c.state);
}

ClosureResult closure(const Program& program, const std::vector<Goal>& goals, std::size_t bound,
                      const ConditionConjunction& guard) {
  ClosureResult result;
  std::optional<Diverged> diverged;
  result.cases = split_cases(guard, [&](const ConditionConjunction& g) { return close_under(program, goals, g, bound); },
                             diverged);
  if (diverged) {
    result.cases.clear();
    result.diverged = true;
    result.prefix = std::move(diverged->prefix);
  }
  return result;
}

State initial_state(const Program& program, const Query& query, Granularity granularity, std::size_t closure_bound) {
  Goal root = normalize(extend_query(query));
  if (granularity == Granularity::SingleGoal) return canonicalize(State{{root}, 0, 0});
  auto c = closure(program, {root}, closure_bound);
  if (c.diverged) throw LeftRecursionDiverged(closure_bound, std::move(c.prefix));
  return canonicalize(State{c.goals(), 0, 0});
}

namespace {

std::set<Term> parameters_of(const std::vector<Goal>& goals) {
  std::set<Term> out;
  for (const auto& g : goals)
    for (const auto& l : g.literals)
      for (auto t : l.args)
        if (t.is_parameter()) out.insert(t);
  return out;
}

std::vector<Successor> to_successors(std::vector<GuardedGoals> cases, std::uint32_t from_params) {
  std::vector<Successor> out;
  for (auto& c : cases) {
    if (c.goals.empty()) continue;
    auto canon = canonicalize_goals(std::move(c.goals));
    Successor s{std::move(c.guard), std::move(canon.state), {}};
    for (auto origin : canon.origin) {
      if (origin.id <= from_params)
        s.param_passing.push_back({ParamSource::Kind::StateParam, origin.id, {}});
      else
        s.param_passing.push_back({ParamSource::Kind::FactArg, origin.id - from_params - 1, {}});
    }
    out.push_back(std::move(s));
  }
  return out;
}

Literal fact_pattern(Predicate pred, std::uint32_t first_param) {
  Literal f{pred, {}};
  for (std::uint32_t i = 0; i < pred.arity; ++i) f.args.push_back(Term::parameter(first_param + i));
  return f;
}

}  // namespace

std::vector<Successor> successor_cases(const Program& program, const State& state, Predicate edb_pred,
                                       Granularity granularity, std::size_t closure_bound, std::size_t max_cases) {
  const auto k = state.param_count;
  const Literal fact = fact_pattern(edb_pred, k + 1);

  auto resolve = [&](const ConditionConjunction& guard) -> Attempt {
    const Literal f = with_representatives(guard, fact);
    std::vector<Goal> resolvents;
    for (const auto& goal : state.goals) {
      if (goal.first().pred != edb_pred) continue;
      const Goal g = with_representatives(guard, goal);
      auto u = param_unify(g.first(), f);
      if (!u) continue;
      Undecided pending{};
      auto truth = decide(guard, *u, pending);
      if (truth == Truth::Unknown) return pending;
      if (truth == Truth::False) continue;
      Goal r = normalize(with_representatives(guard, resolvent(*u, {}, g)));
      if (std::find(resolvents.begin(), resolvents.end(), r) == resolvents.end()) resolvents.push_back(std::move(r));
    }
    return resolvents;
  };
  // A merged state with more parameters than any one resolvent brings along
  // would let parameters pile up from step to step. Such a case becomes one
  // successor per resolvent instead; the answers are the same.
  auto attempt = [&](const ConditionConjunction& guard) -> Attempt {
    auto r = resolve(guard);
    auto* resolvents = std::get_if<std::vector<Goal>>(&r);
    if (!resolvents || resolvents->empty() || granularity == Granularity::SingleGoal) return r;
    std::size_t widest = 0;
    for (const auto& g : *resolvents) widest = std::max(widest, parameters_of({g}).size());
    if (resolvents->size() < 2 || parameters_of(*resolvents).size() <= widest)
      return close_under(program, *resolvents, guard, closure_bound);
    Parts out;
    for (const auto& g : *resolvents) {
      auto c = close_under(program, {g}, guard, closure_bound);
      if (!std::holds_alternative<std::vector<Goal>>(c)) return c;
      out.parts.push_back(std::move(std::get<std::vector<Goal>>(c)));
    }
    return out;
  };

  std::optional<Diverged> diverged;
  auto cases = split_cases({}, attempt, diverged, max_cases);
  if (diverged) throw LeftRecursionDiverged(closure_bound, std::move(diverged->prefix));
  return to_successors(std::move(cases), k);
}

std::vector<Successor> epsilon_successors(const Program& program, const State& state) {
  std::vector<Successor> out;
  if (state.goals.size() != 1) throw Error("epsilon transitions are defined for single-goal states only");
  const Goal& goal = state.goals.front();
  if (!expandable(program, goal)) return out;

  for (auto r : program.rules_for(goal.first().pred)) {
    std::uint32_t fresh = 1;
    const Rule rule = rename_apart(program.rules[r], fresh);
    auto attempt = [&](const ConditionConjunction& guard) -> Attempt {
      const Goal g = with_representatives(guard, goal);
      auto u = param_unify(g.first(), rule.head);
      if (!u) return std::vector<Goal>{};
      Undecided pending{};
      auto truth = decide(guard, *u, pending);
      if (truth == Truth::Unknown) return pending;
      if (truth == Truth::False) return std::vector<Goal>{};
      return std::vector<Goal>{normalize(with_representatives(guard, resolvent(*u, rule.body, g)))};
    };
    std::optional<Diverged> diverged;
    auto succ = to_successors(split_cases({}, attempt, diverged), state.param_count);
    for (auto& s : succ) out.push_back(std::move(s));
  }
  return out;
}

namespace {

std::string state_key(const State& s) {
  std::string key = std::to_string(s.param_count);
  for (const auto& g : s.goals) {
    key += '\n';
    key += to_string(g);
  }
  return key;
}

std::vector<AnswerTemplate> answer_templates(const State& s) {
  std::vector<AnswerTemplate> out;
  for (const auto& g : s.goals) {
    if (g.size() != 1 || !is_answer(g.first().pred)) continue;
    const auto& args = g.first().args;
    if (std::all_of(args.begin(), args.end(), [](Term t) { return t.is_constant() || t.is_parameter(); }))
      out.push_back(args);
  }
  return out;
}

}  // namespace

SLDDBSystem explore(const Program& program, const Query& query, Granularity granularity, const ExploreLimits& limits) {
  if (granularity == Granularity::Maximal && !limits.force) {
    auto report = classify_recursion(program);
    if (report.summary == RecursionClass::LeftRecursive)
      throw PreconditionViolated("program is left-recursive; closures of maximal states may be infinite");
    if (report.has_idb_facts)
      throw PreconditionViolated("program contains IDB facts; closures of maximal states may be infinite");
  }

  SLDDBSystem sys;
  sys.granularity = granularity;
  sys.edb = program.edb;
  sys.answer_arity = static_cast<std::uint32_t>(query.answer_vars.size());
  for (auto p : program.edb) sys.used_names.emplace(p.name_text());
  for (const auto& r : program.rules) {
    sys.used_names.emplace(r.head.pred.name_text());
    for (const auto& b : r.body) sys.used_names.emplace(b.pred.name_text());
  }
  for (const auto& l : query.literals) sys.used_names.emplace(l.pred.name_text());

  std::unordered_map<std::string, std::uint32_t> ids;
  auto intern = [&](State s) {
    auto key = state_key(s);
    if (auto it = ids.find(key); it != ids.end()) return it->second;
    if (sys.states.size() >= limits.max_states) throw StateSpaceExceeded(limits.max_states);
    s.id = static_cast<std::uint32_t>(sys.states.size());
    ids.emplace(std::move(key), s.id);
    if (auto t = answer_templates(s); !t.empty()) sys.accepting[s.id] = std::move(t);
    sys.states.push_back(std::move(s));
    return sys.states.back().id;
  };

  sys.initial = intern(initial_state(program, query, granularity, limits.closure_bound));

  for (std::uint32_t id = 0; id < sys.states.size(); ++id) {
    const State state = sys.states[id];
    if (granularity == Granularity::SingleGoal) {
      for (auto& s : epsilon_successors(program, state)) {
        auto to = intern(std::move(s.next));
        sys.transitions.push_back({id, to, std::nullopt, std::move(s.guard), std::move(s.param_passing)});
      }
    }
    std::set<Predicate> firsts;
    for (const auto& g : state.goals)
      if (!g.empty() && program.is_edb(g.first().pred)) firsts.insert(g.first().pred);
    for (auto pred : firsts) {
      for (auto& s : successor_cases(program, state, pred, granularity, limits.closure_bound, limits.max_cases)) {
        auto to = intern(std::move(s.next));
        sys.transitions.push_back(
            {id, to, fact_pattern(pred, state.param_count + 1), std::move(s.guard), std::move(s.param_passing)});
      }
    }
  }
  return sys;
}

// ---------------------------------------------------------------------------
// Rule emission

namespace {

std::string state_prefix(const std::set<std::string>& used) {
  std::string prefix = "s";
  auto clashes = [&](const std::string& p) {
    for (const auto& name : used) {
      if (name.size() <= p.size() || name.compare(0, p.size(), p) != 0) continue;
      if (std::all_of(name.begin() + static_cast<std::ptrdiff_t>(p.size()), name.end(),
                      [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        return true;
    }
    return false;
  };
  while (clashes(prefix)) prefix += '_';
  return prefix;
}

// Variables for a transition rule: X<i> for source state parameters, Y<i>
// for fact arguments; guard equalities are applied by substitution.
struct RuleVars {
  const ConditionConjunction& guard;
  std::uint32_t from_params;

  Term term(Term t) const {
    Term rep = guard.representative(t);
    if (!rep.is_parameter()) return rep;
    if (rep.id <= from_params) return Term::variable("X" + std::to_string(rep.id));
    return Term::variable("Y" + std::to_string(rep.id - from_params));
  }
  Term param(std::uint32_t index) const { return term(Term::parameter(index)); }
};

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

CompiledRules emit_rules(const SLDDBSystem& system) {
  CompiledRules out;
  out.program.edb = system.edb;
  out.answer = answer_predicate(system.answer_arity);
  const auto prefix = state_prefix(system.used_names);
  for (const auto& s : system.states)
    out.state_predicates.push_back(Predicate::of(prefix + std::to_string(s.id), s.param_count));

  auto add = [&](Rule r) {
    if (std::find(out.program.rules.begin(), out.program.rules.end(), r) == out.program.rules.end())
      out.program.rules.push_back(std::move(r));
  };
  add(Rule{{out.state_predicates[system.initial], {}}, {}, {}});

  for (const auto& t : system.transitions) {
    const auto k = system.states[t.from].param_count;
    const RuleVars vars{t.guard, k};
    Rule r;
    r.head.pred = out.state_predicates[t.to];
    for (const auto& src : t.param_passing) {
      switch (src.kind) {
        case ParamSource::Kind::StateParam: r.head.args.push_back(vars.param(src.index)); break;
        case ParamSource::Kind::FactArg: r.head.args.push_back(vars.param(k + 1 + src.index)); break;
        case ParamSource::Kind::Constant: r.head.args.push_back(src.constant); break;
      }
    }
    Literal from{out.state_predicates[t.from], {}};
    for (std::uint32_t i = 1; i <= k; ++i) from.args.push_back(vars.param(i));
    r.body.push_back(std::move(from));
    if (t.fact) {
      Literal f{t.fact->pred, {}};
      for (auto a : t.fact->args) f.args.push_back(vars.term(a));
      r.body.push_back(std::move(f));
    }
    for (const auto& [a, b] : t.guard.disequalities()) r.guards.push_back({vars.term(a), vars.term(b)});
    add(std::move(r));
  }

  for (const auto& [id, templates] : system.accepting) {
    const ConditionConjunction none;
    const RuleVars vars{none, system.states[id].param_count};
    for (const auto& tmpl : templates) {
      Rule r;
      r.head.pred = out.answer;
      for (auto t : tmpl) r.head.args.push_back(vars.term(t));
      Literal from{out.state_predicates[id], {}};
      for (std::uint32_t i = 1; i <= system.states[id].param_count; ++i) from.args.push_back(vars.param(i));
      r.body.push_back(std::move(from));
      add(std::move(r));
    }
  }
  return out;
}

std::string export_dot(const SLDDBSystem& system) {
  constexpr std::size_t kMaxLabel = 120;
  std::string out = "digraph slddb {\n  node [shape=box];\n";
  for (const auto& s : system.states) {
    std::string label = "s" + std::to_string(s.id) + ": " + to_string(s);
    if (label.size() > kMaxLabel) label = label.substr(0, kMaxLabel - 3) + "...";
    out += "  s" + std::to_string(s.id) + " [label=\"" + dot_escape(label) + "\"";
    if (system.accepting.contains(s.id)) out += ", peripheries=2";
    out += "];\n";
  }
  for (const auto& t : system.transitions) {
    std::string label = t.fact ? to_string(*t.fact) : "\xCE\xB5";  // epsilon
    if (!t.guard.empty()) label += " [" + to_string(t.guard) + "]";
    out += "  s" + std::to_string(t.from) + " -> s" + std::to_string(t.to) + " [label=\"" + dot_escape(label) + "\"];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace slddb
