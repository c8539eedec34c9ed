#include "slddb/analysis.hpp"

#include <algorithm>
#include <deque>

namespace slddb {

namespace {

const char* kind_name(DiagnosticKind k) {
  switch (k) {
    case DiagnosticKind::RangeRestrictionViolation: return "RangeRestrictionViolation";
    case DiagnosticKind::EdbInHead: return "EdbInHead";
    case DiagnosticKind::ReservedPredicate: return "ReservedPredicate";
    case DiagnosticKind::ArityConflict: return "ArityConflict";
    case DiagnosticKind::UnsafeGuard: return "UnsafeGuard";
  }
  return "?";
}

bool occurs_in(Term v, const std::vector<Literal>& lits) {
  for (const auto& l : lits)
    if (std::find(l.args.begin(), l.args.end(), v) != l.args.end()) return true;
  return false;
}

class ArityCheck {
 public:
  void see(Predicate p, std::size_t rule, std::vector<Diagnostic>& out) {
    auto [it, inserted] = arities_.emplace(p.name, p.arity);
    if (!inserted && it->second != p.arity)
      out.push_back({DiagnosticKind::ArityConflict, rule, std::string(p.name_text()),
                     "predicate " + std::string(p.name_text()) + " used with arities " + std::to_string(it->second) +
                         " and " + std::to_string(p.arity)});
  }

 private:
  std::map<std::uint32_t, std::uint32_t> arities_;
};

}  // namespace

std::string to_string(const Diagnostic& d) {
  std::string out = kind_name(d.kind);
  if (d.rule) out += "(rule " + std::to_string(d.rule) + ")";
  return out + ": " + d.message;
}

std::vector<Diagnostic> validate(const Program& program, bool allow_answer) {
  std::vector<Diagnostic> out;
  ArityCheck arity;
  for (auto p : program.edb) {
    arity.see(p, 0, out);
    if (is_answer(p)) out.push_back({DiagnosticKind::ReservedPredicate, 0, "answer", "answer declared as EDB"});
  }
  for (std::size_t i = 0; i < program.rules.size(); ++i) {
    const auto& r = program.rules[i];
    const auto n = i + 1;
    arity.see(r.head.pred, n, out);
    for (const auto& b : r.body) arity.see(b.pred, n, out);

    if (program.is_edb(r.head.pred))
      out.push_back({DiagnosticKind::EdbInHead, n, to_string(r.head.pred),
                     "EDB predicate " + to_string(r.head.pred) + " in rule head"});
    if (!allow_answer) {
      bool uses_answer = is_answer(r.head.pred) ||
                         std::any_of(r.body.begin(), r.body.end(), [](const Literal& l) { return is_answer(l.pred); });
      if (uses_answer) out.push_back({DiagnosticKind::ReservedPredicate, n, "answer", "predicate answer is reserved"});
    }

    std::vector<Term> reported;
    for (auto t : r.head.args) {
      if (!t.is_variable() || occurs_in(t, r.body)) continue;
      if (std::find(reported.begin(), reported.end(), t) != reported.end()) continue;
      reported.push_back(t);
      out.push_back({DiagnosticKind::RangeRestrictionViolation, n, to_string(t),
                     "variable " + to_string(t) + " occurs in the head but not in the body"});
    }
    for (const auto& g : r.guards)
      for (auto t : {g.lhs, g.rhs})
        if (t.is_variable() && !occurs_in(t, r.body))
          out.push_back({DiagnosticKind::UnsafeGuard, n, to_string(t),
                         "guard variable " + to_string(t) + " does not occur in a body literal"});
  }
  return out;
}

std::vector<Diagnostic> validate_query(const Program& program, const Query& query) {
  std::vector<Diagnostic> out;
  std::map<std::uint32_t, std::uint32_t> arities;
  for (auto p : program.edb) arities.emplace(p.name, p.arity);
  for (const auto& r : program.rules) {
    arities.emplace(r.head.pred.name, r.head.pred.arity);
    for (const auto& b : r.body) arities.emplace(b.pred.name, b.pred.arity);
  }
  for (const auto& lit : query.literals) {
    if (is_answer(lit.pred)) out.push_back({DiagnosticKind::ReservedPredicate, 0, "answer", "predicate answer is reserved"});
    auto it = arities.find(lit.pred.name);
    if (it != arities.end() && it->second != lit.pred.arity)
      out.push_back({DiagnosticKind::ArityConflict, 0, std::string(lit.pred.name_text()),
                     "query uses " + to_string(lit.pred) + " but the program uses arity " + std::to_string(it->second)});
  }
  return out;
}

PredGraph::PredGraph(const Program& program) {
  for (auto p : program.edb) nodes_.insert(p);
  for (const auto& r : program.rules) {
    nodes_.insert(r.head.pred);
    for (std::size_t i = 0; i < r.body.size(); ++i) {
      nodes_.insert(r.body[i].pred);
      edges_.emplace(r.head.pred, r.body[i].pred);
      if (i == 0) first_edges_.emplace(r.head.pred, r.body[i].pred);
    }
  }
  std::map<Predicate, std::vector<Predicate>> succ;
  for (const auto& [from, to] : edges_) succ[from].push_back(to);
  for (auto start : nodes_) {
    auto& seen = reach_[start];
    std::deque<Predicate> work(succ[start].begin(), succ[start].end());
    while (!work.empty()) {
      auto p = work.front();
      work.pop_front();
      if (!seen.insert(p).second) continue;
      for (auto q : succ[p]) work.push_back(q);
    }
  }
}

bool PredGraph::depends_on(Predicate from, Predicate to) const {
  if (from == to) return true;
  auto it = reach_.find(from);
  return it != reach_.end() && it->second.contains(to);
}

bool PredGraph::is_recursive(Predicate p) const {
  auto it = reach_.find(p);
  return it != reach_.end() && it->second.contains(p);
}

PredGraph dependency_graph(const Program& program) { return PredGraph(program); }

std::string to_string(RecursionClass c) {
  switch (c) {
    case RecursionClass::NonRecursive: return "non_recursive";
    case RecursionClass::TailRecursive: return "tail_recursive";
    case RecursionClass::General: return "general";
    case RecursionClass::LeftRecursive: return "left_recursive";
  }
  return "?";
}

RecursionReport classify_recursion(const Program& program) {
  RecursionReport report;
  const PredGraph graph(program);
  for (auto p : program.idb()) report.classes[p] = RecursionClass::NonRecursive;

  for (const auto& r : program.rules) {
    if (r.body.empty()) report.has_idb_facts = true;
    auto& cls = report.classes[r.head.pred];
    if (!r.body.empty() && graph.depends_on(r.body.front().pred, r.head.pred)) {
      cls = RecursionClass::LeftRecursive;
      continue;
    }
    for (std::size_t i = 0; i + 1 < r.body.size(); ++i)
      if (graph.depends_on(r.body[i].pred, r.head.pred)) cls = std::max(cls, RecursionClass::General);
  }
  for (auto& [p, cls] : report.classes) {
    if (cls == RecursionClass::NonRecursive && graph.is_recursive(p)) cls = RecursionClass::TailRecursive;
    report.summary = std::max(report.summary, cls);
  }
  return report;
}

}  // namespace slddb
