#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "slddb/program.hpp"

namespace slddb {

enum class DiagnosticKind {
  RangeRestrictionViolation,
  EdbInHead,
  ReservedPredicate,
  ArityConflict,
  UnsafeGuard,
};

struct Diagnostic {
  DiagnosticKind kind;
  std::size_t rule = 0;  // 1-based rule number, 0 when not rule-specific
  std::string subject;   // offending variable or predicate
  std::string message;
};

std::string to_string(const Diagnostic& d);

// Empty iff every rule is range-restricted, no EDB predicate occurs in a
// head, `answer` is unused and arities are consistent. `allow_answer` is set
// for compiled rule sets, whose answer rules are legitimate.
std::vector<Diagnostic> validate(const Program& program, bool allow_answer = false);

// Arity agreement of query literals with the program; `answer` is reserved.
std::vector<Diagnostic> validate_query(const Program& program, const Query& query);

// Calls between predicates: p -> q when q occurs in the body of a rule for p.
class PredGraph {
 public:
  explicit PredGraph(const Program& program);

  const std::set<Predicate>& nodes() const { return nodes_; }
  const std::set<std::pair<Predicate, Predicate>>& edges() const { return edges_; }
  // Subset of edges where q is the first body literal.
  const std::set<std::pair<Predicate, Predicate>>& first_edges() const { return first_edges_; }

  // Reflexive-transitive reachability along edges.
  bool depends_on(Predicate from, Predicate to) const;
  // p reaches itself through at least one edge.
  bool is_recursive(Predicate p) const;

 private:
  std::set<Predicate> nodes_;
  std::set<std::pair<Predicate, Predicate>> edges_;
  std::set<std::pair<Predicate, Predicate>> first_edges_;
  std::map<Predicate, std::set<Predicate>> reach_;  // strict (>= 1 edge)
};

PredGraph dependency_graph(const Program& program);

// Ordered from best to worst; a program's summary is the worst class.
enum class RecursionClass { NonRecursive, TailRecursive, General, LeftRecursive };

std::string to_string(RecursionClass c);

struct RecursionReport {
  std::map<Predicate, RecursionClass> classes;  // IDB predicates only
  RecursionClass summary = RecursionClass::NonRecursive;
  bool has_idb_facts = false;

  // Hypotheses of the closure finiteness theorem: no IDB facts and no left
  // recursion.
  bool closure_is_finite() const { return !has_idb_facts && summary != RecursionClass::LeftRecursive; }
};

RecursionReport classify_recursion(const Program& program);

}  // namespace slddb
