#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "slddb/compiler.hpp"
#include "slddb/program.hpp"

namespace slddb {

struct EvalStats {
  std::size_t facts_derived = 0;      // new facts added by rules
  std::size_t rule_applications = 0;  // successful rule body matches, duplicates included
  std::size_t iterations = 0;         // rounds of the fixpoint loop
};

// Per-predicate sets of ground tuples in insertion order.
class FactStore {
 public:
  FactStore() = default;
  explicit FactStore(const Database& db);

  bool insert(Predicate pred, Tuple tuple);
  bool contains(Predicate pred, const Tuple& tuple) const;

  const std::vector<Tuple>& tuples(Predicate pred) const;
  std::vector<Tuple> sorted(Predicate pred) const;
  std::size_t count(Predicate pred) const { return tuples(pred).size(); }
  std::size_t size() const { return size_; }
  std::vector<Predicate> predicates() const;  // non-empty relations, ordered

  EvalStats stats;

  // Same facts; counters are ignored.
  friend bool operator==(const FactStore& a, const FactStore& b);

 private:
  struct Relation {
    std::vector<Tuple> rows;
    std::unordered_set<Tuple> index;
  };
  std::map<Predicate, Relation> relations_;
  std::size_t size_ = 0;
};

// Least fixpoint of the immediate-consequence operator by plain iteration.
FactStore naive_eval(const Program& program, const Database& db);

// Same fixpoint; after the first round every rule application joins at least
// one fact derived in the previous round. Bodies may carry `!=` guards,
// checked once all body literals are matched.
FactStore seminaive_eval(const Program& program, const Database& db);

struct RunResult {
  std::vector<Tuple> answers;  // sorted
  FactStore store;
};

RunResult run_compiled(const CompiledRules& rules, const Database& db);

// key=value lines: facts_derived, iterations, rule_applications, then
// count.<pred>/<arity> per derived predicate. Relations of `db` are
// reported only when rules added to them.
std::string format_stats(const FactStore& store, const Database& db);

}  // namespace slddb
