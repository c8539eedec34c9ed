#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "slddb/term.hpp"

namespace slddb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Body condition `lhs != rhs`. Only compiled rules carry these.
struct Disequality {
  Term lhs;
  Term rhs;
  friend bool operator==(const Disequality&, const Disequality&) = default;
};

struct Rule {
  Literal head;
  std::vector<Literal> body;
  std::vector<Disequality> guards;

  friend bool operator==(const Rule&, const Rule&) = default;
  bool is_fact() const { return body.empty(); }
};

std::string to_string(const Rule& r);

struct Program {
  std::vector<Rule> rules;
  std::set<Predicate> edb;

  // Predicates occurring in rule heads.
  std::set<Predicate> idb() const;
  bool is_edb(Predicate p) const { return edb.contains(p); }
  bool is_idb(Predicate p) const;
  // Rule indices with the given head predicate, in program order.
  std::vector<std::size_t> rules_for(Predicate p) const;
};

// Declarations first, then rules, one per line. The output parses back to an
// equal program.
std::string to_string(const Program& p);

// Ground EDB facts. Duplicates are dropped; per-predicate insertion order is
// preserved for deterministic SLD trees.
class Database {
 public:
  bool add(const Literal& fact);
  bool add(Predicate pred, Tuple tuple);
  bool contains(Predicate pred, const Tuple& tuple) const;

  const std::vector<Tuple>& tuples(Predicate pred) const;
  const std::map<Predicate, std::vector<Tuple>>& relations() const { return relations_; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

 private:
  std::map<Predicate, std::vector<Tuple>> relations_;
  std::map<Predicate, std::unordered_set<Tuple>> index_;
  std::size_t size_ = 0;
};

struct Query {
  std::vector<Literal> literals;
  // Variables of the query in first-occurrence order.
  std::vector<Term> answer_vars;

  static Query from_literals(std::vector<Literal> literals);
};

std::string to_string(const Query& q);  // ?- a, b.

}  // namespace slddb
