#include "slddb/program.hpp"

#include <algorithm>

namespace slddb {

std::string to_string(const Rule& r) {
  std::string out = to_string(r.head);
  if (!r.body.empty() || !r.guards.empty()) {
    out += " :- ";
    bool first = true;
    for (const auto& lit : r.body) {
      if (!first) out += ", ";
      out += to_string(lit);
      first = false;
    }
    for (const auto& g : r.guards) {
      if (!first) out += ", ";
      out += to_string(g.lhs) + " != " + to_string(g.rhs);
      first = false;
    }
  }
  out += '.';
  return out;
}

std::set<Predicate> Program::idb() const {
  std::set<Predicate> out;
  for (const auto& r : rules) out.insert(r.head.pred);
  return out;
}

bool Program::is_idb(Predicate p) const {
  return std::any_of(rules.begin(), rules.end(), [&](const Rule& r) { return r.head.pred == p; });
}

std::vector<std::size_t> Program::rules_for(Predicate p) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rules.size(); ++i)
    if (rules[i].head.pred == p) out.push_back(i);
  return out;
}

std::string to_string(const Program& p) {
  std::string out;
  for (auto pred : p.edb) out += "% edb " + to_string(pred) + "\n";
  for (const auto& r : p.rules) out += to_string(r) + "\n";
  return out;
}

bool Database::add(const Literal& fact) { return add(fact.pred, fact.args); }

bool Database::add(Predicate pred, Tuple tuple) {
  for (auto t : tuple)
    if (!t.is_constant()) throw Error("database fact is not ground: " + to_string(Literal{pred, tuple}));
  if (!index_[pred].insert(tuple).second) return false;
  relations_[pred].push_back(std::move(tuple));
  ++size_;
  return true;
}

bool Database::contains(Predicate pred, const Tuple& tuple) const {
  auto it = index_.find(pred);
  return it != index_.end() && it->second.contains(tuple);
}

const std::vector<Tuple>& Database::tuples(Predicate pred) const {
  static const std::vector<Tuple> empty;
  auto it = relations_.find(pred);
  return it == relations_.end() ? empty : it->second;
}

Query Query::from_literals(std::vector<Literal> literals) {
  Query q;
  q.literals = std::move(literals);
  for (const auto& lit : q.literals)
    for (auto t : lit.args)
      if (t.is_variable() && std::find(q.answer_vars.begin(), q.answer_vars.end(), t) == q.answer_vars.end())
        q.answer_vars.push_back(t);
  return q;
}

std::string to_string(const Query& q) {
  std::string out = "?- ";
  for (std::size_t i = 0; i < q.literals.size(); ++i) {
    if (i) out += ", ";
    out += to_string(q.literals[i]);
  }
  return out + ".";
}

}  // namespace slddb
