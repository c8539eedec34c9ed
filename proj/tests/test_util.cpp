#include "test_util.hpp"

#include <functional>
#include <map>

namespace slddb::testing {

namespace {

std::vector<Term> vars_of(const Rule& r) {
  std::vector<Term> out;
  auto note = [&](Term t) {
    if (t.is_variable() && std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  };
  for (auto t : r.head.args) note(t);
  for (const auto& l : r.body)
    for (auto t : l.args) note(t);
  return out;
}

}  // namespace

std::set<std::pair<Predicate, Tuple>> brute_force_model(const Program& program, const Database& db) {
  std::set<std::pair<Predicate, Tuple>> model;
  std::set<Term> domain;
  for (const auto& [pred, rows] : db.relations())
    for (const auto& row : rows) {
      model.emplace(pred, row);
      domain.insert(row.begin(), row.end());
    }
  for (const auto& r : program.rules) {
    for (auto t : r.head.args)
      if (t.is_constant()) domain.insert(t);
    for (const auto& l : r.body)
      for (auto t : l.args)
        if (t.is_constant()) domain.insert(t);
  }
  const std::vector<Term> dom(domain.begin(), domain.end());

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : program.rules) {
      const auto vars = vars_of(r);
      std::map<Term, Term> a;
      auto ground = [&](Term t) { return t.is_variable() ? a.at(t) : t; };
      std::function<void(std::size_t)> assign = [&](std::size_t i) {
        if (i == vars.size()) {
          for (const auto& l : r.body) {
            Tuple row;
            for (auto t : l.args) row.push_back(ground(t));
            if (!model.contains({l.pred, row})) return;
          }
          for (const auto& g : r.guards)
            if (ground(g.lhs) == ground(g.rhs)) return;
          Tuple head;
          for (auto t : r.head.args) head.push_back(ground(t));
          if (model.emplace(r.head.pred, head).second) changed = true;
          return;
        }
        for (auto c : dom) {
          a[vars[i]] = c;
          assign(i + 1);
        }
      };
      assign(0);
    }
  }
  return model;
}

std::vector<Tuple> brute_force_answers(const Program& program, const Database& db, const Query& query) {
  Program p = program;
  const auto ans = answer_predicate(static_cast<std::uint32_t>(query.answer_vars.size()));
  p.rules.push_back({{ans, query.answer_vars}, query.literals, {}});
  std::vector<Tuple> out;
  for (const auto& [pred, row] : brute_force_model(p, db))
    if (pred == ans) out.push_back(row);
  std::sort(out.begin(), out.end(), tuple_less);
  return out;
}

}  // namespace slddb::testing
