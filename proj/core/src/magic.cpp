#include "slddb/magic.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <set>

namespace slddb {

namespace {

bool has_bound(const Adornment& a) { return a.find('b') != Adornment::npos; }

// One rule together with the adornment of its head. The query is treated as
// the rule answer(vars) :- query, whose head needs no magic guard.
struct AdornedRule {
  const Rule* rule;
  Adornment head;
  bool is_query;
  std::vector<std::optional<Adornment>> body;  // set for IDB literals
};

class Transformer {
 public:
  Transformer(const Program& program, const Query& query) : program_(program), idb_(program.idb()) {
    for (auto p : program.edb) used_.emplace(p.name_text());
    for (auto p : idb_) used_.emplace(p.name_text());
    for (const auto& r : program.rules)
      for (const auto& b : r.body) used_.emplace(b.pred.name_text());
    for (const auto& l : query.literals) used_.emplace(l.pred.name_text());

    query_rule_.head = {answer_predicate(static_cast<std::uint32_t>(query.answer_vars.size())), query.answer_vars};
    query_rule_.body = query.literals;
  }

  MagicProgram run() {
    if (query_binds_nothing()) {
      // Nothing to pass down: the original program plus the answer rule.
      out_.program = program_;
      out_.program.rules.push_back(query_rule_);
      out_.answer = query_rule_.head.pred;
      for (auto p : idb_) {
        out_.origin[p] = p;
        out_.adornments[p] = Adornment(p.arity, 'f');
      }
      return std::move(out_);
    }

    // Pass 1: reachable adornments.
    std::vector<AdornedRule> adorned;
    std::deque<std::pair<Predicate, Adornment>> work;
    std::set<std::pair<Predicate, Adornment>> seen;
    auto visit = [&](const Rule& r, Adornment head, bool is_query) {
      AdornedRule ar{&r, std::move(head), is_query, {}};
      std::set<Term> bound;
      for (std::size_t i = 0; i < r.head.args.size(); ++i)
        if (ar.head[i] == 'b' && r.head.args[i].is_variable()) bound.insert(r.head.args[i]);
      for (const auto& lit : r.body) {
        if (idb_.contains(lit.pred)) {
          Adornment a;
          for (auto t : lit.args) a += (!t.is_variable() || bound.contains(t)) ? 'b' : 'f';
          if (seen.emplace(lit.pred, a).second) work.emplace_back(lit.pred, a);
          ar.body.push_back(a);
        } else {
          ar.body.push_back(std::nullopt);
        }
        for (auto t : lit.args)
          if (t.is_variable()) bound.insert(t);
      }
      adorned.push_back(std::move(ar));
    };
    visit(query_rule_, Adornment(query_rule_.head.args.size(), 'f'), true);
    while (!work.empty()) {
      auto [pred, a] = work.front();
      work.pop_front();
      for (auto i : program_.rules_for(pred)) visit(program_.rules[i], a, false);
    }

    // Names.
    std::map<Predicate, std::vector<Adornment>> per_pred;
    for (const auto& [p, a] : seen) per_pred[p].push_back(a);
    for (const auto& [p, list] : per_pred) {
      for (const auto& a : list) {
        std::string name(p.name_text());
        if (list.size() > 1) name = fresh_name(name + "_" + a);
        auto adorned_pred = Predicate::of(name, p.arity);
        names_[{p, a}] = adorned_pred;
        out_.origin[adorned_pred] = p;
        out_.adornments[adorned_pred] = a;
        if (has_bound(a)) {
          auto m = Predicate::of(fresh_name("m_" + name), static_cast<std::uint32_t>(std::count(a.begin(), a.end(), 'b')));
          magic_[{p, a}] = m;
          out_.origin[m] = p;
          out_.magic_predicates.push_back(m);
        }
      }
    }

    // Pass 2: rules.
    out_.program.edb = program_.edb;
    out_.answer = query_rule_.head.pred;
    for (const auto& ar : adorned) emit(ar);
    return std::move(out_);
  }

 private:
  // No IDB literal of the query receives a bound argument, left to right.
  bool query_binds_nothing() const {
    std::set<Term> bound;
    for (const auto& lit : query_rule_.body) {
      if (idb_.contains(lit.pred))
        for (auto t : lit.args)
          if (!t.is_variable() || bound.contains(t)) return false;
      for (auto t : lit.args)
        if (t.is_variable()) bound.insert(t);
    }
    return true;
  }

  std::string fresh_name(std::string name) {
    while (used_.contains(name)) name += "_";
    used_.insert(name);
    return name;
  }

  static Literal bound_part(Predicate magic, const Literal& lit, const Adornment& a) {
    Literal m{magic, {}};
    for (std::size_t i = 0; i < lit.args.size(); ++i)
      if (a[i] == 'b') m.args.push_back(lit.args[i]);
    return m;
  }

  Literal adorned_literal(const Literal& lit, const std::optional<Adornment>& a) const {
    if (!a) return lit;
    return {names_.at({lit.pred, *a}), lit.args};
  }

  void add(Rule r) {
    auto& rules = out_.program.rules;
    if (std::find(rules.begin(), rules.end(), r) == rules.end()) rules.push_back(std::move(r));
  }

  void emit(const AdornedRule& ar) {
    const Rule& r = *ar.rule;
    std::optional<Literal> guard;
    if (!ar.is_query && has_bound(ar.head)) guard = bound_part(magic_.at({r.head.pred, ar.head}), r.head, ar.head);

    std::vector<Literal> prefix;
    if (guard) prefix.push_back(*guard);
    for (std::size_t i = 0; i < r.body.size(); ++i) {
      const auto& a = ar.body[i];
      if (a && has_bound(*a))
        add(Rule{bound_part(magic_.at({r.body[i].pred, *a}), r.body[i], *a), prefix, {}});
      prefix.push_back(adorned_literal(r.body[i], a));
    }
    Literal head = ar.is_query ? r.head : Literal{names_.at({r.head.pred, ar.head}), r.head.args};
    add(Rule{std::move(head), std::move(prefix), {}});
  }

  const Program& program_;
  std::set<Predicate> idb_;
  std::set<std::string> used_;
  Rule query_rule_;
  std::map<std::pair<Predicate, Adornment>, Predicate> names_;
  std::map<std::pair<Predicate, Adornment>, Predicate> magic_;
  MagicProgram out_;
};

}  // namespace

MagicProgram magic_transform(const Program& program, const Query& query) { return Transformer(program, query).run(); }

MagicStats magic_stats(const Program& program, const Query& query, const Database& db) {
  auto magic = magic_transform(program, query);
  MagicStats out{{}, {}, 0, seminaive_eval(magic.program, db)};
  out.answers = out.store.sorted(magic.answer);
  for (const auto& [adorned, source] : magic.origin) {
    const auto n = out.store.count(adorned);
    if (std::find(magic.magic_predicates.begin(), magic.magic_predicates.end(), adorned) != magic.magic_predicates.end())
      out.magic_facts += n;
    else
      out.idb_counts[source] += n;
  }
  return out;
}

}  // namespace slddb
