#include "slddb/unify.hpp"

#include <algorithm>

namespace slddb {

Substitution::Substitution(std::initializer_list<std::pair<Term, Term>> bindings) {
  for (auto [v, t] : bindings) bind(v, t);
}

std::optional<Term> Substitution::lookup(Term var) const {
  for (const auto& [v, t] : bindings_)
    if (v == var) return t;
  return std::nullopt;
}

Term Substitution::resolve(Term t) const {
  while (t.is_variable()) {
    auto next = lookup(t);
    if (!next || *next == t) break;
    t = *next;
  }
  return t;
}

void Substitution::bind(Term var, Term value) {
  for (auto& [v, t] : bindings_) {
    if (v == var) {
      t = value;
      return;
    }
  }
  bindings_.emplace_back(var, value);
}

void Substitution::make_idempotent() {
  for (auto& [v, t] : bindings_) t = resolve(t);
}

Literal Substitution::apply(const Literal& lit) const {
  Literal out{lit.pred, {}};
  out.args.reserve(lit.args.size());
  for (auto t : lit.args) out.args.push_back(resolve(t));
  return out;
}

Goal Substitution::apply(const Goal& goal) const {
  Goal out;
  out.literals.reserve(goal.literals.size());
  for (const auto& l : goal.literals) out.literals.push_back(apply(l));
  return out;
}

bool operator==(const Substitution& a, const Substitution& b) {
  if (a.bindings_.size() != b.bindings_.size()) return false;
  return std::all_of(a.bindings_.begin(), a.bindings_.end(), [&](const auto& kv) { return b.lookup(kv.first) == kv.second; });
}

std::string to_string(const Substitution& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.bindings().size(); ++i) {
    if (i) out += ", ";
    out += to_string(s.bindings()[i].first) + "/" + to_string(s.bindings()[i].second);
  }
  return out + "}";
}

std::optional<Substitution> mgu(const Literal& a, const Literal& b) {
  if (a.pred != b.pred || a.args.size() != b.args.size()) return std::nullopt;
  Substitution s;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    const Term x = s.resolve(a.args[i]);
    const Term y = s.resolve(b.args[i]);
    if (x == y) continue;
    if (x.is_variable()) {
      s.bind(x, y);
    } else if (y.is_variable()) {
      s.bind(y, x);
    } else {
      return std::nullopt;
    }
  }
  s.make_idempotent();
  return s;
}

std::optional<ParamUnifier> param_unify(const Literal& a, const Literal& b) {
  if (a.pred != b.pred || a.args.size() != b.args.size()) return std::nullopt;
  ParamUnifier u;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    const Term x = u.subst.resolve(a.args[i]);
    const Term y = u.subst.resolve(b.args[i]);
    if (x == y) continue;
    if (x.is_variable()) {
      u.subst.bind(x, y);
    } else if (y.is_variable()) {
      u.subst.bind(y, x);
    } else if (x.is_constant() && y.is_constant()) {
      return std::nullopt;
    } else if (u.conditions.equal(x, y) != Truth::True) {
      if (!u.conditions.add_equal(x, y)) return std::nullopt;
      u.equalities.emplace_back(x, y);
    }
  }
  u.subst.make_idempotent();
  return u;
}

Goal normalize(const Goal& goal) {
  std::vector<std::pair<Term, Term>> renaming;
  Goal out;
  out.literals.reserve(goal.literals.size());
  for (const auto& lit : goal.literals) {
    Literal l{lit.pred, {}};
    l.args.reserve(lit.args.size());
    for (auto t : lit.args) {
      if (!t.is_variable()) {
        l.args.push_back(t);
        continue;
      }
      auto it = std::find_if(renaming.begin(), renaming.end(), [&](const auto& kv) { return kv.first == t; });
      if (it == renaming.end()) {
        renaming.emplace_back(t, Term::normalized(static_cast<std::uint32_t>(renaming.size() + 1)));
        it = std::prev(renaming.end());
      }
      l.args.push_back(it->second);
    }
    out.literals.push_back(std::move(l));
  }
  return out;
}

bool variant(const Goal& a, const Goal& b) { return normalize(a) == normalize(b); }

Rule rename_apart(const Rule& rule, std::uint32_t& next_fresh) {
  std::vector<std::pair<Term, Term>> renaming;
  auto rename = [&](Term t) {
    if (!t.is_variable()) return t;
    for (const auto& [from, to] : renaming)
      if (from == t) return to;
    renaming.emplace_back(t, Term::fresh(next_fresh++));
    return renaming.back().second;
  };
  auto rename_lit = [&](const Literal& l) {
    Literal out{l.pred, {}};
    out.args.reserve(l.args.size());
    for (auto t : l.args) out.args.push_back(rename(t));
    return out;
  };
  Rule out;
  out.head = rename_lit(rule.head);
  out.body.reserve(rule.body.size());
  for (const auto& b : rule.body) out.body.push_back(rename_lit(b));
  for (const auto& g : rule.guards) out.guards.push_back({rename(g.lhs), rename(g.rhs)});
  return out;
}

}  // namespace slddb
