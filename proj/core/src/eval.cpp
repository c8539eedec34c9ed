#include "slddb/eval.hpp"

#include <algorithm>
#include <unordered_map>

namespace slddb {

FactStore::FactStore(const Database& db) {
  for (const auto& [pred, rows] : db.relations())
    for (const auto& row : rows) insert(pred, row);
}

bool FactStore::insert(Predicate pred, Tuple tuple) {
  auto& rel = relations_[pred];
  if (!rel.index.insert(tuple).second) return false;
  rel.rows.push_back(std::move(tuple));
  ++size_;
  return true;
}

bool FactStore::contains(Predicate pred, const Tuple& tuple) const {
  auto it = relations_.find(pred);
  return it != relations_.end() && it->second.index.contains(tuple);
}

const std::vector<Tuple>& FactStore::tuples(Predicate pred) const {
  static const std::vector<Tuple> empty;
  auto it = relations_.find(pred);
  return it == relations_.end() ? empty : it->second.rows;
}

std::vector<Tuple> FactStore::sorted(Predicate pred) const {
  auto out = tuples(pred);
  std::sort(out.begin(), out.end(), tuple_less);
  return out;
}

std::vector<Predicate> FactStore::predicates() const {
  std::vector<Predicate> out;
  for (const auto& [p, rel] : relations_)
    if (!rel.rows.empty()) out.push_back(p);
  return out;
}

bool operator==(const FactStore& a, const FactStore& b) {
  if (a.size_ != b.size_) return false;
  for (const auto& [p, rel] : a.relations_) {
    if (rel.rows.size() != b.count(p)) return false;
    for (const auto& row : rel.rows)
      if (!b.contains(p, row)) return false;
  }
  return true;
}

namespace {

// Argument of a compiled literal.
struct Slot {
  enum class Op : std::uint8_t {
    Constant,  // must equal `constant`
    Bound,     // must equal the value of `var`
    Bind,      // first occurrence; binds `var`
  };
  Op op;
  std::uint32_t var = 0;
  Term constant{};
};

struct CompiledLiteral {
  Predicate pred;
  std::vector<Slot> slots;
  std::uint64_t key_mask = 0;  // positions known before the literal is matched
};

struct CompiledGuard {
  Slot lhs;
  Slot rhs;
};

struct CompiledRule {
  Predicate head_pred;
  std::vector<Slot> head;
  std::vector<CompiledLiteral> body;
  std::vector<CompiledGuard> guards;
  std::size_t var_count = 0;
};

CompiledRule compile(const Rule& rule) {
  CompiledRule out;
  std::unordered_map<Term, std::uint32_t> vars;
  auto var_of = [&](Term t) {
    auto [it, inserted] = vars.emplace(t, static_cast<std::uint32_t>(vars.size()));
    return std::pair{it->second, inserted};
  };
  for (const auto& lit : rule.body) {
    CompiledLiteral cl{lit.pred, {}, 0};
    if (lit.args.size() > 64) throw Error("arity above 64 is not supported: " + to_string(lit.pred));
    for (std::size_t i = 0; i < lit.args.size(); ++i) {
      const Term t = lit.args[i];
      if (!t.is_variable()) {
        cl.slots.push_back({Slot::Op::Constant, 0, t});
        cl.key_mask |= 1ULL << i;
        continue;
      }
      auto [v, fresh] = var_of(t);
      bool bound_before = !fresh && std::none_of(cl.slots.begin(), cl.slots.end(), [&](const Slot& s) {
        return s.op == Slot::Op::Bind && s.var == v;
      });
      if (fresh) {
        cl.slots.push_back({Slot::Op::Bind, v, {}});
      } else {
        cl.slots.push_back({Slot::Op::Bound, v, {}});
        if (bound_before) cl.key_mask |= 1ULL << i;
      }
    }
    out.body.push_back(std::move(cl));
  }
  auto value_slot = [&](Term t) {
    if (!t.is_variable()) return Slot{Slot::Op::Constant, 0, t};
    auto it = vars.find(t);
    if (it == vars.end()) throw Error("rule is not range-restricted: " + to_string(rule));
    return Slot{Slot::Op::Bound, it->second, {}};
  };
  out.head_pred = rule.head.pred;
  for (auto t : rule.head.args) out.head.push_back(value_slot(t));
  for (const auto& g : rule.guards) out.guards.push_back({value_slot(g.lhs), value_slot(g.rhs)});
  out.var_count = vars.size();
  return out;
}

// Row window of a relation used for one body literal.
struct Window {
  std::size_t begin;
  std::size_t end;
};

class Evaluator {
 public:
  Evaluator(const Program& program, FactStore& store) : store_(store) {
    for (const auto& r : program.rules) rules_.push_back(compile(r));
  }

  FactStore& store() { return store_; }

  // Evaluates `rule` with one window per body literal, appending head tuples
  // to `out`.
  void fire(const CompiledRule& rule, const std::vector<Window>& windows, std::vector<std::pair<Predicate, Tuple>>& out) {
    env_.assign(rule.var_count, Term{});
    match(rule, windows, 0, out);
  }

  const std::vector<CompiledRule>& rules() const { return rules_; }

  void new_round() { indexes_.clear(); }

 private:
  using Index = std::unordered_map<Tuple, std::vector<std::uint32_t>>;

  const Index& index_for(Predicate pred, std::uint64_t mask) {
    auto key = std::pair{pred, mask};
    for (auto& [k, idx] : indexes_)
      if (k == key) return idx;
    Index idx;
    const auto& rows = store_.tuples(pred);
    for (std::uint32_t r = 0; r < rows.size(); ++r) idx[project(rows[r], mask)].push_back(r);
    indexes_.emplace_back(key, std::move(idx));
    return indexes_.back().second;
  }

  static Tuple project(const Tuple& row, std::uint64_t mask) {
    Tuple key;
    for (std::size_t i = 0; i < row.size(); ++i)
      if (mask & (1ULL << i)) key.push_back(row[i]);
    return key;
  }

  bool value_of(const Slot& s, Term& out) const {
    out = s.op == Slot::Op::Constant ? s.constant : env_[s.var];
    return true;
  }

  bool unify_row(const CompiledLiteral& lit, const Tuple& row) {
    for (std::size_t i = 0; i < lit.slots.size(); ++i) {
      const Slot& s = lit.slots[i];
      switch (s.op) {
        case Slot::Op::Constant:
          if (row[i] != s.constant) return false;
          break;
        case Slot::Op::Bound:
          if (row[i] != env_[s.var]) return false;
          break;
        case Slot::Op::Bind:
          env_[s.var] = row[i];
          break;
      }
    }
    return true;
  }

  void match(const CompiledRule& rule, const std::vector<Window>& windows, std::size_t i,
             std::vector<std::pair<Predicate, Tuple>>& out) {
    if (i == rule.body.size()) {
      Term a, b;
      for (const auto& g : rule.guards) {
        value_of(g.lhs, a);
        value_of(g.rhs, b);
        if (a == b) return;
      }
      Tuple head;
      head.reserve(rule.head.size());
      for (const auto& s : rule.head) {
        value_of(s, a);
        head.push_back(a);
      }
      out.emplace_back(rule.head_pred, std::move(head));
      return;
    }
    const auto& lit = rule.body[i];
    const auto& rows = store_.tuples(lit.pred);
    const Window w = windows[i];
    if (w.begin >= w.end) return;
    if (lit.key_mask == 0) {
      for (std::size_t r = w.begin; r < w.end; ++r)
        if (unify_row(lit, rows[r])) match(rule, windows, i + 1, out);
      return;
    }
    Tuple key;
    for (std::size_t p = 0; p < lit.slots.size(); ++p) {
      if (!(lit.key_mask & (1ULL << p))) continue;
      Term v;
      value_of(lit.slots[p], v);
      key.push_back(v);
    }
    const auto& idx = index_for(lit.pred, lit.key_mask);
    auto it = idx.find(key);
    if (it == idx.end()) return;
    for (auto r : it->second) {
      if (r < w.begin || r >= w.end) continue;
      if (unify_row(lit, rows[r])) match(rule, windows, i + 1, out);
    }
  }

  FactStore& store_;
  std::vector<CompiledRule> rules_;
  std::vector<Term> env_;
  std::vector<std::pair<std::pair<Predicate, std::uint64_t>, Index>> indexes_;
};

std::size_t commit(FactStore& store, std::vector<std::pair<Predicate, Tuple>>& derived) {
  std::size_t added = 0;
  store.stats.rule_applications += derived.size();
  for (auto& [pred, tuple] : derived)
    if (store.insert(pred, std::move(tuple))) ++added;
  store.stats.facts_derived += added;
  derived.clear();
  return added;
}

}  // namespace

FactStore naive_eval(const Program& program, const Database& db) {
  FactStore store(db);
  Evaluator ev(program, store);
  std::vector<std::pair<Predicate, Tuple>> derived;
  for (;;) {
    ++store.stats.iterations;
    ev.new_round();
    for (const auto& rule : ev.rules()) {
      std::vector<Window> windows;
      for (const auto& lit : rule.body) windows.push_back({0, store.count(lit.pred)});
      ev.fire(rule, windows, derived);
    }
    if (commit(store, derived) == 0) break;
  }
  return store;
}

FactStore seminaive_eval(const Program& program, const Database& db) {
  FactStore store(db);
  Evaluator ev(program, store);
  std::vector<std::pair<Predicate, Tuple>> derived;

  // Relation sizes at the start of the previous round: rows past this mark
  // form the delta.
  std::map<Predicate, std::size_t> delta_begin;
  auto snapshot = [&] {
    std::map<Predicate, std::size_t> sizes;
    for (const auto& rule : ev.rules()) {
      sizes[rule.head_pred] = store.count(rule.head_pred);
      for (const auto& lit : rule.body) sizes[lit.pred] = store.count(lit.pred);
    }
    return sizes;
  };

  ++store.stats.iterations;
  ev.new_round();
  auto before = snapshot();
  for (const auto& rule : ev.rules()) {
    std::vector<Window> windows;
    for (const auto& lit : rule.body) windows.push_back({0, store.count(lit.pred)});
    ev.fire(rule, windows, derived);
  }
  if (commit(store, derived) == 0) return store;
  delta_begin = std::move(before);

  for (;;) {
    ++store.stats.iterations;
    ev.new_round();
    auto now = snapshot();
    for (const auto& rule : ev.rules()) {
      for (std::size_t d = 0; d < rule.body.size(); ++d) {
        const auto& dpred = rule.body[d].pred;
        if (delta_begin[dpred] >= now[dpred]) continue;
        std::vector<Window> windows;
        for (std::size_t j = 0; j < rule.body.size(); ++j) {
          const auto p = rule.body[j].pred;
          if (j < d)
            windows.push_back({0, delta_begin[p]});
          else if (j == d)
            windows.push_back({delta_begin[p], now[p]});
          else
            windows.push_back({0, now[p]});
        }
        ev.fire(rule, windows, derived);
      }
    }
    if (commit(store, derived) == 0) break;
    delta_begin = std::move(now);
  }
  return store;
}

RunResult run_compiled(const CompiledRules& rules, const Database& db) {
  RunResult out{{}, seminaive_eval(rules.program, db)};
  out.answers = out.store.sorted(rules.answer);
  return out;
}

std::string format_stats(const FactStore& store, const Database& db) {
  std::string out;
  out += "facts_derived=" + std::to_string(store.stats.facts_derived) + "\n";
  out += "iterations=" + std::to_string(store.stats.iterations) + "\n";
  out += "rule_applications=" + std::to_string(store.stats.rule_applications) + "\n";
  for (auto p : store.predicates()) {
    const auto base = db.tuples(p).size();
    if (store.count(p) == base) continue;
    out += "count." + to_string(p) + "=" + std::to_string(store.count(p) - base) + "\n";
  }
  return out;
}

}  // namespace slddb
