#include "random_programs.hpp"

#include <algorithm>

#include "slddb/analysis.hpp"
#include "slddb/parser.hpp"

namespace slddb::testing {

namespace {

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

int roll(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

}  // namespace

Literal random_literal(Rng& rng, const std::vector<Term>& vars, std::uint32_t max_param, std::uint32_t arity,
                       const char* pred) {
  Literal lit{Predicate::of(pred, arity), {}};
  for (std::uint32_t i = 0; i < arity; ++i) {
    const int kind = roll(rng, 0, 9);
    if (kind < 5 && !vars.empty())
      lit.args.push_back(pick(rng, vars));
    else if (kind < 8 || max_param == 0)
      lit.args.push_back(Term::integer(roll(rng, 0, 2)));
    else
      lit.args.push_back(Term::parameter(static_cast<std::uint32_t>(roll(rng, 1, static_cast<int>(max_param)))));
  }
  return lit;
}

Goal random_goal(Rng& rng, std::uint32_t max_param) {
  static const std::vector<Term> vars{Term::variable("A"), Term::variable("B"), Term::variable("C"),
                                      Term::variable("D"), Term::variable("E"), Term::variable("F")};
  static const char* preds[] = {"p", "q", "r"};
  Goal g;
  const int n = roll(rng, 1, 3);
  std::vector<Term> seen;
  for (int i = 0; i < n; ++i) {
    auto lit = random_literal(rng, vars, max_param, static_cast<std::uint32_t>(roll(rng, 0, 3)), preds[roll(rng, 0, 2)]);
    for (auto t : lit.args)
      if (t.is_variable() && std::find(seen.begin(), seen.end(), t) == seen.end()) seen.push_back(t);
    g.literals.push_back(std::move(lit));
  }
  Literal ans{answer_predicate(0), {}};
  for (auto t : seen)
    if (chance(rng, 0.6)) ans.args.push_back(t);
  if (max_param > 0 && chance(rng, 0.3)) ans.args.push_back(Term::parameter(1));
  ans.pred = answer_predicate(static_cast<std::uint32_t>(ans.args.size()));
  g.literals.push_back(std::move(ans));
  return g;
}

namespace {

struct PredSpec {
  std::string name;
  int arity;
};

std::string literal_text(const PredSpec& p, const std::vector<std::string>& args) {
  std::string s = p.name;
  if (p.arity == 0) return s;
  s += "(";
  for (std::size_t i = 0; i < args.size(); ++i) s += (i ? "," : "") + args[i];
  return s + ")";
}

std::string random_rule(Rng& rng, const PredSpec& head, const std::vector<PredSpec>& edb,
                        const std::vector<PredSpec>& idb) {
  static const std::vector<std::string> names{"X", "Y", "Z", "W", "U"};
  static const std::vector<std::string> consts{"0", "1", "a"};
  const int len = roll(rng, 1, 3);
  std::vector<std::string> body;
  std::vector<std::string> bound;
  for (int i = 0; i < len; ++i) {
    // IDB calls more likely at the end, which keeps many programs tail
    // recursive; resampling filters the rest.
    const bool use_idb = !idb.empty() && chance(rng, i + 1 == len ? 0.5 : 0.2);
    const PredSpec& p = use_idb ? pick(rng, idb) : pick(rng, edb);
    std::vector<std::string> args;
    for (int a = 0; a < p.arity; ++a) {
      if (chance(rng, 0.12)) {
        args.push_back(pick(rng, consts));
      } else {
        auto v = pick(rng, names);
        args.push_back(v);
        if (std::find(bound.begin(), bound.end(), v) == bound.end()) bound.push_back(v);
      }
    }
    body.push_back(literal_text(p, args));
  }
  std::vector<std::string> head_args;
  for (int a = 0; a < head.arity; ++a)
    head_args.push_back(bound.empty() || chance(rng, 0.1) ? pick(rng, consts) : pick(rng, bound));
  std::string r = literal_text(head, head_args) + " :- ";
  for (std::size_t i = 0; i < body.size(); ++i) r += (i ? ", " : "") + body[i];
  return r + ".\n";
}

}  // namespace

CorpusInstance random_instance(Rng& rng) {
  const std::vector<PredSpec> edb{{"e", 2}, {"f", 1}, {"g", 2}};
  for (;;) {
    const int n_idb = roll(rng, 1, 4);
    std::vector<PredSpec> idb;
    for (int i = 0; i < n_idb; ++i) idb.push_back({"p" + std::to_string(i + 1), roll(rng, 1, 2)});

    std::string text = "% edb e/2\n% edb f/1\n% edb g/2\n";
    for (std::size_t i = 0; i < idb.size(); ++i) {
      const int n_rules = roll(rng, 1, 3);
      for (int r = 0; r < n_rules; ++r) {
        // Rules may only call predicates at or after their own index, plus
        // occasionally earlier ones, so that recursion appears but not
        // everywhere.
        std::vector<PredSpec> callable;
        for (std::size_t j = 0; j < idb.size(); ++j)
          if (j >= i || chance(rng, 0.3)) callable.push_back(idb[j]);
        text += random_rule(rng, idb[i], edb, callable);
      }
    }

    Program program;
    try {
      program = parse_program(text);
    } catch (const Error&) {
      continue;
    }
    if (!validate(program).empty()) continue;
    auto report = classify_recursion(program);
    if (report.has_idb_facts) continue;
    if (report.summary != RecursionClass::NonRecursive && report.summary != RecursionClass::TailRecursive) continue;

    // Query on the first IDB predicate, with one or two literals.
    const auto& qp = idb.front();
    std::vector<std::string> args;
    static const std::vector<std::string> qterms{"A", "B", "0", "1", "2"};
    for (int a = 0; a < qp.arity; ++a) args.push_back(pick(rng, qterms));
    std::string qtext = "?- " + literal_text(qp, args);
    if (chance(rng, 0.2)) qtext += ", f(" + pick(rng, qterms) + ")";
    qtext += ".";
    Query query = parse_query(qtext);

    Database db;
    const int n_facts = roll(rng, 0, 30);
    static const std::vector<std::string> domain{"0", "1", "2", "3", "a", "b"};
    for (int i = 0; i < n_facts; ++i) {
      const auto& p = pick(rng, edb);
      Tuple row;
      for (int a = 0; a < p.arity; ++a) row.push_back(parse_constant(pick(rng, domain)));
      db.add(Predicate::of(p.name, static_cast<std::uint32_t>(p.arity)), row);
    }
    return {std::move(program), std::move(query), std::move(db), text + qtext};
  }
}

}  // namespace slddb::testing
