#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "slddb/analysis.hpp"
#include "slddb/eval.hpp"
#include "test_util.hpp"

using namespace slddb;
using namespace slddb::testing;

namespace {

Predicate pr(const char* name, std::uint32_t arity) { return Predicate::of(name, arity); }

}  // namespace

TEST(Validate, PathProgramIsValid) { EXPECT_TRUE(validate(P(kPath)).empty()); }

TEST(Validate, RangeRestriction) {
  auto d = validate(P("% edb q/1\np(X,Y) :- q(X)."));
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].kind, DiagnosticKind::RangeRestrictionViolation);
  EXPECT_EQ(d[0].rule, 1u);
  EXPECT_EQ(d[0].subject, "Y");
}

TEST(Validate, EdbInHead) {
  auto d = validate(P("% edb edge/2\nedge(X,Y) :- path(X,Y).\npath(X,Y) :- edge(X,Y)."));
  ASSERT_FALSE(d.empty());
  EXPECT_EQ(d[0].kind, DiagnosticKind::EdbInHead);
  EXPECT_EQ(d[0].rule, 1u);
  EXPECT_EQ(d[0].subject, "edge/2");
}

TEST(Validate, AnswerReservedUnlessAllowed) {
  ParseOptions ext{.internal_terms = false, .extended = true};
  auto p = parse_program("% edb e/1\nanswer(X) :- e(X).", ext);
  auto d = validate(p);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].kind, DiagnosticKind::ReservedPredicate);
  EXPECT_TRUE(validate(p, true).empty());
}

TEST(Validate, GuardsMustBeBound) {
  ParseOptions ext{.internal_terms = false, .extended = true};
  auto p = parse_program("% edb e/1\np(X) :- e(X), X != Y.", ext);
  auto d = validate(p, true);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].kind, DiagnosticKind::UnsafeGuard);
}

TEST(Validate, QueryArity) {
  auto p = P(kPath);
  EXPECT_TRUE(validate_query(p, Q("?- path(0,A).")).empty());
  EXPECT_FALSE(validate_query(p, Q("?- path(0).")).empty());
}

TEST(Graph, RightRecursivePath) {
  auto g = dependency_graph(P(kPath));
  using E = std::set<std::pair<Predicate, Predicate>>;
  EXPECT_EQ(g.edges(), (E{{pr("path", 2), pr("edge", 2)}, {pr("path", 2), pr("path", 2)}}));
  EXPECT_EQ(g.first_edges(), (E{{pr("path", 2), pr("edge", 2)}}));
  EXPECT_TRUE(g.is_recursive(pr("path", 2)));
  EXPECT_FALSE(g.is_recursive(pr("edge", 2)));
}

TEST(Graph, LeftRecursivePath) {
  auto g = dependency_graph(P(kLeftPath));
  using E = std::set<std::pair<Predicate, Predicate>>;
  EXPECT_EQ(g.first_edges(), (E{{pr("path", 2), pr("edge", 2)}, {pr("path", 2), pr("path", 2)}}));
}

TEST(Graph, SameGeneration) {
  auto g = dependency_graph(P(kSameGeneration));
  using E = std::set<std::pair<Predicate, Predicate>>;
  EXPECT_EQ(g.edges(),
            (E{{pr("sg", 2), pr("person", 1)}, {pr("sg", 2), pr("parent", 2)}, {pr("sg", 2), pr("sg", 2)}}));
  EXPECT_EQ(g.first_edges(), (E{{pr("sg", 2), pr("person", 1)}, {pr("sg", 2), pr("parent", 2)}}));
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify_recursion(P(kPath)).classes.at(pr("path", 2)), RecursionClass::TailRecursive);
  EXPECT_EQ(classify_recursion(P(kLeftPath)).classes.at(pr("path", 2)), RecursionClass::LeftRecursive);
  auto sg = classify_recursion(P(kSameGeneration));
  EXPECT_EQ(sg.classes.at(pr("sg", 2)), RecursionClass::General);
  EXPECT_EQ(sg.summary, RecursionClass::General);
  EXPECT_TRUE(sg.closure_is_finite());
  EXPECT_FALSE(classify_recursion(P(kLeftPath)).closure_is_finite());
}

TEST(Classify, NonRecursiveAndIdbFacts) {
  auto r = classify_recursion(P("% edb e/2\np(X) :- e(X,Y), q(Y).\nq(a).\nq(Y) :- e(Y,Y)."));
  EXPECT_EQ(r.summary, RecursionClass::NonRecursive);
  EXPECT_TRUE(r.has_idb_facts);
  EXPECT_FALSE(r.closure_is_finite());
}

TEST(Classify, MutualRecursion) {
  // p calls q last and q calls p last: tail recursion through a cycle.
  auto tail = classify_recursion(P("% edb e/2\np(X,Y) :- e(X,Y).\np(X,Y) :- e(X,Z), q(Z,Y).\nq(X,Y) :- e(X,Z), p(Z,Y)."));
  EXPECT_EQ(tail.summary, RecursionClass::TailRecursive);
  // q reaches p through its first literal.
  auto left = classify_recursion(P("% edb e/2\np(X,Y) :- e(X,Y).\np(X,Y) :- e(X,Z), q(Z,Y).\nq(X,Y) :- p(X,Z), e(Z,Y)."));
  EXPECT_EQ(left.summary, RecursionClass::LeftRecursive);
  // A recursive call that is not last in the rule, through an auxiliary.
  auto general = classify_recursion(P("% edb e/2\np(X,Y) :- e(X,Y).\np(X,Y) :- e(X,Z), p(Z,W), e(W,Y)."));
  EXPECT_EQ(general.summary, RecursionClass::General);
}

TEST(Classify, InvariantUnderReorderingAndRenaming) {
  const std::string rules[] = {"p(X,Y) :- e(X,Y).", "p(X,Y) :- e(X,Z), q(Z,Y).", "q(X,Y) :- e(X,Z), p(Z,Y).",
                               "r(X) :- p(X,Y), e(Y,X)."};
  auto build = [&](const std::vector<int>& order, bool rename) {
    std::string text = "% edb e/2\n";
    for (int i : order) {
      std::string r = rules[i];
      if (rename)
        for (auto& c : r)
          if (c == 'p') c = 'k';
      text += r + "\n";
    }
    return classify_recursion(P(text));
  };
  auto base = build({0, 1, 2, 3}, false);
  std::vector<int> order{0, 1, 2, 3};
  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(order.begin(), order.end(), rng);
    auto other = build(order, trial % 2 == 1);
    EXPECT_EQ(other.summary, base.summary);
    EXPECT_EQ(other.classes.size(), base.classes.size());
    const auto renamed_p = trial % 2 == 1 ? pr("k", 2) : pr("p", 2);
    EXPECT_EQ(other.classes.at(renamed_p), base.classes.at(pr("p", 2)));
    EXPECT_EQ(other.classes.at(pr("r", 1)), base.classes.at(pr("r", 1)));
  }
}

TEST(Validate, RangeRestrictionImpliesGroundModel) {
  std::mt19937 rng(11);
  auto db = edges({{0, 1}, {1, 2}, {2, 0}, {2, 3}});
  for (const char* text : {kPath, kLeftPath, "% edb edge/2\nt(X,Z) :- edge(X,Y), edge(Y,Z).\nu(X) :- t(X,X)."}) {
    auto p = P(text);
    ASSERT_TRUE(validate(p).empty());
    auto store = naive_eval(p, db);
    for (auto pred : store.predicates())
      for (const auto& row : store.tuples(pred))
        for (auto t : row) EXPECT_TRUE(t.is_constant());
  }
}
