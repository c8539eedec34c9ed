#include <gtest/gtest.h>

#include "slddb/parser.hpp"
#include "test_util.hpp"

using namespace slddb;
using namespace slddb::testing;

TEST(Parser, PathProgramWithTrailingDirective) {
  auto p = P("path(X,Y) :- edge(X,Y).\npath(X,Z) :- edge(X,Y), path(Y,Z).\n% edb edge/2");
  EXPECT_EQ(p.rules.size(), 2u);
  EXPECT_EQ(p.edb, (std::set<Predicate>{Predicate::of("edge", 2)}));
  EXPECT_EQ(p.idb(), (std::set<Predicate>{Predicate::of("path", 2)}));
}

TEST(Parser, EmptyInput) {
  auto p = P("");
  EXPECT_TRUE(p.rules.empty());
  EXPECT_TRUE(p.edb.empty());
}

TEST(Parser, SingleRule) {
  auto p = P("% edb q/2\np(X) :- q(X,Y).");
  EXPECT_EQ(p.idb(), (std::set<Predicate>{Predicate::of("p", 1)}));
  EXPECT_TRUE(p.is_edb(Predicate::of("q", 2)));
}

TEST(Parser, CommentsAndPropositions) {
  auto p = P("% a comment\n% edb e/0\np :- e. % trailing\nq(a) :- p.");
  ASSERT_EQ(p.rules.size(), 2u);
  EXPECT_EQ(p.rules[0].head.pred, Predicate::of("p", 0));
  EXPECT_EQ(p.rules[1].head.args[0], Term::constant("a"));
}

TEST(Parser, SyntaxErrorCarriesPosition) {
  try {
    P("p(X) :- q(X).\np(X :- q(X).");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_GT(e.column(), 1u);
  }
}

TEST(Parser, ReservedNamesRejected) {
  EXPECT_THROW(P("p(V1) :- q(V1)."), ParseError);
  EXPECT_THROW(P("p(C2) :- q(C2)."), ParseError);
  EXPECT_THROW(P("answer(X) :- q(X)."), ParseError);
  EXPECT_THROW(Q("?- answer(X)."), ParseError);
  // Prefix alone or with letters is an ordinary variable.
  EXPECT_NO_THROW(P("p(Val) :- q(Val)."));
  EXPECT_NO_THROW(P("p(C) :- q(C)."));
}

TEST(Parser, ArityConflict) {
  EXPECT_THROW(P("p(X) :- q(X).\np(X,Y) :- q(X), q(Y)."), ParseError);
  EXPECT_THROW(P("% edb e/2\np(X) :- e(X)."), ParseError);
}

TEST(Parser, ConstantsAndIntegers) {
  auto p = P("% edb e/2\np(X) :- e(X, 'hello world').\nq(X) :- e(X, 'abc').\nr(X) :- e(X, -4).");
  EXPECT_EQ(p.rules[0].body[0].args[1], Term::constant("'hello world'"));
  EXPECT_EQ(p.rules[1].body[0].args[1], Term::constant("abc"));
  EXPECT_EQ(p.rules[2].body[0].args[1], I(-4));
  EXPECT_TRUE(constant_less(I(-4), I(3)));
  EXPECT_TRUE(constant_less(I(10), Term::constant("a")));
  EXPECT_TRUE(constant_less(I(2), I(10)));
}

TEST(Parser, QueryForms) {
  auto q = Q("?- edge(X,Y), path(Y,Z).");
  EXPECT_EQ(q.literals.size(), 2u);
  EXPECT_EQ(q.answer_vars, (std::vector<Term>{Term::variable("X"), Term::variable("Y"), Term::variable("Z")}));
  auto bare = Q("path(0,A)");
  EXPECT_EQ(bare.answer_vars, (std::vector<Term>{Term::variable("A")}));
  EXPECT_TRUE(Q("?- p.").answer_vars.empty());
  // C0 is not reserved: parameter indices start at 1.
  EXPECT_NO_THROW(Q("?- input(C0), path(C0,A)."));
}

TEST(Parser, FactsMustBeDeclaredAndGround) {
  auto p = P(kPath);
  auto db = parse_facts("edge(0,1).\nedge(1,2).\nedge(0,1).\n", p);
  EXPECT_EQ(db.size(), 2u);
  EXPECT_TRUE(db.contains(Predicate::of("edge", 2), {I(0), I(1)}));
  EXPECT_THROW(parse_facts("path(0,1).", p), Error);
  EXPECT_THROW(parse_facts("edge(0,X).", p), Error);
  EXPECT_THROW(parse_facts("edge(0).", p), Error);
}

TEST(Parser, Csv) {
  Database db;
  load_csv("0,1\n1,2\n\n2,3\n", Predicate::of("edge", 2), db);
  EXPECT_EQ(db.size(), 3u);
  EXPECT_TRUE(db.contains(Predicate::of("edge", 2), {I(2), I(3)}));
  EXPECT_THROW(load_csv("0,1,2\n", Predicate::of("edge", 2), db), Error);
}

TEST(Parser, RoundTrip) {
  for (const char* text : {kPath, kLeftPath, kSameGeneration, "% edb e/1\np :- e(a).\nq('x y', Z) :- e(Z)."}) {
    auto once = P(text);
    auto twice = P(to_string(once));
    EXPECT_EQ(once.rules, twice.rules) << text;
    EXPECT_EQ(once.edb, twice.edb) << text;
    EXPECT_EQ(to_string(once), to_string(twice));
  }
}

TEST(Parser, ExtendedSyntax) {
  ParseOptions ext{.internal_terms = true, .extended = true};
  auto p = parse_program("% edb e/2\ns1(X1) :- s0, e(X1,Y2), X1 != Y2.\nanswer(X1) :- s1(X1).\ns0.", ext);
  ASSERT_EQ(p.rules.size(), 3u);
  ASSERT_EQ(p.rules[0].guards.size(), 1u);
  EXPECT_EQ(to_string(p.rules[0]), "s1(X1) :- s0, e(X1,Y2), X1 != Y2.");
  EXPECT_TRUE(is_answer(p.rules[1].head.pred));
}

TEST(Parser, GoalsWithInternalTerms) {
  auto g = G("edge(C1,V1), answer(V1)");
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g.literals[0].args[0], Term::parameter(1));
  EXPECT_EQ(g.literals[0].args[1], Term::normalized(1));
  EXPECT_EQ(to_string(g), "edge(C1,V1), answer(V1)");
}

TEST(Database, InsertionOrderAndDedup) {
  Database db;
  auto e = Predicate::of("edge", 2);
  EXPECT_TRUE(db.add(e, {I(2), I(3)}));
  EXPECT_TRUE(db.add(e, {I(0), I(1)}));
  EXPECT_FALSE(db.add(e, {I(2), I(3)}));
  EXPECT_EQ(db.tuples(e), (std::vector<Tuple>{{I(2), I(3)}, {I(0), I(1)}}));
  EXPECT_TRUE(db.tuples(Predicate::of("nothing", 1)).empty());
}
