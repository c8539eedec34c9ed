#include <gtest/gtest.h>

#include "slddb/analysis.hpp"
#include "slddb/bench.hpp"
#include "slddb/magic.hpp"
#include "test_util.hpp"

using namespace slddb;
using namespace slddb::testing;

namespace {

std::set<std::string> rule_strings(const Program& p) {
  std::set<std::string> out;
  for (const auto& r : p.rules) out.insert(to_string(r));
  return out;
}

// Pairs 0 <= i < j <= n.
std::size_t pairs_below(std::size_t n) {
  std::size_t count = 0;
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) ++count;
  return count;
}

}  // namespace

TEST(MagicTransform, PathBf) {
  auto m = magic_transform(P(kPath), Q("?- path(0,A)."));
  EXPECT_EQ(rule_strings(m.program), (std::set<std::string>{
                                         "m_path(0).",
                                         "m_path(Y) :- m_path(X), edge(X,Y).",
                                         "path(X,Y) :- m_path(X), edge(X,Y).",
                                         "path(X,Z) :- m_path(X), edge(X,Y), path(Y,Z).",
                                         "answer(A) :- path(0,A).",
                                     }));
  EXPECT_EQ(m.adornments.at(Predicate::of("path", 2)), "bf");
}

TEST(MagicTransform, NonRecursive) {
  auto p = P("% edb e/2\nq(X,Y) :- e(X,Z), e(Z,Y).");
  auto m = magic_transform(p, Q("?- q(1,A)."));
  EXPECT_EQ(rule_strings(m.program), (std::set<std::string>{
                                         "m_q(1).",
                                         "q(X,Y) :- m_q(X), e(X,Z), e(Z,Y).",
                                         "answer(A) :- q(1,A).",
                                     }));
}

TEST(MagicTransform, AllFree) {
  auto p = P(kPath);
  auto m = magic_transform(p, Q("?- path(A,B)."));
  auto expected = rule_strings(p);
  expected.insert("answer(A,B) :- path(A,B).");
  EXPECT_EQ(rule_strings(m.program), expected);
  EXPECT_TRUE(m.magic_predicates.empty());
}

TEST(MagicTransform, SeveralAdornments) {
  // path is called bf from the query and bb from check.
  auto p = P("% edb edge/2\npath(X,Y) :- edge(X,Y).\npath(X,Z) :- edge(X,Y), path(Y,Z).\ncheck(X) :- edge(X,Y), path(Y,X).");
  auto q = Q("?- check(A), path(A,B).");
  auto m = magic_transform(p, q);
  EXPECT_TRUE(m.adornments.count(Predicate::of("path_bf", 2)));
  EXPECT_TRUE(m.adornments.count(Predicate::of("path_bb", 2)));
  auto db = edges({{0, 1}, {1, 2}, {2, 0}, {2, 3}});
  EXPECT_EQ(magic_stats(p, q, db).answers, brute_force_answers(p, db, q));
}

TEST(MagicStats, Quadratic) {
  for (std::size_t n : {3u, 10u, 50u}) {
    auto s = magic_stats(P(kPath), Q("?- path(0,A)."), generate_chain(n));
    EXPECT_EQ(s.idb_counts.at(Predicate::of("path", 2)), pairs_below(n)) << n;
    EXPECT_EQ(s.answers.size(), n);
  }
  auto s3 = magic_stats(P(kPath), Q("?- path(0,A)."), generate_chain(3));
  EXPECT_EQ(s3.answers, ints({1, 2, 3}));
}

TEST(MagicStats, EmptyDatabase) {
  auto s = magic_stats(P(kPath), Q("?- path(0,A)."), Database{});
  EXPECT_TRUE(s.answers.empty());
  EXPECT_EQ(s.magic_facts, 1u);
  EXPECT_EQ(s.store.tuples(Predicate::of("m_path", 1)), (std::vector<Tuple>{{I(0)}}));
}

TEST(MagicStats, AnswerEquivalence) {
  for (const char* text : {kPath, kLeftPath, kSameGeneration}) {
    auto p = P(text);
    Database db = edges({{0, 1}, {1, 2}, {2, 0}, {3, 1}});
    db.add(Predicate::of("person", 1), {I(0)});
    db.add(Predicate::of("person", 1), {I(3)});
    db.add(Predicate::of("parent", 2), {I(1), I(0)});
    db.add(Predicate::of("parent", 2), {I(2), I(3)});
    db.add(Predicate::of("parent", 2), {I(4), I(2)});
    for (const char* query : {"?- path(0,A).", "?- path(A,1).", "?- sg(1,B).", "?- sg(A,B)."}) {
      auto q = Q(query);
      if (!validate_query(p, q).empty() || !p.is_idb(q.literals[0].pred)) continue;
      EXPECT_EQ(magic_stats(p, q, db).answers, brute_force_answers(p, db, q)) << text << query;
    }
  }
}
