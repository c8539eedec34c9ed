#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "slddb/program.hpp"

namespace slddb {

// Appends answer(A_1, ..., A_m) over the query's answer variables.
Goal extend_query(const Query& query);

// One resolution step on the first literal of `goal`. `clause` is a program
// rule or a ground fact (empty body) and must share no variables with the
// goal.
std::optional<Goal> sld_step(const Goal& goal, const Rule& clause);

struct SldLimits {
  std::size_t max_depth = 10'000;
  std::size_t max_nodes = 1'000'000;
  // Do not expand a goal that is a variant of one of its ancestors. Keeps
  // the answer set and makes trees finite for programs with bounded goal
  // length; off by default so the tree is plain SLD.
  bool loop_check = false;
  // Keep every node's goal in SldTree::nodes.
  bool record_goals = false;
};

enum class Truncation { None, MaxDepth, MaxNodes };

std::string to_string(Truncation t);

struct SldNode {
  Goal goal;
  std::size_t parent;  // index into nodes; the root is its own parent
  std::size_t depth;
};

// Depth-first SLD tree with the first-literal selection rule. Children of a
// node are its resolvents against the program rules (program order) or the
// database facts (insertion order). Every goal is a node, the root and
// failure leaves included; a goal that is a lone ground answer literal is a
// success leaf and contributes its arguments to `answers`.
struct SldTree {
  Goal root;
  std::size_t node_count = 0;
  std::size_t max_depth_reached = 0;
  std::vector<Tuple> answers;  // sorted, distinct
  Truncation truncated = Truncation::None;
  std::vector<SldNode> nodes;  // only with SldLimits::record_goals
};

SldTree build_tree(const Program& program, const Database& db, const Query& query, const SldLimits& limits = {});

struct SldAnswers {
  std::vector<Tuple> tuples;
  Truncation truncated = Truncation::None;
};

SldAnswers answers(const Program& program, const Database& db, const Query& query, const SldLimits& limits = {});

}  // namespace slddb
