#include "slddb/sld.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "slddb/unify.hpp"

namespace slddb {

Goal extend_query(const Query& query) {
  Goal g{query.literals};
  g.literals.push_back({answer_predicate(static_cast<std::uint32_t>(query.answer_vars.size())), query.answer_vars});
  return g;
}

std::optional<Goal> sld_step(const Goal& goal, const Rule& clause) {
  if (goal.empty()) return std::nullopt;
  auto theta = mgu(goal.first(), clause.head);
  if (!theta) return std::nullopt;
  Goal out;
  out.literals.reserve(clause.body.size() + goal.size() - 1);
  for (const auto& b : clause.body) out.literals.push_back(theta->apply(b));
  for (std::size_t i = 1; i < goal.size(); ++i) out.literals.push_back(theta->apply(goal.literals[i]));
  return out;
}

std::string to_string(Truncation t) {
  switch (t) {
    case Truncation::None: return "none";
    case Truncation::MaxDepth: return "max_depth";
    case Truncation::MaxNodes: return "max_nodes";
  }
  return "?";
}

namespace {

bool is_success(const Goal& g) { return g.size() == 1 && is_answer(g.first().pred); }

class TreeBuilder {
 public:
  TreeBuilder(const Program& program, const Database& db, const SldLimits& limits)
      : program_(program), db_(db), limits_(limits) {}

  SldTree run(Goal root) {
    tree_.root = root;
    std::set<Tuple, decltype(&tuple_less)> found(&tuple_less);

    struct Frame {
      std::vector<Goal> children;
      std::size_t next = 0;
      std::size_t index;
      std::size_t depth;
      Goal key;  // normalized, for the loop check
    };
    std::vector<Frame> stack;

    // Returns true when construction must stop (node limit).
    auto visit = [&](Goal goal, std::size_t parent, std::size_t depth) -> bool {
      const std::size_t index = tree_.node_count++;
      tree_.max_depth_reached = std::max(tree_.max_depth_reached, depth);
      if (limits_.record_goals) tree_.nodes.push_back({goal, parent, depth});
      if (is_success(goal)) {
        if (goal.first().is_ground()) found.insert(goal.first().args);
        return false;
      }
      if (goal.empty()) return false;
      Goal key;
      if (limits_.loop_check) {
        key = normalize(goal);
        if (on_path_.contains(key)) return false;
      }
      if (depth >= limits_.max_depth) {
        tree_.truncated = Truncation::MaxDepth;
        return false;
      }
      Frame f{children(goal), 0, index, depth, std::move(key)};
      if (limits_.loop_check) ++on_path_[f.key];
      stack.push_back(std::move(f));
      return false;
    };

    visit(std::move(root), 0, 0);
    while (!stack.empty()) {
      auto& top = stack.back();
      if (top.next == top.children.size()) {
        if (limits_.loop_check) {
          auto it = on_path_.find(top.key);
          if (--it->second == 0) on_path_.erase(it);
        }
        stack.pop_back();
        continue;
      }
      if (tree_.node_count >= limits_.max_nodes) {
        tree_.truncated = Truncation::MaxNodes;
        break;
      }
      Goal child = std::move(top.children[top.next++]);
      const auto parent = top.index;
      const auto depth = top.depth + 1;
      visit(std::move(child), parent, depth);
    }
    tree_.answers.assign(found.begin(), found.end());
    return std::move(tree_);
  }

 private:
  std::vector<Goal> children(const Goal& goal) {
    std::vector<Goal> out;
    const Literal& selected = goal.first();
    if (program_.is_edb(selected.pred)) {
      for (const auto& tuple : db_.tuples(selected.pred))
        if (auto r = sld_step(goal, Rule{{selected.pred, tuple}, {}, {}})) out.push_back(std::move(*r));
      return out;
    }
    for (auto i : program_.rules_for(selected.pred))
      if (auto r = sld_step(goal, rename_apart(program_.rules[i], next_fresh_))) out.push_back(std::move(*r));
    return out;
  }

  const Program& program_;
  const Database& db_;
  const SldLimits& limits_;
  SldTree tree_;
  std::uint32_t next_fresh_ = 1;
  std::unordered_map<Goal, int> on_path_;
};

}  // namespace

SldTree build_tree(const Program& program, const Database& db, const Query& query, const SldLimits& limits) {
  return TreeBuilder(program, db, limits).run(extend_query(query));
}

SldAnswers answers(const Program& program, const Database& db, const Query& query, const SldLimits& limits) {
  auto tree = build_tree(program, db, query, limits);
  return {std::move(tree.answers), tree.truncated};
}

}  // namespace slddb
