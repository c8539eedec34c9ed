#include "slddb/engines.hpp"

#include "slddb/eval.hpp"
#include "slddb/magic.hpp"

namespace slddb {

std::optional<Engine> parse_engine(std::string_view name) {
  if (name == "sld") return Engine::Sld;
  if (name == "slddb") return Engine::Slddb;
  if (name == "slddb-single") return Engine::SlddbSingle;
  if (name == "magic") return Engine::Magic;
  if (name == "naive") return Engine::Naive;
  return std::nullopt;
}

std::string to_string(Engine e) {
  switch (e) {
    case Engine::Sld: return "sld";
    case Engine::Slddb: return "slddb";
    case Engine::SlddbSingle: return "slddb-single";
    case Engine::Magic: return "magic";
    case Engine::Naive: return "naive";
  }
  return "?";
}

EngineResult run_engine(Engine engine, const Program& program, const Database& db, const Query& query,
                        const EngineOptions& options) {
  EngineResult out{engine, {}, std::nullopt, std::nullopt, Truncation::None, {}};
  switch (engine) {
    case Engine::Sld: {
      auto tree = build_tree(program, db, query, options.sld);
      out.answers = std::move(tree.answers);
      out.sld_nodes = tree.node_count;
      out.truncated = tree.truncated;
      out.stats = "node_count=" + std::to_string(tree.node_count) + "\ntruncated=" + to_string(tree.truncated) + "\n";
      break;
    }
    case Engine::Slddb:
    case Engine::SlddbSingle: {
      const auto g = engine == Engine::Slddb ? Granularity::Maximal : Granularity::SingleGoal;
      auto system = explore(program, query, g, options.explore);
      auto compiled = emit_rules(system);
      auto run = run_compiled(compiled, db);
      out.answers = std::move(run.answers);
      out.facts_derived = run.store.stats.facts_derived;
      out.stats = "states=" + std::to_string(system.states.size()) +
                  "\ntransitions=" + std::to_string(system.transitions.size()) + "\n" + format_stats(run.store, db);
      break;
    }
    case Engine::Magic: {
      auto m = magic_stats(program, query, db);
      out.answers = std::move(m.answers);
      out.facts_derived = m.store.stats.facts_derived;
      out.stats = format_stats(m.store, db);
      break;
    }
    case Engine::Naive: {
      Program p = program;
      p.rules.push_back({{answer_predicate(static_cast<std::uint32_t>(query.answer_vars.size())), query.answer_vars},
                         query.literals,
                         {}});
      auto store = naive_eval(p, db);
      out.answers = store.sorted(p.rules.back().head.pred);
      out.facts_derived = store.stats.facts_derived;
      out.stats = format_stats(store, db);
      break;
    }
  }
  return out;
}

}  // namespace slddb
