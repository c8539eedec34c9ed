#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slddb/compiler.hpp"
#include "slddb/program.hpp"
#include "slddb/sld.hpp"

namespace slddb {

enum class Engine { Sld, Slddb, SlddbSingle, Magic, Naive };

std::optional<Engine> parse_engine(std::string_view name);
std::string to_string(Engine e);

struct EngineOptions {
  SldLimits sld;
  ExploreLimits explore;
};

struct EngineResult {
  Engine engine;
  std::vector<Tuple> answers;  // sorted
  std::optional<std::size_t> facts_derived;
  std::optional<std::size_t> sld_nodes;
  Truncation truncated = Truncation::None;
  std::string stats;  // key=value lines
};

// Answers of `query` over program + db by the chosen method:
//   sld          SLD tree (reference interpreter)
//   slddb        maximal states, compiled and evaluated semi-naively
//   slddb-single single-goal states, compiled and evaluated semi-naively
//   magic        magic-sets rewriting, evaluated semi-naively
//   naive        naive fixpoint of the program plus an answer rule
EngineResult run_engine(Engine engine, const Program& program, const Database& db, const Query& query,
                        const EngineOptions& options = {});

}  // namespace slddb
