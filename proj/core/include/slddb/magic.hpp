#pragma once

#include <map>
#include <string>
#include <vector>

#include "slddb/eval.hpp"
#include "slddb/program.hpp"

namespace slddb {

// Binding pattern of an IDB predicate call: 'b' or 'f' per argument.
using Adornment = std::string;

// Result of the magic-sets rewriting with left-to-right sideways
// information passing. Only adornments reachable from the query are
// generated. A predicate with a single adornment keeps its name; otherwise
// the adornment is appended (path_bf). Magic predicates are prefixed m_.
// A query that binds no argument of an IDB literal leaves the program as it
// is, plus the answer rule.
struct MagicProgram {
  Program program;
  Predicate answer;
  std::map<Predicate, Predicate> origin;             // adorned or magic predicate -> source predicate
  std::map<Predicate, Adornment> adornments;         // adorned predicate -> pattern
  std::vector<Predicate> magic_predicates;
};

MagicProgram magic_transform(const Program& program, const Query& query);

struct MagicStats {
  std::vector<Tuple> answers;  // sorted
  // Facts per source IDB predicate, summed over its adorned versions.
  std::map<Predicate, std::size_t> idb_counts;
  std::size_t magic_facts = 0;
  FactStore store;
};

MagicStats magic_stats(const Program& program, const Query& query, const Database& db);

}  // namespace slddb
