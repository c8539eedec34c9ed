#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "slddb/engines.hpp"

namespace slddb {

// edge(0,1), edge(1,2), ..., edge(n-1,n).
Database generate_chain(std::size_t n);

// The right-recursive transitive closure over edge/2 and the query
// path(0,A) used by the chain benchmark.
Program chain_program();
Query chain_query();

struct BenchRow {
  Engine engine;
  std::size_t n = 0;
  std::size_t answers_count = 0;
  std::optional<std::size_t> facts_derived;
  std::optional<std::size_t> sld_nodes;
  double wall_time_ms = 0;
};

struct BenchReport {
  std::vector<BenchRow> rows;

  std::string table() const;  // aligned text
  std::string csv() const;    // header + one line per row
};

class EngineDisagreement : public Error {
 public:
  using Error::Error;
};

// Runs every engine on generate_chain(n) for each n. Throws
// EngineDisagreement when answer sets differ between engines for some n.
BenchReport bench(const Program& program, const Query& query, const std::vector<Engine>& engines,
                  const std::vector<std::size_t>& ns, const EngineOptions& options = {});

}  // namespace slddb
