#include "slddb/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "slddb/parser.hpp"

namespace slddb {

Database generate_chain(std::size_t n) {
  Database db;
  const auto edge = Predicate::of("edge", 2);
  for (std::size_t i = 1; i <= n; ++i)
    db.add(edge, {Term::integer(static_cast<long long>(i - 1)), Term::integer(static_cast<long long>(i))});
  return db;
}

Program chain_program() {
  return parse_program(
      "% edb edge/2\n"
      "path(X,Y) :- edge(X,Y).\n"
      "path(X,Z) :- edge(X,Y), path(Y,Z).\n");
}

Query chain_query() { return parse_query("?- path(0,A)."); }

namespace {

std::string opt(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : ""; }

std::string ms(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

const std::vector<std::string> kColumns = {"engine", "n", "answers_count", "facts_derived", "sld_nodes", "wall_time_ms"};

std::vector<std::string> cells(const BenchRow& r) {
  return {to_string(r.engine), std::to_string(r.n), std::to_string(r.answers_count),
          opt(r.facts_derived), opt(r.sld_nodes), ms(r.wall_time_ms)};
}

}  // namespace

std::string BenchReport::table() const {
  std::vector<std::vector<std::string>> grid{kColumns};
  for (const auto& r : rows) grid.push_back(cells(r));
  std::vector<std::size_t> width(kColumns.size(), 0);
  for (const auto& line : grid)
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  std::string out;
  for (const auto& line : grid) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      // engine left-aligned, numbers right-aligned
      const auto pad = std::string(width[c] - line[c].size(), ' ');
      out += c == 0 ? line[c] + pad : pad + line[c];
      out += c + 1 < line.size() ? "  " : "\n";
    }
  }
  return out;
}

std::string BenchReport::csv() const {
  std::string out;
  for (std::size_t c = 0; c < kColumns.size(); ++c) out += (c ? "," : "") + kColumns[c];
  out += "\n";
  for (const auto& r : rows) {
    auto line = cells(r);
    for (std::size_t c = 0; c < line.size(); ++c) out += (c ? "," : "") + line[c];
    out += "\n";
  }
  return out;
}

BenchReport bench(const Program& program, const Query& query, const std::vector<Engine>& engines,
                  const std::vector<std::size_t>& ns, const EngineOptions& options) {
  BenchReport report;
  for (auto n : ns) {
    const Database db = generate_chain(n);
    std::optional<EngineResult> reference;
    for (auto e : engines) {
      const auto start = std::chrono::steady_clock::now();
      auto result = run_engine(e, program, db, query, options);
      const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
      if (reference && result.answers != reference->answers)
        throw EngineDisagreement("engines " + to_string(reference->engine) + " and " + to_string(e) + " disagree at n=" +
                                 std::to_string(n) + ": " + std::to_string(reference->answers.size()) + " vs " +
                                 std::to_string(result.answers.size()) + " answers");
      report.rows.push_back({e, n, result.answers.size(), result.facts_derived, result.sld_nodes, elapsed.count()});
      if (!reference) reference = std::move(result);
    }
  }
  return report;
}

}  // namespace slddb
