#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slddb/analysis.hpp"
#include "slddb/bench.hpp"
#include "slddb/compiler.hpp"
#include "slddb/engines.hpp"
#include "slddb/magic.hpp"
#include "slddb/parser.hpp"

namespace {

using namespace slddb;

constexpr int kOk = 0;
constexpr int kDiagnostics = 1;
constexpr int kUsage = 2;

// Thrown for problems with the invocation itself (unreadable files, bad flag
// values); reported with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Program load_program(const std::string& path) {
  try {
    return parse_program(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.what(),
                     e.line(), e.column());
  }
}

bool report(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags) std::cout << to_string(d) << "\n";
  return diags.empty();
}

void print_answers(const std::vector<Tuple>& answers) {
  for (const auto& t : answers) std::cout << to_string(t) << "\n";
}

std::size_t default_max_states() {
  if (const char* env = std::getenv("SLDDB_MAX_STATES")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("SLDDB_MAX_STATES is not a number: ") + env);
    }
  }
  return ExploreLimits{}.max_states;
}

Granularity parse_granularity(const std::string& s) {
  if (s == "max" || s == "maximal") return Granularity::Maximal;
  if (s == "single") return Granularity::SingleGoal;
  throw UsageError("unknown granularity: " + s);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

struct Options {
  std::string program, facts, query, granularity = "max", emit = "rules", engine, engines = "sld,slddb,magic", ns = "3,10";
  std::vector<std::string> facts_csv;
  std::size_t max_depth = SldLimits{}.max_depth, max_nodes = SldLimits{}.max_nodes;
  std::size_t max_states = 0, closure_bound = ExploreLimits{}.closure_bound, max_cases = ExploreLimits{}.max_cases;
  bool stats = false, loop_check = false, force = false, csv = false;
};

ExploreLimits explore_limits(const Options& o) {
  ExploreLimits l;
  l.max_states = o.max_states ? o.max_states : default_max_states();
  l.closure_bound = o.closure_bound;
  l.max_cases = o.max_cases;
  l.force = o.force;
  return l;
}

// Program, query and database with all checks done; false when diagnostics
// were printed.
bool load_inputs(const Options& o, Program& program, Query& query, Database* db) {
  program = load_program(o.program);
  if (!report(validate(program))) return false;
  query = parse_query(o.query);
  if (!report(validate_query(program, query))) return false;
  if (db) {
    if (!o.facts.empty()) *db = parse_facts(read_file(o.facts), program);
    for (const auto& spec : o.facts_csv) {
      const auto colon = spec.find(':');
      if (colon == std::string::npos) throw UsageError("--facts-csv expects pred:file, got " + spec);
      const auto name = spec.substr(0, colon);
      Predicate pred{};
      bool found = false;
      for (auto p : program.edb)
        if (p.name_text() == name) pred = p, found = true;
      if (!found) throw Error("--facts-csv: " + name + " is not an EDB predicate of the program");
      load_csv(read_file(spec.substr(colon + 1)), pred, *db);
    }
  }
  return true;
}

int cmd_check(const Options& o) {
  auto program = load_program(o.program);
  if (!report(validate(program))) return kDiagnostics;
  std::cout << "ok\n";
  return kOk;
}

int cmd_sld(const Options& o) {
  Program program;
  Query query;
  Database db;
  if (!load_inputs(o, program, query, &db)) return kDiagnostics;
  SldLimits limits{o.max_depth, o.max_nodes, o.loop_check, false};
  auto tree = build_tree(program, db, query, limits);
  print_answers(tree.answers);
  if (o.stats) {
    std::cout << "node_count=" << tree.node_count << "\n";
    std::cout << "max_depth=" << tree.max_depth_reached << "\n";
    std::cout << "truncated=" << to_string(tree.truncated) << "\n";
  } else if (tree.truncated != Truncation::None) {
    std::cerr << "warning: tree truncated (" << to_string(tree.truncated) << ")\n";
  }
  return kOk;
}

int cmd_compile(const Options& o) {
  Program program;
  Query query;
  if (!load_inputs(o, program, query, nullptr)) return kDiagnostics;
  if (o.emit == "magic") {
    std::cout << to_string(magic_transform(program, query).program);
    return kOk;
  }
  if (o.emit != "rules" && o.emit != "dot") throw UsageError("unknown --emit value: " + o.emit);
  auto system = explore(program, query, parse_granularity(o.granularity), explore_limits(o));
  if (o.emit == "dot")
    std::cout << export_dot(system);
  else
    std::cout << to_string(emit_rules(system).program);
  return kOk;
}

int cmd_run(const Options& o) {
  auto engine = parse_engine(o.engine);
  if (!engine) throw UsageError("unknown engine: " + o.engine);
  Program program;
  Query query;
  Database db;
  if (!load_inputs(o, program, query, &db)) return kDiagnostics;
  EngineOptions options;
  options.sld.max_depth = o.max_depth;
  options.sld.max_nodes = o.max_nodes;
  options.sld.loop_check = o.loop_check;
  options.explore = explore_limits(o);
  auto result = run_engine(*engine, program, db, query, options);
  print_answers(result.answers);
  if (o.stats) std::cout << result.stats;
  return kOk;
}

int cmd_bench(const Options& o) {
  Program program;
  Query query;
  if (o.program == "chain") {
    program = chain_program();
    query = chain_query();
  } else {
    if (o.query.empty()) throw UsageError("bench on a program file needs --query");
    if (!load_inputs(o, program, query, nullptr)) return kDiagnostics;
  }
  std::vector<Engine> engines;
  for (const auto& name : split(o.engines, ',')) {
    auto e = parse_engine(name);
    if (!e) throw UsageError("unknown engine: " + name);
    engines.push_back(*e);
  }
  std::vector<std::size_t> ns;
  for (const auto& v : split(o.ns, ',')) {
    std::size_t pos = 0;
    unsigned long long n = 0;
    try {
      n = std::stoull(v, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != v.size() || n == 0) throw UsageError("--n expects positive integers, got " + v);
    ns.push_back(n);
  }
  EngineOptions options;
  options.sld.loop_check = o.loop_check;
  options.explore = explore_limits(o);
  auto report = bench(program, query, engines, ns, options);
  std::cout << (o.csv ? report.csv() : report.table());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SLD-driven Datalog compiler and evaluators", "slddb"};
  app.require_subcommand(1);
  Options o;

  auto* check = app.add_subcommand("check", "Validate a program");
  check->add_option("PROGRAM", o.program)->required();

  auto add_query = [&](CLI::App* c, bool required) {
    auto* q = c->add_option("--query,-q", o.query, "Query, e.g. \"?- path(0,A).\"");
    if (required) q->required();
  };
  auto add_facts = [&](CLI::App* c) {
    c->add_option("--facts,-f", o.facts, "Ground facts, one atom per line");
    c->add_option("--facts-csv", o.facts_csv, "pred:file with headerless CSV rows")->take_all();
  };
  auto add_explore = [&](CLI::App* c) {
    c->add_option("--max-states", o.max_states, "State limit (default 10000 or $SLDDB_MAX_STATES)");
    c->add_option("--closure-bound", o.closure_bound, "Goal limit for one closure");
    c->add_option("--max-cases", o.max_cases, "Parameter cases tried per successor computation");
    c->add_flag("--force", o.force, "Maximal granularity even if closures may diverge");
  };

  auto* sld = app.add_subcommand("sld", "Answers by SLD resolution");
  sld->add_option("PROGRAM", o.program)->required();
  add_facts(sld);
  add_query(sld, true);
  sld->add_option("--max-depth", o.max_depth);
  sld->add_option("--max-nodes", o.max_nodes);
  sld->add_flag("--stats", o.stats);
  sld->add_flag("--loop-check", o.loop_check, "Prune goals that are variants of an ancestor");

  auto* compile = app.add_subcommand("compile", "Compile a program and query to bottom-up rules");
  compile->add_option("PROGRAM", o.program)->required();
  add_query(compile, true);
  compile->add_option("--granularity", o.granularity)->check(CLI::IsMember({"single", "max", "maximal"}));
  compile->add_option("--emit", o.emit)->check(CLI::IsMember({"rules", "dot", "magic"}));
  add_explore(compile);

  auto* run = app.add_subcommand("run", "Evaluate a query with one engine");
  run->add_option("PROGRAM", o.program)->required();
  add_facts(run);
  add_query(run, true);
  run->add_option("--engine,-e", o.engine)
      ->required()
      ->check(CLI::IsMember({"sld", "slddb", "slddb-single", "magic", "naive"}));
  run->add_flag("--stats", o.stats);
  run->add_option("--max-depth", o.max_depth);
  run->add_option("--max-nodes", o.max_nodes);
  run->add_flag("--loop-check", o.loop_check);
  add_explore(run);

  auto* benchc = app.add_subcommand("bench", "Compare engines on chain databases");
  benchc->add_option("PROGRAM", o.program, "\"chain\" or a program over edge/2")->required();
  add_query(benchc, false);
  benchc->add_option("--n", o.ns, "Comma-separated chain lengths");
  benchc->add_option("--engines", o.engines, "Comma-separated engines");
  benchc->add_flag("--csv", o.csv);
  benchc->add_flag("--loop-check", o.loop_check);
  add_explore(benchc);

  auto* version = app.add_subcommand("version", "Print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*version) {
      std::cout << "slddb " << SLDDB_VERSION << "\n";
      return kOk;
    }
    if (*check) return cmd_check(o);
    if (*sld) return cmd_sld(o);
    if (*compile) return cmd_compile(o);
    if (*run) return cmd_run(o);
    if (*benchc) return cmd_bench(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDiagnostics;
  }
  return kUsage;
}
