#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "slddb/program.hpp"

namespace slddb {

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct ParseOptions {
  // Read V<n> / C<n> as normalized variables / parameters instead of
  // rejecting them as reserved names.
  bool internal_terms = false;
  // Accept the `answer` predicate and `X != Y` body conditions, as printed
  // for compiled rules.
  bool extended = false;
};

// program := (directive | rule)* ; directive := "% edb" name "/" integer
Program parse_program(std::string_view text, const ParseOptions& options = {});

// "?- a(X), b(X,Y)." The leading "?-" and the final "." are optional.
Query parse_query(std::string_view text, const ParseOptions& options = {});

// One ground atom per line, each terminated by ".". Every predicate must be
// declared EDB in `program` with the same arity.
Database parse_facts(std::string_view text, const Program& program);

// Headerless CSV rows for one EDB predicate; values are constants.
void load_csv(std::string_view text, Predicate pred, Database& db);

// Conjunction of atoms without a terminating dot. Internal terms allowed.
Goal parse_goal(std::string_view text);
Literal parse_literal(std::string_view text, const ParseOptions& options = {.internal_terms = true, .extended = true});

// Printed form of a constant read from a fact file or CSV cell.
Term parse_constant(std::string_view text);

}  // namespace slddb
