#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace slddb {

// Interned strings shared by predicate names, constants and user variables.
// Ids are stable for the lifetime of the process; the table is thread-safe.
class Symbol {
 public:
  static std::uint32_t intern(std::string_view text);
  static std::string_view text(std::uint32_t id);
};

enum class TermKind : std::uint8_t {
  Constant,    // interned printed form
  Variable,    // user variable, interned name
  Normalized,  // V1, V2, ... produced by normalization
  Parameter,   // C1, C2, ... global to a parameterized state
  Fresh,       // renamed-apart clause variable
};

struct Term {
  TermKind kind = TermKind::Constant;
  std::uint32_t id = 0;

  static Term constant(std::string_view text) { return {TermKind::Constant, Symbol::intern(text)}; }
  static Term integer(long long value);
  static Term variable(std::string_view name) { return {TermKind::Variable, Symbol::intern(name)}; }
  static Term normalized(std::uint32_t index) { return {TermKind::Normalized, index}; }
  static Term parameter(std::uint32_t index) { return {TermKind::Parameter, index}; }
  static Term fresh(std::uint32_t index) { return {TermKind::Fresh, index}; }

  bool is_constant() const { return kind == TermKind::Constant; }
  bool is_parameter() const { return kind == TermKind::Parameter; }
  // Anything that unification may bind. Parameters are rigid.
  bool is_variable() const {
    return kind == TermKind::Variable || kind == TermKind::Normalized || kind == TermKind::Fresh;
  }

  friend bool operator==(Term, Term) = default;
  friend auto operator<=>(Term, Term) = default;
};

std::string to_string(Term t);

// Total order on constants for output: integers numerically first, then
// symbols by their printed form.
bool constant_less(Term a, Term b);

struct Predicate {
  std::uint32_t name = 0;
  std::uint32_t arity = 0;

  static Predicate of(std::string_view name, std::uint32_t arity) { return {Symbol::intern(name), arity}; }
  std::string_view name_text() const { return Symbol::text(name); }

  friend bool operator==(Predicate, Predicate) = default;
  // Ordered by name text, then arity, so iteration order is independent of
  // interning order.
  friend bool operator<(Predicate a, Predicate b);
};

std::string to_string(Predicate p);  // name/arity

struct Literal {
  Predicate pred;
  std::vector<Term> args;

  friend bool operator==(const Literal&, const Literal&) = default;
  bool is_ground() const;
};

std::string to_string(const Literal& lit);

// An ordered conjunction of literals. For SLD goals the last literal is the
// bookkeeping answer literal.
struct Goal {
  std::vector<Literal> literals;

  friend bool operator==(const Goal&, const Goal&) = default;
  bool empty() const { return literals.empty(); }
  std::size_t size() const { return literals.size(); }
  const Literal& first() const { return literals.front(); }
};

std::string to_string(const Goal& g);

using Tuple = std::vector<Term>;

bool tuple_less(const Tuple& a, const Tuple& b);
std::string to_string(const Tuple& t);

// Reserved predicate holding the answer variables of an extended query.
Predicate answer_predicate(std::uint32_t arity);
bool is_answer(Predicate p);

inline void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace slddb

template <>
struct std::hash<slddb::Term> {
  std::size_t operator()(slddb::Term t) const noexcept {
    return (static_cast<std::size_t>(t.kind) << 32) ^ t.id;
  }
};

template <>
struct std::hash<slddb::Predicate> {
  std::size_t operator()(slddb::Predicate p) const noexcept {
    return (static_cast<std::size_t>(p.name) << 16) ^ p.arity;
  }
};

template <>
struct std::hash<slddb::Tuple> {
  std::size_t operator()(const slddb::Tuple& t) const noexcept {
    std::size_t seed = t.size();
    for (auto term : t) slddb::hash_combine(seed, std::hash<slddb::Term>{}(term));
    return seed;
  }
};

template <>
struct std::hash<slddb::Literal> {
  std::size_t operator()(const slddb::Literal& l) const noexcept {
    std::size_t seed = std::hash<slddb::Predicate>{}(l.pred);
    slddb::hash_combine(seed, std::hash<slddb::Tuple>{}(l.args));
    return seed;
  }
};

template <>
struct std::hash<slddb::Goal> {
  std::size_t operator()(const slddb::Goal& g) const noexcept {
    std::size_t seed = g.literals.size();
    for (const auto& l : g.literals) slddb::hash_combine(seed, std::hash<slddb::Literal>{}(l));
    return seed;
  }
};
