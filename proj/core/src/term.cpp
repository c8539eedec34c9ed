#include "slddb/term.hpp"

#include <charconv>
#include <deque>
#include <mutex>
#include <optional>
#include <unordered_map>

namespace slddb {

namespace {

struct SymbolTable {
  std::mutex mu;
  std::deque<std::string> texts;
  std::unordered_map<std::string_view, std::uint32_t> ids;
};

SymbolTable& table() {
  static SymbolTable t;
  return t;
}

std::optional<long long> as_integer(std::string_view s) {
  if (s.empty()) return std::nullopt;
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::uint32_t Symbol::intern(std::string_view text) {
  auto& t = table();
  std::lock_guard lock(t.mu);
  if (auto it = t.ids.find(text); it != t.ids.end()) return it->second;
  const auto id = static_cast<std::uint32_t>(t.texts.size());
  t.texts.emplace_back(text);
  t.ids.emplace(t.texts.back(), id);
  return id;
}

std::string_view Symbol::text(std::uint32_t id) {
  auto& t = table();
  std::lock_guard lock(t.mu);
  return t.texts.at(id);
}

Term Term::integer(long long value) { return constant(std::to_string(value)); }

std::string to_string(Term t) {
  switch (t.kind) {
    case TermKind::Constant:
    case TermKind::Variable:
      return std::string(Symbol::text(t.id));
    case TermKind::Normalized:
      return "V" + std::to_string(t.id);
    case TermKind::Parameter:
      return "C" + std::to_string(t.id);
    case TermKind::Fresh:
      return "_G" + std::to_string(t.id);
  }
  return "?";
}

bool constant_less(Term a, Term b) {
  if (a == b) return false;
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.kind != TermKind::Constant) return a.id < b.id;
  auto ta = Symbol::text(a.id);
  auto tb = Symbol::text(b.id);
  auto ia = as_integer(ta);
  auto ib = as_integer(tb);
  if (ia && ib) return *ia < *ib;
  if (ia.has_value() != ib.has_value()) return ia.has_value();
  return ta < tb;
}

bool operator<(Predicate a, Predicate b) {
  if (a.name == b.name) return a.arity < b.arity;
  auto ta = Symbol::text(a.name);
  auto tb = Symbol::text(b.name);
  if (ta != tb) return ta < tb;
  return a.arity < b.arity;
}

std::string to_string(Predicate p) {
  return std::string(p.name_text()) + "/" + std::to_string(p.arity);
}

bool Literal::is_ground() const {
  for (auto t : args)
    if (!t.is_constant()) return false;
  return true;
}

std::string to_string(const Literal& lit) {
  std::string out(lit.pred.name_text());
  if (lit.args.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < lit.args.size(); ++i) {
    if (i) out += ',';
    out += to_string(lit.args[i]);
  }
  out += ')';
  return out;
}

std::string to_string(const Goal& g) {
  std::string out;
  for (std::size_t i = 0; i < g.literals.size(); ++i) {
    if (i) out += ", ";
    out += to_string(g.literals[i]);
  }
  return out;
}

bool tuple_less(const Tuple& a, const Tuple& b) {
  const auto n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (constant_less(a[i], b[i])) return true;
    if (constant_less(b[i], a[i])) return false;
  }
  return a.size() < b.size();
}

std::string to_string(const Tuple& t) {
  if (t.empty()) return "true";
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ',';
    out += to_string(t[i]);
  }
  return out;
}

Predicate answer_predicate(std::uint32_t arity) { return Predicate::of("answer", arity); }

bool is_answer(Predicate p) {
  static const std::uint32_t answer_name = Symbol::intern("answer");
  return p.name == answer_name;
}

}  // namespace slddb
