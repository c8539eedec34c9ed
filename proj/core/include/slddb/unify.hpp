#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "slddb/conditions.hpp"
#include "slddb/program.hpp"
#include "slddb/term.hpp"

namespace slddb {

// Finite map from variables to terms. Terms are flat (no function symbols),
// so unification needs no occurs-check.
class Substitution {
 public:
  Substitution() = default;
  Substitution(std::initializer_list<std::pair<Term, Term>> bindings);

  // Follows binding chains to the final image.
  Term resolve(Term t) const;
  std::optional<Term> lookup(Term var) const;
  void bind(Term var, Term value);

  // Rewrites every image to its final form so applying once suffices.
  void make_idempotent();

  Term apply(Term t) const { return resolve(t); }
  Literal apply(const Literal& lit) const;
  Goal apply(const Goal& goal) const;

  const std::vector<std::pair<Term, Term>>& bindings() const { return bindings_; }
  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }

  // Equal as maps.
  friend bool operator==(const Substitution& a, const Substitution& b);

 private:
  std::vector<std::pair<Term, Term>> bindings_;
};

std::string to_string(const Substitution& s);  // {X/0, A/Y}

// Most general unifier of two literals sharing no variables. When both sides
// are variables the one from `a` is bound. Parameters must not occur.
std::optional<Substitution> mgu(const Literal& a, const Literal& b);

// Parameter-aware unification. Variables meeting a parameter are bound to
// it; parameter/parameter and parameter/constant pairs become equality
// conditions instead of bindings. `equalities` lists the conditions in the
// order they arose, `conditions` their (consistent) conjunction.
struct ParamUnifier {
  Substitution subst;
  ConditionConjunction conditions;
  std::vector<std::pair<Term, Term>> equalities;
};

std::optional<ParamUnifier> param_unify(const Literal& a, const Literal& b);

// Renames variables (not parameters) to V1, V2, ... by first occurrence.
Goal normalize(const Goal& goal);

// Equal after normalization; parameters are rigid.
bool variant(const Goal& a, const Goal& b);

// Copy of `rule` with its variables replaced by Fresh terms numbered from
// `next_fresh`, which is advanced past the ones used.
Rule rename_apart(const Rule& rule, std::uint32_t& next_fresh);

}  // namespace slddb
