#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "slddb/term.hpp"

namespace slddb {

enum class Truth { True, False, Unknown };

// Conjunction of equalities and disequalities over parameters and
// constants. Stored canonically: every parameter maps to the representative
// of its class (the constant of the class if any, otherwise the parameter
// with the smallest index); disequalities relate representatives and are
// kept as ordered pairs. The stored conjunction is always consistent.
class ConditionConjunction {
 public:
  // Both return false, leaving the conjunction unchanged, when the new
  // condition is inconsistent with it.
  bool add_equal(Term a, Term b);
  bool add_unequal(Term a, Term b);

  Term representative(Term t) const;
  Truth equal(Term a, Term b) const;

  // Parameters whose class representative is something else, as
  // (parameter, representative), by parameter index.
  std::vector<std::pair<Term, Term>> equalities() const;
  std::vector<std::pair<Term, Term>> disequalities() const;
  bool empty() const { return parent_.empty() && unequal_.empty(); }

  // Evaluate under a full assignment of constants to the parameters that
  // occur; `value(i)` returns the constant for parameter C_i.
  template <typename Assignment>
  bool satisfied_by(Assignment&& value) const {
    auto ground = [&](Term t) { return t.is_parameter() ? value(t.id) : t; };
    for (const auto& [p, rep] : parent_)
      if (ground(Term::parameter(p)) != ground(rep)) return false;
    for (const auto& [a, b] : unequal_)
      if (ground(a) == ground(b)) return false;
    return true;
  }

  friend bool operator==(const ConditionConjunction&, const ConditionConjunction&) = default;

 private:
  std::map<std::uint32_t, Term> parent_;  // only parameters that are not their own representative
  std::set<std::pair<Term, Term>> unequal_;
};

// "C1 = 0, C2 != C3"; "true" when empty.
std::string to_string(const ConditionConjunction& c);

}  // namespace slddb
