#include "slddb/conditions.hpp"

namespace slddb {

namespace {

std::pair<Term, Term> ordered(Term a, Term b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

}  // namespace

Term ConditionConjunction::representative(Term t) const {
  if (!t.is_parameter()) return t;
  auto it = parent_.find(t.id);
  return it == parent_.end() ? t : it->second;
}

Truth ConditionConjunction::equal(Term a, Term b) const {
  const Term ra = representative(a);
  const Term rb = representative(b);
  if (ra == rb) return Truth::True;
  if (ra.is_constant() && rb.is_constant()) return Truth::False;
  if (unequal_.contains(ordered(ra, rb))) return Truth::False;
  return Truth::Unknown;
}

bool ConditionConjunction::add_equal(Term a, Term b) {
  const Term ra = representative(a);
  const Term rb = representative(b);
  if (ra == rb) return true;
  if (ra.is_constant() && rb.is_constant()) return false;
  if (unequal_.contains(ordered(ra, rb))) return false;

  // Constants win; otherwise the smaller parameter index.
  Term winner = ra, loser = rb;
  if (rb.is_constant() || (!ra.is_constant() && rb.id < ra.id)) std::swap(winner, loser);

  ConditionConjunction next = *this;
  for (auto& [p, rep] : next.parent_)
    if (rep == loser) rep = winner;
  next.parent_[loser.id] = winner;

  next.unequal_.clear();
  for (auto [x, y] : unequal_) {
    if (x == loser) x = winner;
    if (y == loser) y = winner;
    if (x == y) return false;
    if (x.is_constant() && y.is_constant()) continue;
    next.unequal_.insert(ordered(x, y));
  }
  *this = std::move(next);
  return true;
}

bool ConditionConjunction::add_unequal(Term a, Term b) {
  const Term ra = representative(a);
  const Term rb = representative(b);
  if (ra == rb) return false;
  if (ra.is_constant() && rb.is_constant()) return true;
  unequal_.insert(ordered(ra, rb));
  return true;
}

std::vector<std::pair<Term, Term>> ConditionConjunction::equalities() const {
  std::vector<std::pair<Term, Term>> out;
  for (const auto& [p, rep] : parent_) out.emplace_back(Term::parameter(p), rep);
  return out;
}

std::vector<std::pair<Term, Term>> ConditionConjunction::disequalities() const {
  return {unequal_.begin(), unequal_.end()};
}

std::string to_string(const ConditionConjunction& c) {
  std::string out;
  auto sep = [&] {
    if (!out.empty()) out += ", ";
  };
  for (const auto& [p, rep] : c.equalities()) {
    sep();
    out += to_string(p) + " = " + to_string(rep);
  }
  for (const auto& [a, b] : c.disequalities()) {
    sep();
    // parameter on the left when the other side is a constant
    out += b.is_parameter() && !a.is_parameter() ? to_string(b) + " != " + to_string(a)
                                                 : to_string(a) + " != " + to_string(b);
  }
  return out.empty() ? "true" : out;
}

}  // namespace slddb
