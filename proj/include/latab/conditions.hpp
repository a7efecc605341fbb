#ifndef LATAB_CONDITIONS_HPP
#define LATAB_CONDITIONS_HPP

#include <array>
#include <string>
#include <vector>

#include "latab/formula.hpp"
#include "latab/lattice.hpp"
#include "latab/oracle.hpp"

namespace latab {

struct ConditionResult {
  bool passed = true;
  std::string witness;  // first failing instance, empty when passed
};

/// Outcome of the five ETL/NFL-likeness conditions for one matrix:
///   1 De Morgan and double negation as element identities
///   2 a | ~a = Top only for a in {Top, Bot}
///   3 explosion (ETL) / excluded middle (NFL) is valid
///   4 excluded middle (ETL) / explosion (NFL) is not valid
///   5 disjunctive syllogism (ETL) / its dual (NFL) is valid
struct ConditionReport {
  std::string matrix;
  std::array<ConditionResult, 5> items;

  bool all_passed() const {
    for (const auto& i : items)
      if (!i.passed) return false;
    return true;
  }
};

/// Schema instances on the variables p, q used for conditions 3-5.
struct ConditionSchemas {
  Sequent valid_explosion;       // item 3
  Sequent invalid_explosion;     // item 4
  Sequent syllogism;             // item 5
};

inline ConditionSchemas condition_schemas(Logic logic) {
  Formula p = var("p"), q = var("q");
  if (logic == Logic::ETL)
    return {{p & ~p, q}, {p, q | ~q}, {~p & (p | q), q}};
  return {{p, q | ~q}, {p & ~p, q}, {p, ~q | (q & p)}};
}

inline ConditionReport check_like_conditions(const Matrix& m) {
  const Lattice& l = *m.lattice;
  if (!l.is_finite())
    throw std::invalid_argument("check_like_conditions needs a finite lattice");
  if (!l.has_negation())
    throw std::invalid_argument("lattice " + l.id() + " has no negation installed");
  ConditionReport r;
  r.matrix = m.id();
  const auto& c = l.carrier();

  for (Element a : c) {
    if (l.neg(l.neg(a)) != a) {
      r.items[0] = {false, "~~" + l.name(a) + " = " + l.name(l.neg(l.neg(a)))};
      break;
    }
  }
  if (r.items[0].passed) {
    for (Element a : c) {
      for (Element b : c) {
        if (l.neg(l.meet(a, b)) != l.join(l.neg(a), l.neg(b))) {
          r.items[0] = {false, "~(" + l.name(a) + " & " + l.name(b) + ") != ~" + l.name(a) +
                                   " | ~" + l.name(b)};
          break;
        }
        if (l.neg(l.join(a, b)) != l.meet(l.neg(a), l.neg(b))) {
          r.items[0] = {false, "~(" + l.name(a) + " | " + l.name(b) + ") != ~" + l.name(a) +
                                   " & ~" + l.name(b)};
          break;
        }
      }
      if (!r.items[0].passed) break;
    }
  }

  for (Element a : c) {
    if (l.join(a, l.neg(a)).is_top() && a.is_mid()) {
      r.items[1] = {false, l.name(a) + " | ~" + l.name(a) + " = " + l.name(Element::top())};
      break;
    }
  }

  auto describe = [&](const Sequent& s, const Verdict& v) {
    std::string w = render(s);
    if (v.countermodel) {
      w += " refuted by";
      for (const auto& [x, e] : *v.countermodel) w += " " + x + "=" + l.name(e);
    } else {
      w += " is valid";
    }
    return w;
  };
  const ConditionSchemas sch = condition_schemas(m.logic);
  if (Verdict v = entails(m, sch.valid_explosion); !v.valid)
    r.items[2] = {false, describe(sch.valid_explosion, v)};
  if (Verdict v = entails(m, sch.invalid_explosion); v.valid)
    r.items[3] = {false, describe(sch.invalid_explosion, v)};
  if (Verdict v = entails(m, sch.syllogism); !v.valid)
    r.items[4] = {false, describe(sch.syllogism, v)};
  return r;
}

}  // namespace latab

#endif  // LATAB_CONDITIONS_HPP
