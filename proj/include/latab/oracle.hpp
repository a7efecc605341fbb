#ifndef LATAB_ORACLE_HPP
#define LATAB_ORACLE_HPP

#include <cstddef>
#include <cstdint>
#include <future>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "latab/formula.hpp"
#include "latab/lattice.hpp"

namespace latab {

using Valuation = std::map<std::string, Element>;

class MissingBinding : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class VariableLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Homomorphic evaluation: & is meet, | is join, ~ is the lattice negation.
inline Element eval(const Lattice& l, const Valuation& v, const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Var: {
      auto it = v.find(f.name());
      if (it == v.end()) throw MissingBinding("no value for variable '" + f.name() + "'");
      if (!l.contains(it->second))
        throw UnknownElement("value of '" + f.name() + "' is not in lattice " + l.id());
      return it->second;
    }
    case Formula::Kind::Neg: return l.neg(eval(l, v, f.inner()));
    case Formula::Kind::And: return l.meet(eval(l, v, f.left()), eval(l, v, f.right()));
    case Formula::Kind::Or: return l.join(eval(l, v, f.left()), eval(l, v, f.right()));
  }
  return Element::bot();
}

/// True when v refutes s in m: ETL needs v(premise)=Top and v(conclusion)!=Top,
/// NFL needs v(premise)!=Bot and v(conclusion)=Bot.
inline bool refutes(const Matrix& m, const Valuation& v, const Sequent& s) {
  return m.designated(eval(*m.lattice, v, s.premise)) &&
         !m.designated(eval(*m.lattice, v, s.conclusion));
}

struct Verdict {
  bool valid = true;
  std::optional<Valuation> countermodel;
  std::uint64_t examined = 0;
};

namespace detail {

/// Straight-line program over carrier positions; one slot per distinct subformula.
class CompiledSequent {
 public:
  CompiledSequent(const Lattice& l, const Sequent& s) : l_(l), vars_(variables(s)) {
    std::unordered_map<std::string, std::size_t> var_slot;
    for (std::size_t i = 0; i < vars_.size(); ++i) var_slot[vars_[i]] = i;
    std::unordered_map<Formula, std::size_t, FormulaHash> slot;
    auto add = [&](const Formula& root) {
      for (const Formula& g : subformulas(root)) {
        if (slot.contains(g)) continue;
        Op op{g.kind(), 0, 0};
        switch (g.kind()) {
          case Formula::Kind::Var: op.a = var_slot.at(g.name()); break;
          case Formula::Kind::Neg: op.a = slot.at(g.inner()); break;
          default: op.a = slot.at(g.left()); op.b = slot.at(g.right()); break;
        }
        slot[g] = ops_.size();
        ops_.push_back(op);
      }
      return slot.at(root);
    };
    premise_ = add(s.premise);
    conclusion_ = add(s.conclusion);
    values_.resize(ops_.size());
  }

  const std::vector<std::string>& vars() const { return vars_; }

  void run(const std::vector<std::size_t>& assignment) {
    for (std::size_t i = 0; i < ops_.size(); ++i) {
      const Op& op = ops_[i];
      switch (op.kind) {
        case Formula::Kind::Var: values_[i] = assignment[op.a]; break;
        case Formula::Kind::Neg: values_[i] = l_.neg_index(values_[op.a]); break;
        case Formula::Kind::And: values_[i] = l_.meet_index(values_[op.a], values_[op.b]); break;
        case Formula::Kind::Or: values_[i] = l_.join_index(values_[op.a], values_[op.b]); break;
      }
    }
  }
  std::size_t premise() const { return values_[premise_]; }
  std::size_t conclusion() const { return values_[conclusion_]; }

 private:
  struct Op {
    Formula::Kind kind;
    std::size_t a, b;
  };
  const Lattice& l_;
  std::vector<std::string> vars_;
  std::vector<Op> ops_;
  std::vector<std::size_t> values_;
  std::size_t premise_ = 0, conclusion_ = 0;
};

}  // namespace detail

inline constexpr std::size_t kDefaultVariableCap = 8;

/// Brute-force matrix entailment. Valuations are enumerated with variables in
/// lexicographic order (first variable most significant) and values in carrier
/// order; the first refutation found is returned.
inline Verdict entails(const Matrix& m, const Sequent& s,
                       std::size_t variable_cap = kDefaultVariableCap) {
  const Lattice& l = *m.lattice;
  if (!l.is_finite())
    throw std::invalid_argument("the oracle needs a finite lattice; use the tableau prover for " +
                                l.id());
  if (!l.has_negation())
    throw std::invalid_argument("lattice " + l.id() + " has no negation installed");
  detail::CompiledSequent prog(l, s);
  const std::size_t k = prog.vars().size();
  if (k > variable_cap)
    throw VariableLimitExceeded("sequent has " + std::to_string(k) + " variables; cap is " +
                                std::to_string(variable_cap));
  const std::size_t top = l.top_index(), bot = l.bot_index();
  const bool etl = m.logic == Logic::ETL;
  std::vector<std::size_t> a(k, 0);
  Verdict out;
  for (;;) {
    prog.run(a);
    ++out.examined;
    const std::size_t pv = prog.premise(), cv = prog.conclusion();
    const bool refuted = etl ? (pv == top && cv != top) : (pv != bot && cv == bot);
    if (refuted) {
      Valuation v;
      for (std::size_t i = 0; i < k; ++i) v[prog.vars()[i]] = l.carrier()[a[i]];
      if (!refutes(m, v, s)) throw std::logic_error("oracle countermodel failed self-check");
      out.valid = false;
      out.countermodel = std::move(v);
      return out;
    }
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++a[i] < l.size()) break;
      a[i] = 0;
      if (i == 0) return out;
    }
    if (k == 0) return out;
  }
}

/// Runs `entails` for each matrix; results come back in input order.
inline std::vector<Verdict> entails_all(const std::vector<Matrix>& ms, const Sequent& s,
                                        std::size_t variable_cap = kDefaultVariableCap,
                                        bool concurrent = false) {
  std::vector<Verdict> out;
  if (!concurrent) {
    for (const Matrix& m : ms) out.push_back(entails(m, s, variable_cap));
    return out;
  }
  std::vector<std::future<Verdict>> jobs;
  for (const Matrix& m : ms)
    jobs.push_back(std::async(std::launch::async, [&m, &s, variable_cap] {
      return entails(m, s, variable_cap);
    }));
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

}  // namespace latab

#endif  // LATAB_ORACLE_HPP
