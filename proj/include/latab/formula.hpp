#ifndef LATAB_FORMULA_HPP
#define LATAB_FORMULA_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace latab {

/// Propositional formula over {~, &, |}. Immutable; copies share structure.
class Formula {
 public:
  enum class Kind : std::uint8_t { Var, Neg, And, Or };

  static Formula var(std::string name);
  static Formula neg(Formula inner);
  static Formula conj(Formula left, Formula right);
  static Formula disj(Formula left, Formula right);

  Kind kind() const noexcept;
  bool is_var() const noexcept { return kind() == Kind::Var; }
  bool is_binary() const noexcept { return kind() == Kind::And || kind() == Kind::Or; }

  /// Variable name; empty for compound formulas.
  const std::string& name() const noexcept;
  /// Operand of a negation.
  const Formula& inner() const;
  const Formula& left() const;
  const Formula& right() const;

  std::size_t size() const noexcept;
  std::size_t depth() const noexcept;
  std::size_t hash() const noexcept;

  friend bool operator==(const Formula& a, const Formula& b) noexcept;
  friend bool operator!=(const Formula& a, const Formula& b) noexcept { return !(a == b); }
  /// Structural total order (kind, then name, then children).
  friend bool operator<(const Formula& a, const Formula& b) noexcept;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Kind kind;
  std::string name;
  Formula a;  // Neg operand, or left
  Formula b;  // right
  std::size_t size;
  std::size_t depth;
  std::size_t hash;
};

inline Formula::Kind Formula::kind() const noexcept { return node_->kind; }
inline const std::string& Formula::name() const noexcept { return node_->name; }
inline std::size_t Formula::size() const noexcept { return node_->size; }
inline std::size_t Formula::depth() const noexcept { return node_->depth; }
inline std::size_t Formula::hash() const noexcept { return node_->hash; }

inline const Formula& Formula::inner() const {
  if (kind() != Kind::Neg) throw std::logic_error("inner() on a non-negation");
  return node_->a;
}
inline const Formula& Formula::left() const {
  if (!is_binary()) throw std::logic_error("left() on a non-binary formula");
  return node_->a;
}
inline const Formula& Formula::right() const {
  if (!is_binary()) throw std::logic_error("right() on a non-binary formula");
  return node_->b;
}

namespace detail {
inline std::size_t mix_hash(std::size_t seed, std::size_t v) noexcept {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

inline bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(s.front())) return false;
  for (char c : s)
    if (!alpha(c) && !digit(c) && c != '_') return false;
  return true;
}
}  // namespace detail

inline Formula Formula::var(std::string name) {
  if (!detail::valid_identifier(name))
    throw std::invalid_argument("invalid variable name '" + name + "'");
  std::size_t h = detail::mix_hash(1, std::hash<std::string>{}(name));
  auto n = std::make_shared<Node>(Node{Kind::Var, std::move(name), Formula{nullptr},
                                       Formula{nullptr}, 1, 0, h});
  return Formula(std::move(n));
}

inline Formula Formula::neg(Formula inner) {
  std::size_t h = detail::mix_hash(2, inner.hash());
  std::size_t sz = inner.size() + 1, d = inner.depth() + 1;
  return Formula(std::make_shared<Node>(
      Node{Kind::Neg, {}, std::move(inner), Formula{nullptr}, sz, d, h}));
}

inline Formula Formula::conj(Formula left, Formula right) {
  std::size_t h = detail::mix_hash(detail::mix_hash(3, left.hash()), right.hash());
  std::size_t sz = left.size() + right.size() + 1;
  std::size_t d = std::max(left.depth(), right.depth()) + 1;
  return Formula(std::make_shared<Node>(
      Node{Kind::And, {}, std::move(left), std::move(right), sz, d, h}));
}

inline Formula Formula::disj(Formula left, Formula right) {
  std::size_t h = detail::mix_hash(detail::mix_hash(4, left.hash()), right.hash());
  std::size_t sz = left.size() + right.size() + 1;
  std::size_t d = std::max(left.depth(), right.depth()) + 1;
  return Formula(std::make_shared<Node>(
      Node{Kind::Or, {}, std::move(left), std::move(right), sz, d, h}));
}

inline bool operator==(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case Formula::Kind::Var: return a.name() == b.name();
    case Formula::Kind::Neg: return a.node_->a == b.node_->a;
    default: return a.node_->a == b.node_->a && a.node_->b == b.node_->b;
  }
}

inline bool operator<(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return false;
  if (a.kind() != b.kind()) return a.kind() < b.kind();
  switch (a.kind()) {
    case Formula::Kind::Var: return a.name() < b.name();
    case Formula::Kind::Neg: return a.node_->a < b.node_->a;
    default:
      if (a.node_->a != b.node_->a) return a.node_->a < b.node_->a;
      return a.node_->b < b.node_->b;
  }
}

struct FormulaHash {
  std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

/// Single-premise, single-conclusion consequence `premise |- conclusion`.
struct Sequent {
  Formula premise;
  Formula conclusion;

  friend bool operator==(const Sequent&, const Sequent&) = default;
};

// Shorthands used by generators and tests.
inline Formula var(std::string name) { return Formula::var(std::move(name)); }
inline Formula operator~(const Formula& f) { return Formula::neg(f); }
inline Formula operator&(const Formula& a, const Formula& b) { return Formula::conj(a, b); }
inline Formula operator|(const Formula& a, const Formula& b) { return Formula::disj(a, b); }

namespace detail {
inline int precedence(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Or: return 1;
    case Formula::Kind::And: return 2;
    case Formula::Kind::Neg: return 3;
    case Formula::Kind::Var: return 4;
  }
  return 0;
}

inline void render_into(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Var: out += f.name(); return;
    case Formula::Kind::Neg: {
      out += '~';
      bool paren = f.inner().is_binary();
      if (paren) out += '(';
      render_into(f.inner(), out);
      if (paren) out += ')';
      return;
    }
    default: {
      int p = precedence(f.kind());
      // Left-associative: the left operand may share the precedence, the right may not.
      bool lp = precedence(f.left().kind()) < p;
      bool rp = precedence(f.right().kind()) <= p;
      if (lp) out += '(';
      render_into(f.left(), out);
      if (lp) out += ')';
      out += f.kind() == Formula::Kind::And ? " & " : " | ";
      if (rp) out += '(';
      render_into(f.right(), out);
      if (rp) out += ')';
    }
  }
}
}  // namespace detail

/// Minimal-parenthesis ASCII rendering; reparses to the same structure.
inline std::string render(const Formula& f) {
  std::string out;
  detail::render_into(f, out);
  return out;
}

inline std::string render(const Sequent& s) {
  return render(s.premise) + " |- " + render(s.conclusion);
}

/// Compact form without spaces; every binary operand of a connective is
/// parenthesised. E.g. "(p1|p2)&(p1|p3)".
inline std::string render_compact(const Formula& f) {
  auto operand = [](const Formula& g) {
    return g.is_binary() ? "(" + render_compact(g) + ")" : render_compact(g);
  };
  switch (f.kind()) {
    case Formula::Kind::Var: return f.name();
    case Formula::Kind::Neg: return "~" + operand(f.inner());
    case Formula::Kind::And: return operand(f.left()) + "&" + operand(f.right());
    case Formula::Kind::Or: return operand(f.left()) + "|" + operand(f.right());
  }
  return {};
}

inline std::string render_compact(const Sequent& s) {
  return render_compact(s.premise) + " |- " + render_compact(s.conclusion);
}

/// All distinct subformulas in post-order (children before parents), f last.
inline std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> out;
  std::unordered_set<Formula, FormulaHash> seen;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (seen.contains(g)) return;
    switch (g.kind()) {
      case Formula::Kind::Var: break;
      case Formula::Kind::Neg: walk(g.inner()); break;
      default: walk(g.left()); walk(g.right()); break;
    }
    seen.insert(g);
    out.push_back(g);
  };
  walk(f);
  return out;
}

inline void collect_variables(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Var: out.insert(f.name()); return;
    case Formula::Kind::Neg: collect_variables(f.inner(), out); return;
    default: collect_variables(f.left(), out); collect_variables(f.right(), out);
  }
}

/// Variable names in lexicographic order.
inline std::vector<std::string> variables(const Formula& f) {
  std::set<std::string> s;
  collect_variables(f, s);
  return {s.begin(), s.end()};
}

inline std::vector<std::string> variables(const Sequent& q) {
  std::set<std::string> s;
  collect_variables(q.premise, s);
  collect_variables(q.conclusion, s);
  return {s.begin(), s.end()};
}

/// Swaps & and |; variables and negation unchanged.
inline Formula dual(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Var: return f;
    case Formula::Kind::Neg: return Formula::neg(dual(f.inner()));
    case Formula::Kind::And: return Formula::disj(dual(f.left()), dual(f.right()));
    case Formula::Kind::Or: return Formula::conj(dual(f.left()), dual(f.right()));
  }
  return f;
}

/// dual(conclusion) |- dual(premise).
inline Sequent dual_sequent(const Sequent& s) {
  return {dual(s.conclusion), dual(s.premise)};
}

/// Uniform substitution of variables by formulas; unmapped variables stay.
template <typename Map>
Formula substitute(const Formula& f, const Map& m) {
  switch (f.kind()) {
    case Formula::Kind::Var: {
      auto it = m.find(f.name());
      return it == m.end() ? f : it->second;
    }
    case Formula::Kind::Neg: return Formula::neg(substitute(f.inner(), m));
    case Formula::Kind::And: return Formula::conj(substitute(f.left(), m), substitute(f.right(), m));
    case Formula::Kind::Or: return Formula::disj(substitute(f.left(), m), substitute(f.right(), m));
  }
  return f;
}

/// Left-associated fold of a nonempty list with a binary connective.
inline Formula fold_left(const std::vector<Formula>& fs, Formula::Kind k) {
  if (fs.empty()) throw std::invalid_argument("fold_left of an empty list");
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i)
    acc = k == Formula::Kind::And ? Formula::conj(acc, fs[i]) : Formula::disj(acc, fs[i]);
  return acc;
}

/// Separation family: conjunction of (p1|pi), i=2..n+1, entails p1 or-ed with
/// (pi & pj) over the 2-subsets {i<j} of {2..n+1}. Valid over Mn, refuted over Mn+1.
inline Sequent gen_dn(int n) {
  if (n < 2) throw std::invalid_argument("gen_dn requires n >= 2");
  auto p = [](int i) { return Formula::var("p" + std::to_string(i)); };
  std::vector<Formula> conjuncts;
  for (int i = 2; i <= n + 1; ++i) conjuncts.push_back(p(1) | p(i));
  std::vector<Formula> pairs;
  for (int i = 2; i <= n + 1; ++i)
    for (int j = i + 1; j <= n + 1; ++j) pairs.push_back(p(i) & p(j));
  return {fold_left(conjuncts, Formula::Kind::And), p(1) | fold_left(pairs, Formula::Kind::Or)};
}

/// Sequent valid over M3 but not over M4.
inline Sequent gen_eq3() {
  Formula p = var("p"), q = var("q"), r = var("r"), s = var("s");
  return {p | (((p | q) | (r & s)) & (r & (q | s))), p | ((q | (r & s)) & (r | (p & s)))};
}

}  // namespace latab

template <>
struct std::hash<latab::Formula> {
  std::size_t operator()(const latab::Formula& f) const noexcept { return f.hash(); }
};

#endif  // LATAB_FORMULA_HPP
