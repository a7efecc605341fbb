#ifndef LATAB_TABLEAU_HPP
#define LATAB_TABLEAU_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "latab/coloring.hpp"
#include "latab/formula.hpp"
#include "latab/lattice.hpp"
#include "latab/oracle.hpp"

namespace latab {

// Labelled tableaux for ETL/NFL-like logics over Mn and Mω.
//
// A labelled formula t[φ], m[φ], f[φ] says v(φ) is Top, some middle element,
// or Bot. A pair φ ~ χ (φ !~ χ) says both are middle-valued with equal
// (distinct) values. Branches are sets; pairs are stored unordered, which
// makes the two symmetry rules implicit.

enum class Label : std::uint8_t { T = 0, M = 1, F = 2 };
enum class Relation : std::uint8_t { Same = 0, Diff = 1 };

inline char to_char(Label l) { return l == Label::T ? 't' : l == Label::M ? 'm' : 'f'; }

struct Item {
  enum class Kind : std::uint8_t { Labelled, Pair };

  Kind kind;
  Label label;        // Labelled only
  Relation relation;  // Pair only
  Formula left;       // the labelled formula, or the first pair member
  Formula right;      // second pair member (== left for labelled items)

  static Item labelled(Label l, Formula f) {
    Formula g = f;
    return {Kind::Labelled, l, Relation::Same, std::move(f), std::move(g)};
  }
  /// Pairs are unordered; members are stored in rendering order.
  static Item pair(Relation r, Formula a, Formula b) {
    if (render(b) < render(a)) std::swap(a, b);
    return pair_ordered(r, std::move(a), std::move(b));
  }
  /// Caller guarantees render(a) <= render(b).
  static Item pair_ordered(Relation r, Formula a, Formula b) {
    return {Kind::Pair, Label::M, r, std::move(a), std::move(b)};
  }

  bool is_pair() const noexcept { return kind == Kind::Pair; }
  const Formula& formula() const noexcept { return left; }

  friend bool operator==(const Item& x, const Item& y) {
    if (x.kind != y.kind) return false;
    if (x.kind == Kind::Labelled) return x.label == y.label && x.left == y.left;
    return x.relation == y.relation && x.left == y.left && x.right == y.right;
  }
};

inline std::string to_string(const Item& i) {
  if (!i.is_pair()) return std::string(1, to_char(i.label)) + "[" + render(i.left) + "]";
  auto side = [](const Formula& f) { return f.is_binary() ? "(" + render(f) + ")" : render(f); };
  return side(i.left) + (i.relation == Relation::Same ? " ~ " : " !~ ") + side(i.right);
}

/// Does v realise the item? Middle means any Mid element.
inline bool realises(const Lattice& l, const Valuation& v, const Item& i) {
  const Element a = eval(l, v, i.left);
  if (!i.is_pair()) {
    switch (i.label) {
      case Label::T: return a.is_top();
      case Label::M: return a.is_mid();
      case Label::F: return a.is_bot();
    }
  }
  const Element b = eval(l, v, i.right);
  if (!a.is_mid() || !b.is_mid()) return false;
  return i.relation == Relation::Same ? a == b : a != b;
}

inline bool realises(const Lattice& l, const Valuation& v, const std::vector<Item>& items) {
  return std::all_of(items.begin(), items.end(),
                     [&](const Item& i) { return realises(l, v, i); });
}

enum class ClosureMode { Paper, Semantic };
enum class Strategy { Greedy, Exact };

inline std::string to_string(ClosureMode m) { return m == ClosureMode::Paper ? "paper" : "semantic"; }
inline std::string to_string(Strategy s) { return s == Strategy::Greedy ? "greedy" : "exact"; }

struct TableauConfig {
  ClosureMode mode = ClosureMode::Semantic;
  /// Number of middle elements n; nullopt stands for ω (no clique closure).
  std::optional<std::uint32_t> capacity = 3;
  /// Generalised transitivity rules on arbitrary formulas.
  bool tr_rules = false;
  /// The ~-pair negation rules (neg-same, neg-diff).
  bool negation_pair_rules = true;
  Strategy strategy = Strategy::Greedy;
  /// Cap on branch items inserted per proof attempt.
  std::size_t item_cap = 1'000'000;
  /// Stop at the first complete open branch that has a countermodel.
  bool stop_at_first_open = true;
  /// Keep rule applications and items in the returned trees. Verdicts and
  /// countermodels are the same either way.
  bool record_tree = true;
};

class ResourceCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RuleDescriptor {
  std::string name;
  std::string premises;
  std::string conclusions;  // alternatives separated by " | "
  std::string guard;
  bool splitting;
  bool enabled;
};

/// The rule set in its fixed order; disabled rules are listed with enabled = false.
inline std::vector<RuleDescriptor> rule_table(const TableauConfig& c) {
  const bool neg = c.negation_pair_rules, tr = c.tr_rules;
  return {
      {"t-and", "t[A & B]", "t[A], t[B]", "", false, true},
      {"t-or", "t[A | B]", "t[A] | t[B] | m[A], m[B], A !~ B", "", true, true},
      {"t-neg", "t[~A]", "f[A]", "", false, true},
      {"m-and", "m[A & B]", "t[A], m[B] | m[A], t[B] | m[A], m[B], A ~ B", "", true, true},
      {"m-or", "m[A | B]", "f[A], m[B] | m[A], f[B] | m[A], m[B], A ~ B", "", true, true},
      {"m-neg", "m[~A]", "m[A], A ~ ~A", "", false, true},
      {"f-and", "f[A & B]", "f[A] | f[B] | m[A], m[B], A !~ B", "", true, true},
      {"f-or", "f[A | B]", "f[A], f[B]", "", false, true},
      {"f-neg", "f[~A]", "t[A]", "", false, true},
      {"same-sym", "A ~ B", "B ~ A", "applied implicitly: pairs are unordered", false, true},
      {"diff-sym", "A !~ B", "B !~ A", "applied implicitly: pairs are unordered", false, true},
      {"same-trans", "p ~ q, q ~ r", "p ~ r", "p, q, r are variables", false, true},
      {"diff-trans", "p !~ q, q ~ r", "p !~ r", "p, q, r are variables", false, true},
      {"neg-same", "~A ~ B", "A ~ B", "", false, neg},
      {"neg-diff", "~A !~ B", "A !~ B", "", false, neg},
      {"op-same", "A ~ B1 o B2, m[Bi]", "A ~ Bi", "o in {&, |}, i in {1, 2}", false, true},
      {"op-diff", "A !~ B1 o B2, m[Bi]", "A !~ Bi", "o in {&, |}, i in {1, 2}", false, true},
      {"same-Tr", "A ~ B, B ~ C", "A ~ C", "any formulas", false, tr},
      {"diff-Tr", "A !~ B, B ~ C", "A !~ C", "any formulas", false, tr},
  };
}

struct ClosureWitness {
  /// "1", "2", "3", "4'" or "semantic".
  std::string condition;
  std::vector<Item> items;
};

enum class NodeStatus { Expanded, Closed, Open, Unexplored };

inline std::string to_string(NodeStatus s) {
  switch (s) {
    case NodeStatus::Expanded: return "expanded";
    case NodeStatus::Closed: return "closed";
    case NodeStatus::Open: return "open";
    case NodeStatus::Unexplored: return "unexplored";
  }
  return "?";
}

/// One rule application: the premises used and the items it added.
struct Step {
  std::string rule;
  std::vector<Item> premises;
  std::vector<Item> added;
};

/// A node holds the items its alternative introduced (the roots, for the root
/// node), the non-splitting steps applied there, and either a closure, an open
/// mark, or one splitting rule whose alternatives are the children.
struct TreeNode {
  std::vector<Item> added;
  std::vector<Step> steps;
  std::optional<Step> split;  // rule and premises; `added` unused
  NodeStatus status = NodeStatus::Unexplored;
  std::optional<ClosureWitness> closure;
  std::vector<TreeNode> children;
};

struct TableauTree {
  std::vector<Item> roots;
  TreeNode root;

  /// Every explored leaf is closed and nothing is left unexplored.
  bool closed() const {
    auto rec = [](auto&& self, const TreeNode& n) -> bool {
      if (n.status == NodeStatus::Closed) return true;
      if (n.status != NodeStatus::Expanded) return false;
      for (const auto& c : n.children)
        if (!self(self, c)) return false;
      return true;
    };
    return rec(rec, root);
  }
};

/// Items on the branch ending at each leaf, together with the leaf.
inline void for_each_branch(const TableauTree& t,
                            const std::function<void(const std::vector<Item>&,
                                                     const TreeNode&)>& fn) {
  std::vector<Item> acc;
  auto rec = [&](auto&& self, const TreeNode& n) -> void {
    const std::size_t mark = acc.size();
    acc.insert(acc.end(), n.added.begin(), n.added.end());
    for (const auto& s : n.steps) acc.insert(acc.end(), s.added.begin(), s.added.end());
    if (n.children.empty()) fn(acc, n);
    for (const auto& c : n.children) self(self, c);
    acc.erase(acc.begin() + static_cast<std::ptrdiff_t>(mark), acc.end());
  };
  rec(rec, t.root);
}

/// Countermodel from a complete open branch. Variables labelled t get Top,
/// f get Bot; m-labelled variables get middle elements respecting the
/// variable-level ~ / !~ pairs. `Greedy` follows the alphabetical first-fit
/// procedure literally (it may produce a non-realising valuation, or run out of
/// colours); `Exact` colours the ~-classes by backtracking and returns nullopt
/// when no colouring with `capacity` colours exists. Variables in `all_vars`
/// that the branch never labels get Top.
inline std::optional<Valuation> extract_countermodel(const std::vector<Item>& branch,
                                                     std::optional<std::uint32_t> capacity,
                                                     Strategy strategy,
                                                     const std::vector<std::string>& all_vars = {}) {
  std::map<std::string, Label> label;
  std::set<std::pair<std::string, std::string>> same, diff;
  for (const Item& i : branch) {
    if (!i.is_pair()) {
      if (!i.left.is_var()) continue;
      auto [it, fresh] = label.emplace(i.left.name(), i.label);
      if (!fresh && it->second != i.label)
        throw std::invalid_argument("extract_countermodel: branch labels " + i.left.name() +
                                    " twice");
    } else if (i.left.is_var() && i.right.is_var()) {
      auto& s = i.relation == Relation::Same ? same : diff;
      s.emplace(i.left.name(), i.right.name());
      s.emplace(i.right.name(), i.left.name());
    }
  }
  std::vector<std::string> mvars;
  for (const auto& [x, l] : label)
    if (l == Label::M) mvars.push_back(x);
  // A pair on a variable that is not middle-valued cannot be realised.
  for (const auto* s : {&same, &diff})
    for (const auto& [x, y] : *s)
      if (!label.contains(x) || label.at(x) != Label::M) return std::nullopt;

  std::map<std::string, int> color;
  if (strategy == Strategy::Greedy) {
    int c = 0;
    for (;;) {
      auto pivot = std::find_if(mvars.begin(), mvars.end(),
                                [&](const std::string& x) { return !color.contains(x); });
      if (pivot == mvars.end()) break;
      color[*pivot] = c;
      for (const auto& q : mvars)
        if (!color.contains(q) && !diff.contains({q, *pivot})) color[q] = c;
      ++c;
    }
    if (capacity && c > static_cast<int>(*capacity)) return std::nullopt;
  } else {
    std::vector<std::size_t> parent(mvars.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < mvars.size(); ++i) pos[mvars[i]] = i;
    for (const auto& [x, y] : same) {
      std::size_t a = find(pos.at(x)), b = find(pos.at(y));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    // Classes are numbered by their alphabetically least member.
    std::map<std::size_t, std::size_t> cls;
    for (std::size_t i = 0; i < mvars.size(); ++i) {
      std::size_t r = find(i);
      if (!cls.contains(r)) {
        std::size_t next = cls.size();
        cls[r] = next;
      }
    }
    Graph g(cls.size());
    for (const auto& [x, y] : diff) g.add_edge(cls.at(find(pos.at(x))), cls.at(find(pos.at(y))));
    auto colors = color_graph(g, capacity ? std::optional<std::size_t>(*capacity) : std::nullopt);
    if (!colors) return std::nullopt;
    for (std::size_t i = 0; i < mvars.size(); ++i) color[mvars[i]] = (*colors)[cls.at(find(i))];
  }

  Valuation v;
  for (const auto& [x, l] : label) {
    if (l == Label::T) v[x] = Element::top();
    else if (l == Label::F) v[x] = Element::bot();
    else v[x] = Element::mid(static_cast<std::uint32_t>(color.at(x) + 1));
  }
  for (const auto& x : all_vars)
    if (!v.contains(x)) v[x] = Element::top();
  return v;
}

namespace detail {

enum RuleId : int {
  kTAnd, kTOr, kTNeg, kMAnd, kMOr, kMNeg, kFAnd, kFOr, kFNeg,
  kSameSym, kDiffSym, kSameTrans, kDiffTrans, kNegSame, kNegDiff, kOpSame, kOpDiff,
  kSameTr, kDiffTr, kRuleCount
};

inline const char* rule_name(int r) {
  static const char* names[] = {"t-and", "t-or", "t-neg", "m-and", "m-or", "m-neg", "f-and",
                                "f-or", "f-neg", "same-sym", "diff-sym", "same-trans",
                                "diff-trans", "neg-same", "neg-diff", "op-same", "op-diff",
                                "same-Tr", "diff-Tr"};
  return names[r];
}

inline constexpr int kAlphaOrder[] = {kTAnd,     kTNeg,      kMNeg,    kFOr,    kFNeg,
                                      kSameTrans, kDiffTrans, kNegSame, kNegDiff, kOpSame,
                                      kOpDiff,   kSameTr,    kDiffTr};
inline constexpr int kBetaOrder[] = {kTOr, kMAnd, kMOr, kFAnd};

/// Interned subformulas; ids follow the alphabetical order of renderings.
class Universe {
 public:
  explicit Universe(const std::vector<Formula>& roots) {
    std::unordered_map<Formula, int, FormulaHash> seen;
    std::vector<Formula> all;
    for (const auto& r : roots)
      for (const auto& g : subformulas(r))
        if (seen.emplace(g, 0).second) all.push_back(g);
    std::vector<std::pair<std::string, std::size_t>> order;
    for (std::size_t i = 0; i < all.size(); ++i) order.emplace_back(render(all[i]), i);
    std::sort(order.begin(), order.end());
    for (const auto& [text, i] : order) {
      ids_[all[i]] = static_cast<int>(formulas_.size());
      formulas_.push_back(all[i]);
    }
    const std::size_t n = formulas_.size();
    kind_.resize(n);
    a_.assign(n, -1);
    b_.assign(n, -1);
    parents_.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
      const Formula& f = formulas_[i];
      kind_[i] = f.kind();
      if (f.kind() == Formula::Kind::Neg) {
        a_[i] = ids_.at(f.inner());
      } else if (f.is_binary()) {
        a_[i] = ids_.at(f.left());
        b_[i] = ids_.at(f.right());
        parents_[static_cast<std::size_t>(a_[i])].push_back(static_cast<int>(i));
        if (b_[i] != a_[i]) parents_[static_cast<std::size_t>(b_[i])].push_back(static_cast<int>(i));
      }
    }
  }

  int size() const { return static_cast<int>(formulas_.size()); }
  int id(const Formula& f) const {
    auto it = ids_.find(f);
    if (it == ids_.end()) throw std::invalid_argument("formula outside the subformula universe");
    return it->second;
  }
  const Formula& formula(int i) const { return formulas_[static_cast<std::size_t>(i)]; }
  Formula::Kind kind(int i) const { return kind_[static_cast<std::size_t>(i)]; }
  bool is_var(int i) const { return kind(i) == Formula::Kind::Var; }
  bool is_binary(int i) const {
    return kind(i) == Formula::Kind::And || kind(i) == Formula::Kind::Or;
  }
  int first(int i) const { return a_[static_cast<std::size_t>(i)]; }
  int second(int i) const { return b_[static_cast<std::size_t>(i)]; }
  /// Binary formulas having i as an operand.
  const std::vector<int>& parents(int i) const { return parents_[static_cast<std::size_t>(i)]; }

 private:
  std::vector<Formula> formulas_;
  std::unordered_map<Formula, int, FormulaHash> ids_;
  std::vector<Formula::Kind> kind_;
  std::vector<int> a_, b_;
  std::vector<std::vector<int>> parents_;
};

/// Compact item: kind 0 labelled (label, a), 1 same (a <= b), 2 diff (a <= b).
struct IItem {
  std::uint8_t kind;
  std::uint8_t label;
  int a, b;
  friend auto operator<=>(const IItem&, const IItem&) = default;
};

inline IItem L(Label l, int f) { return {0, static_cast<std::uint8_t>(l), f, f}; }
inline IItem S(int x, int y) { return {1, 0, std::min(x, y), std::max(x, y)}; }
inline IItem D(int x, int y) { return {2, 0, std::min(x, y), std::max(x, y)}; }

struct IWitness {
  std::string condition;
  std::vector<IItem> items;
};

/// Symmetric n x n bit matrix.
class BitMatrix {
 public:
  void init(int n) {
    n_ = n;
    w_ = (n + 63) / 64;
    bits_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(w_), 0);
  }
  bool test(int a, int b) const { return (row(a)[b >> 6] >> (b & 63)) & 1u; }
  void set(int a, int b) {
    bits_[idx(a) + static_cast<std::size_t>(b >> 6)] |= std::uint64_t{1} << (b & 63);
    bits_[idx(b) + static_cast<std::size_t>(a >> 6)] |= std::uint64_t{1} << (a & 63);
  }
  const std::uint64_t* row(int a) const { return bits_.data() + idx(a); }
  int words() const { return w_; }
  /// Calls fn(j) for every j adjacent to a, in increasing order.
  template <typename Fn>
  void each(int a, Fn&& fn) const {
    const std::uint64_t* r = row(a);
    for (int k = 0; k < w_; ++k)
      for (std::uint64_t m = r[k]; m; m &= m - 1) fn(k * 64 + std::countr_zero(m));
  }
  /// As each(a), skipping j adjacent to b in `other`.
  template <typename Fn>
  void each_except(int a, const BitMatrix& other, int b, Fn&& fn) const {
    const std::uint64_t *r = row(a), *o = other.row(b);
    for (int k = 0; k < w_; ++k)
      for (std::uint64_t m = r[k] & ~o[k]; m; m &= m - 1) fn(k * 64 + std::countr_zero(m));
  }

 private:
  std::size_t idx(int a) const { return static_cast<std::size_t>(a) * static_cast<std::size_t>(w_); }
  int n_ = 0, w_ = 0;
  std::vector<std::uint64_t> bits_;
};

struct State {
  std::vector<std::uint8_t> labels;  // bit (1 << label) per formula id
  BitMatrix same, diff;
  std::optional<IWitness> closed;

  template <typename Fn>
  void each_pair(const BitMatrix& m, Fn&& fn) const {
    const int n = static_cast<int>(labels.size());
    for (int x = 0; x < n; ++x)
      m.each(x, [&](int y) {
        if (y >= x) fn(x, y);
      });
  }
};

using Alternatives = std::vector<std::vector<IItem>>;

/// A non-splitting rule instance: at most two premises and two conclusions.
struct Inst {
  int rule;
  IItem prem[2];
  int np;
  IItem concl[2];
  int nc;
};

class Engine {
 public:
  Engine(const Universe& u, const TableauConfig& c) : u_(u), c_(c) {}

  const Universe& universe() const { return u_; }
  const TableauConfig& config() const { return c_; }

  State empty_state() const {
    State s;
    s.labels.assign(static_cast<std::size_t>(u_.size()), 0);
    s.same.init(u_.size());
    s.diff.init(u_.size());
    return s;
  }

  bool has_label(const State& s, Label l, int f) const {
    return (s.labels[static_cast<std::size_t>(f)] >> static_cast<int>(l)) & 1;
  }

  bool has(const State& s, const IItem& i) const {
    switch (i.kind) {
      case 0: return (s.labels[static_cast<std::size_t>(i.a)] >> i.label) & 1;
      case 1: return s.same.test(i.a, i.b);
      default: return s.diff.test(i.a, i.b);
    }
  }

  /// Adds an item; returns false if already present. Records the first closure.
  bool insert(State& s, const IItem& i, bool track_closure = true) const {
    if (has(s, i)) return false;
    switch (i.kind) {
      case 0: {
        auto& m = s.labels[static_cast<std::size_t>(i.a)];
        m = static_cast<std::uint8_t>(m | (1u << i.label));
        if (track_closure && !s.closed && (m & (m - 1))) s.closed = label_clash(i.a, m);
        return true;
      }
      case 1:
        s.same.set(i.a, i.b);
        if (track_closure && !s.closed && s.diff.test(i.a, i.b))
          s.closed = IWitness{"2", {S(i.a, i.b), D(i.a, i.b)}};
        return true;
      default:
        s.diff.set(i.a, i.b);
        if (!track_closure || s.closed) return true;
        if (i.a == i.b) s.closed = IWitness{"3", {i}};
        else if (s.same.test(i.a, i.b)) s.closed = IWitness{"2", {S(i.a, i.b), i}};
        else if (auto k = clique_through(s, i.a, i.b)) s.closed = IWitness{"4'", *k};
        return true;
    }
  }

  /// Closure conditions 1, 2, 3, 4' checked in order over the whole state.
  std::optional<IWitness> closure_of(const State& s) const {
    for (int f = 0; f < u_.size(); ++f) {
      auto m = s.labels[static_cast<std::size_t>(f)];
      if (m & (m - 1)) return label_clash(f, m);
    }
    std::optional<IWitness> w;
    s.each_pair(s.same, [&](int x, int y) {
      if (!w && s.diff.test(x, y)) w = IWitness{"2", {S(x, y), D(x, y)}};
    });
    if (w) return w;
    for (int x = 0; x < u_.size() && !w; ++x)
      if (s.diff.test(x, x)) w = IWitness{"3", {D(x, x)}};
    if (w) return w;
    if (c_.capacity)
      s.each_pair(s.diff, [&](int x, int y) {
        if (!w && x != y)
          if (auto k = clique_through(s, x, y)) w = IWitness{"4'", *k};
      });
    return w;
  }

  /// Instances of the non-splitting rules triggered by a newly added item:
  /// every instance having `it` among its premises and the rest on the branch.
  /// With `only_new`, transitivity instances whose conclusion is already on
  /// the branch are skipped; insertion would discard them anyway.
  template <typename Emit>
  void fire(const State& s, const IItem& it, Emit&& emit, bool only_new = false) const {
    if (it.kind == 0) {
      const int f = it.a;
      const Label l = static_cast<Label>(it.label);
      const auto k = u_.kind(f);
      const int a = u_.first(f), b = u_.second(f);
      const IItem p = L(l, f);
      if (l == Label::T && k == Formula::Kind::And) emit(Inst{kTAnd, {p}, 1, {L(Label::T, a), L(Label::T, b)}, 2});
      if (l == Label::T && k == Formula::Kind::Neg) emit(Inst{kTNeg, {p}, 1, {L(Label::F, a)}, 1});
      if (l == Label::M && k == Formula::Kind::Neg) emit(Inst{kMNeg, {p}, 1, {L(Label::M, a), S(a, f)}, 2});
      if (l == Label::F && k == Formula::Kind::Or) emit(Inst{kFOr, {p}, 1, {L(Label::F, a), L(Label::F, b)}, 2});
      if (l == Label::F && k == Formula::Kind::Neg) emit(Inst{kFNeg, {p}, 1, {L(Label::T, a)}, 1});
      if (l == Label::M) {
        // op rules with this formula as the middle-valued operand
        for (int tau : u_.parents(f)) {
          s.same.each(tau, [&](int phi) { emit(Inst{kOpSame, {S(phi, tau), p}, 2, {S(phi, f)}, 1}); });
          s.diff.each(tau, [&](int phi) { emit(Inst{kOpDiff, {D(phi, tau), p}, 2, {D(phi, f)}, 1}); });
        }
      }
      return;
    }
    const bool same = it.kind == 1;
    const int x = it.a, y = it.b;
    const bool vars = u_.is_var(x) && u_.is_var(y);
    // transitivity; the new pair may be either premise
    auto trans = [&](int same_rule, int diff_rule, bool restrict_vars) {
      auto ok = [&](int w) { return !restrict_vars || u_.is_var(w); };
      if (same) {
        if (x == y) return;
        const std::pair<int, int> ends[] = {{x, y}, {y, x}};
        for (auto [p, q] : ends) {
          // p ~ q, q ~ r  =>  p ~ r
          auto st = [&](int r) {
            if (r != q && r != p && ok(r)) emit(Inst{same_rule, {S(p, q), S(q, r)}, 2, {S(p, r)}, 1});
          };
          // w !~ p, p ~ q  =>  w !~ q
          auto dt = [&](int w) {
            if (ok(w)) emit(Inst{diff_rule, {D(w, p), S(p, q)}, 2, {D(w, q)}, 1});
          };
          if (only_new) {
            s.same.each_except(q, s.same, p, st);
            s.diff.each_except(p, s.diff, q, dt);
          } else {
            s.same.each(q, st);
            s.diff.each(p, dt);
          }
        }
      } else {
        const std::pair<int, int> ends[] = {{x, y}, {y, x}};
        for (auto [p, q] : ends) {
          // p !~ q, q ~ r  =>  p !~ r
          auto dt = [&](int r) {
            if (r != q && ok(r)) emit(Inst{diff_rule, {D(p, q), S(q, r)}, 2, {D(p, r)}, 1});
          };
          if (only_new) s.same.each_except(q, s.diff, p, dt);
          else s.same.each(q, dt);
          if (x == y) break;
        }
      }
    };
    if (vars) trans(kSameTrans, kDiffTrans, true);
    if (c_.tr_rules) trans(kSameTr, kDiffTr, false);
    const IItem p = same ? S(x, y) : D(x, y);
    auto pair = [&](int a, int b) { return same ? S(a, b) : D(a, b); };
    if (c_.negation_pair_rules) {
      const int r = same ? kNegSame : kNegDiff;
      if (u_.kind(x) == Formula::Kind::Neg) emit(Inst{r, {p}, 1, {pair(u_.first(x), y)}, 1});
      if (u_.kind(y) == Formula::Kind::Neg && y != x) emit(Inst{r, {p}, 1, {pair(x, u_.first(y))}, 1});
    }
    const int r = same ? kOpSame : kOpDiff;
    const std::pair<int, int> orient[] = {{x, y}, {y, x}};
    for (auto [phi, tau] : orient) {
      if (u_.is_binary(tau))
        for (int c : {u_.first(tau), u_.second(tau)})
          if (has_label(s, Label::M, c)) emit(Inst{r, {p, L(Label::M, c)}, 2, {pair(phi, c)}, 1});
      if (x == y) break;
    }
  }

  /// The three alternatives of a splitting instance, without allocation.
  struct Beta {
    IItem alt[3][3];
    int len[3];
  };

  /// Alternatives of splitting rule r with principal formula f.
  Beta beta(int r, int f) const {
    const int a = u_.first(f), b = u_.second(f);
    switch (r) {
      case kTOr:
        return {{{L(Label::T, a)}, {L(Label::T, b)}, {L(Label::M, a), L(Label::M, b), D(a, b)}}, {1, 1, 3}};
      case kMAnd:
        return {{{L(Label::T, a), L(Label::M, b)},
                 {L(Label::M, a), L(Label::T, b)},
                 {L(Label::M, a), L(Label::M, b), S(a, b)}},
                {2, 2, 3}};
      case kMOr:
        return {{{L(Label::F, a), L(Label::M, b)},
                 {L(Label::M, a), L(Label::F, b)},
                 {L(Label::M, a), L(Label::M, b), S(a, b)}},
                {2, 2, 3}};
      default:  // kFAnd
        return {{{L(Label::F, a)}, {L(Label::F, b)}, {L(Label::M, a), L(Label::M, b), D(a, b)}}, {1, 1, 3}};
    }
  }

  Alternatives beta_alternatives(int r, int f) const {
    const Beta bt = beta(r, f);
    Alternatives out;
    for (int k = 0; k < 3; ++k) out.emplace_back(bt.alt[k], bt.alt[k] + bt.len[k]);
    return out;
  }

  static Label beta_label(int r) {
    return r == kTOr ? Label::T : r == kFAnd ? Label::F : Label::M;
  }
  static Formula::Kind beta_kind(int r) {
    return r == kMAnd || r == kFAnd ? Formula::Kind::And : Formula::Kind::Or;
  }

  bool satisfied(const State& s, const Beta& bt) const {
    for (int k = 0; k < 3; ++k)
      if (std::all_of(bt.alt[k], bt.alt[k] + bt.len[k], [&](const IItem& i) { return has(s, i); }))
        return true;
    return false;
  }

  /// Lowest-index splitting rule with an unsatisfied instance, on the least formula id.
  std::optional<std::pair<int, int>> pick_split(const State& s) const {
    for (int r : kBetaOrder) {
      const Label l = beta_label(r);
      const auto k = beta_kind(r);
      for (int f = 0; f < u_.size(); ++f)
        if (u_.kind(f) == k && has_label(s, l, f) && !satisfied(s, beta(r, f)))
          return std::pair{r, f};
    }
    return std::nullopt;
  }

  /// Enumerates all instances of rule r whose premises are on the branch:
  /// fn(premises, alternatives). Used for completeness checks and inspection.
  template <typename Fn>
  void instances(const State& s, int r, Fn&& fn) const {
    if (r == kTOr || r == kMAnd || r == kMOr || r == kFAnd) {
      for (int f = 0; f < u_.size(); ++f)
        if (u_.kind(f) == beta_kind(r) && has_label(s, beta_label(r), f))
          fn(std::vector<IItem>{L(beta_label(r), f)}, beta_alternatives(r, f));
      return;
    }
    // Non-splitting rules: replay every item as the trigger and keep the
    // instances of rule r whose premises are all present.
    std::set<std::pair<std::vector<IItem>, std::vector<IItem>>> seen;
    for (const IItem& it : items_of(s))
      fire(s, it, [&](const Inst& in) {
        if (in.rule != r) return;
        std::vector<IItem> prem(in.prem, in.prem + in.np), concl(in.concl, in.concl + in.nc);
        std::sort(prem.begin(), prem.end());
        if (!std::all_of(prem.begin(), prem.end(), [&](const IItem& i) { return has(s, i); })) return;
        if (seen.emplace(prem, concl).second) fn(prem, Alternatives{concl});
      });
  }

  /// No non-splitting rule adds anything and every splitting instance has one
  /// alternative already on the branch.
  bool complete(const State& s) const {
    for (const IItem& it : items_of(s)) {
      bool missing = false;
      fire(
          s, it,
          [&](const Inst& in) {
            for (int k = 0; k < in.nc; ++k) missing = missing || !has(s, in.concl[k]);
          },
          true);
      if (missing) return false;
    }
    return !pick_split(s);
  }

  /// Variable-level system of a branch: do its m-labelled variables admit a
  /// colouring of the ~-classes across !~ edges within the capacity?
  bool realisable(const State& s) const {
    std::vector<int> mvars;
    std::vector<int> pos(static_cast<std::size_t>(u_.size()), -1);
    for (int f = 0; f < u_.size(); ++f)
      if (u_.is_var(f) && has_label(s, Label::M, f)) {
        pos[static_cast<std::size_t>(f)] = static_cast<int>(mvars.size());
        mvars.push_back(f);
      }
    std::vector<int> parent(mvars.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x)
        x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      return x;
    };
    bool ok = true;
    auto var_pairs = [&](const BitMatrix& m, auto&& fn) {
      s.each_pair(m, [&](int x, int y) {
        if (!u_.is_var(x) || !u_.is_var(y)) return;
        if (pos[static_cast<std::size_t>(x)] < 0 || pos[static_cast<std::size_t>(y)] < 0) {
          ok = false;
          return;
        }
        fn(pos[static_cast<std::size_t>(x)], pos[static_cast<std::size_t>(y)]);
      });
    };
    var_pairs(s.same, [&](int a, int b) {
      int ra = find(a), rb = find(b);
      if (ra != rb) parent[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
    });
    if (!ok) return false;
    std::vector<int> cls(mvars.size(), -1);
    int k = 0;
    for (std::size_t i = 0; i < mvars.size(); ++i) {
      int r = find(static_cast<int>(i));
      if (cls[static_cast<std::size_t>(r)] < 0) cls[static_cast<std::size_t>(r)] = k++;
    }
    Graph g(static_cast<std::size_t>(k));
    var_pairs(s.diff, [&](int a, int b) {
      g.add_edge(static_cast<std::size_t>(cls[static_cast<std::size_t>(find(a))]),
                 static_cast<std::size_t>(cls[static_cast<std::size_t>(find(b))]));
    });
    if (!ok) return false;
    return color_graph(g, c_.capacity ? std::optional<std::size_t>(*c_.capacity) : std::nullopt)
        .has_value();
  }

  Item to_public(const IItem& i) const {
    if (i.kind == 0) return Item::labelled(static_cast<Label>(i.label), u_.formula(i.a));
    // ids follow rendering order, so (a, b) is already canonical
    return Item::pair_ordered(i.kind == 1 ? Relation::Same : Relation::Diff, u_.formula(i.a),
                              u_.formula(i.b));
  }
  std::vector<Item> to_public(const std::vector<IItem>& is) const {
    std::vector<Item> out;
    out.reserve(is.size());
    for (const auto& i : is) out.push_back(to_public(i));
    return out;
  }
  IItem from_public(const Item& i) const {
    if (!i.is_pair()) return L(i.label, u_.id(i.left));
    const int a = u_.id(i.left), b = u_.id(i.right);
    return i.relation == Relation::Same ? S(a, b) : D(a, b);
  }

  /// Branch items in a canonical order: labelled by formula id, then pairs.
  std::vector<IItem> items_of(const State& s) const {
    std::vector<IItem> out;
    for (int f = 0; f < u_.size(); ++f)
      for (std::uint8_t l = 0; l < 3; ++l)
        if ((s.labels[static_cast<std::size_t>(f)] >> l) & 1)
          out.push_back(L(static_cast<Label>(l), f));
    s.each_pair(s.same, [&](int a, int b) { out.push_back(S(a, b)); });
    s.each_pair(s.diff, [&](int a, int b) { out.push_back(D(a, b)); });
    return out;
  }

 private:
  static IWitness label_clash(int f, std::uint8_t m) {
    IWitness w{"1", {}};
    for (std::uint8_t l = 0; l < 3; ++l)
      if ((m >> l) & 1) w.items.push_back(L(static_cast<Label>(l), f));
    return w;
  }

  /// A set of capacity+1 pairwise !~ formulas containing the edge (a, b).
  std::optional<std::vector<IItem>> clique_through(const State& s, int a, int b) const {
    if (!c_.capacity) return std::nullopt;
    const std::size_t need = *c_.capacity + 1;
    std::vector<int> cand;
    {
      const std::uint64_t *ra = s.diff.row(a), *rb = s.diff.row(b);
      for (int k = 0; k < s.diff.words(); ++k)
        for (std::uint64_t m = ra[k] & rb[k]; m; m &= m - 1) {
          int v = k * 64 + std::countr_zero(m);
          if (v != a && v != b && !s.diff.test(v, v)) cand.push_back(v);
        }
    }
    if (cand.size() + 2 < need) return std::nullopt;
    std::vector<int> cur{a, b};
    auto rec = [&](auto&& self, std::size_t from) -> bool {
      if (cur.size() >= need) return true;
      if (cur.size() + (cand.size() - from) < need) return false;
      for (std::size_t i = from; i < cand.size(); ++i) {
        int v = cand[i];
        bool ok = true;
        for (std::size_t k = 2; k < cur.size() && ok; ++k) ok = s.diff.test(cur[k], v);
        if (!ok) continue;
        cur.push_back(v);
        if (self(self, i + 1)) return true;
        cur.pop_back();
      }
      return false;
    };
    if (!rec(rec, 0)) return std::nullopt;
    std::vector<IItem> out;
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j) out.push_back(D(cur[i], cur[j]));
    std::sort(out.begin(), out.end());
    return out;
  }

  const Universe& u_;
  TableauConfig c_;
};

/// Record of a complete open branch met during saturation.
struct OpenBranch {
  std::vector<Item> items;
  bool realisable = false;
  std::optional<Valuation> valuation;
  bool greedy_fallback = false;
};

class Saturator {
 public:
  Saturator(const Engine& e, std::vector<std::string> vars, std::size_t& budget)
      : e_(e), vars_(std::move(vars)), budget_(budget), record_(e.config().record_tree),
        lattice_(e.config().capacity ? Lattice::mn(*e.config().capacity) : Lattice::m_omega()) {}

  TableauTree run(const std::vector<IItem>& roots) {
    TableauTree t;
    t.roots = e_.to_public(roots);
    State s = e_.empty_state();
    std::vector<IItem> queue;
    for (const auto& i : roots)
      if (e_.insert(s, i)) {
        charge();
        queue.push_back(i);
        if (record_) t.root.added.push_back(e_.to_public(i));
      }
    expand(t.root, std::move(s), std::move(queue));
    return t;
  }

  const std::vector<OpenBranch>& open() const { return open_; }

 private:
  void charge() {
    if (budget_ == 0) throw ResourceCapExceeded("tableau item cap exceeded");
    --budget_;
  }

  void close(TreeNode& node, const IWitness& w) {
    node.status = NodeStatus::Closed;
    if (record_) node.closure = ClosureWitness{w.condition, e_.to_public(w.items)};
  }

  /// Non-splitting rules to a fixpoint, driven by the queue of new items.
  void saturate_alpha(TreeNode& node, State& s, std::vector<IItem>& queue) {
    std::vector<Inst>& batch = batch_;
    for (std::size_t head = 0; head < queue.size() && !s.closed; ++head) {
      batch.clear();
      e_.fire(s, queue[head], [&](const Inst& in) { batch.push_back(in); }, true);
      for (const Inst& in : batch) {
        std::optional<Step> step;
        for (int k = 0; k < in.nc; ++k) {
          if (!e_.insert(s, in.concl[k])) continue;
          charge();
          queue.push_back(in.concl[k]);
          if (record_) {
            if (!step) {
              step.emplace();
              step->rule = rule_name(in.rule);
              for (int j = 0; j < in.np; ++j) step->premises.push_back(e_.to_public(in.prem[j]));
            }
            step->added.push_back(e_.to_public(in.concl[k]));
          }
        }
        if (step) node.steps.push_back(std::move(*step));
        if (s.closed) return;
      }
    }
  }

  void expand(TreeNode& node, State s, std::vector<IItem> queue) {
    if (!s.closed) saturate_alpha(node, s, queue);
    if (s.closed) return close(node, *s.closed);
    auto pick = e_.pick_split(s);
    if (!pick) return finish(node, s);
    const auto [r, f] = *pick;
    node.status = NodeStatus::Expanded;
    if (record_) node.split = Step{rule_name(r), {e_.to_public(L(Engine::beta_label(r), f))}, {}};
    const Engine::Beta bt = e_.beta(r, f);
    for (int k = 0; k < 3; ++k) {
      const std::span<const IItem> alt(bt.alt[k], static_cast<std::size_t>(bt.len[k]));
      TreeNode scratch;
      TreeNode& child = record_ ? node.children.emplace_back() : scratch;
      if (stop_) {
        if (record_)
          for (const auto& i : alt)
            if (!e_.has(s, i)) child.added.push_back(e_.to_public(i));
        child.status = NodeStatus::Unexplored;
        continue;
      }
      State cs = k == 2 ? State(std::move(s)) : State(s);  // s is not read after the last child
      std::vector<IItem> q;
      for (const auto& i : alt)
        if (e_.insert(cs, i)) {
          charge();
          q.push_back(i);
          if (record_) child.added.push_back(e_.to_public(i));
        }
      expand(child, std::move(cs), std::move(q));
    }
  }

  void finish(TreeNode& node, const State& s) {
    const TableauConfig& c = e_.config();
    const bool ok = e_.realisable(s);
    if (!ok && c.mode == ClosureMode::Semantic) {
      IWitness w{"semantic", {}};
      s.each_pair(s.diff, [&](int a, int b) {
        if (e_.universe().is_var(a) && e_.universe().is_var(b)) w.items.push_back(D(a, b));
      });
      return close(node, w);
    }
    node.status = NodeStatus::Open;
    // Items are materialised only for the first open branches that matter.
    if (!ok && !open_.empty()) return;
    OpenBranch ob;
    ob.items = e_.to_public(e_.items_of(s));
    ob.realisable = ok;
    if (ok) {
      ob.valuation = extract_countermodel(ob.items, c.capacity, Strategy::Exact, vars_);
      if (c.strategy == Strategy::Greedy) {
        auto g = extract_countermodel(ob.items, c.capacity, Strategy::Greedy, vars_);
        if (g && realises(lattice_, *g, ob.items)) ob.valuation = g;
        else ob.greedy_fallback = true;
      }
      if (c.stop_at_first_open) stop_ = true;
    }
    open_.push_back(std::move(ob));
  }

  const Engine& e_;
  std::vector<std::string> vars_;
  std::size_t& budget_;
  bool record_;
  Lattice lattice_;
  bool stop_ = false;
  std::vector<OpenBranch> open_;
  std::vector<Inst> batch_;  // reused by saturate_alpha, which never nests
};

}  // namespace detail

/// Builds the tree for a set of root items (all formulas and their subformulas
/// form the universe). Saturation applies non-splitting rules to a fixpoint,
/// then splits on the lowest-index splitting rule whose instance on the
/// alphabetically least principal formula has no alternative on the branch.
inline TableauTree saturate(const std::vector<Item>& roots, const TableauConfig& c) {
  std::vector<Formula> fs;
  for (const auto& i : roots) {
    fs.push_back(i.left);
    if (i.is_pair()) fs.push_back(i.right);
  }
  detail::Universe u(fs);
  detail::Engine e(u, c);
  std::vector<detail::IItem> is;
  std::set<std::string> vars;
  for (const auto& i : roots) {
    is.push_back(e.from_public(i));
    collect_variables(i.left, vars);
    collect_variables(i.right, vars);
  }
  std::size_t budget = c.item_cap;
  detail::Saturator sat(e, {vars.begin(), vars.end()}, budget);
  return sat.run(is);
}

/// Closure witness for a branch given as a set of items. Paper conditions are
/// tried in order 1, 2, 3, 4'; in semantic mode a complete branch with no
/// realising colouring of its middle-valued variables is closed as well.
inline std::optional<ClosureWitness> is_closed(const std::vector<Item>& branch,
                                               const TableauConfig& c) {
  std::vector<Formula> fs;
  for (const auto& i : branch) {
    fs.push_back(i.left);
    if (i.is_pair()) fs.push_back(i.right);
  }
  detail::Universe u(fs);
  detail::Engine e(u, c);
  detail::State s = e.empty_state();
  for (const auto& i : branch) e.insert(s, e.from_public(i), false);
  if (auto w = e.closure_of(s)) return ClosureWitness{w->condition, e.to_public(w->items)};
  if (c.mode == ClosureMode::Semantic && e.complete(s) &&
      !extract_countermodel(branch, c.capacity, Strategy::Exact)) {
    std::vector<Item> ws;
    for (const auto& i : branch)
      if (i.is_pair() && i.relation == Relation::Diff && i.left.is_var() && i.right.is_var())
        ws.push_back(i);
    return ClosureWitness{"semantic", ws};
  }
  return std::nullopt;
}

/// A rule instance whose premises occur on a branch.
struct RuleInstance {
  std::string rule;
  std::vector<Item> premises;
  std::vector<std::vector<Item>> alternatives;
};

/// All enabled rule instances applicable to the branch, in rule-table order.
inline std::vector<RuleInstance> rule_instances(const std::vector<Item>& branch,
                                                const TableauConfig& c) {
  std::vector<Formula> fs;
  for (const auto& i : branch) {
    fs.push_back(i.left);
    if (i.is_pair()) fs.push_back(i.right);
  }
  detail::Universe u(fs);
  detail::Engine e(u, c);
  detail::State s = e.empty_state();
  for (const auto& i : branch) e.insert(s, e.from_public(i), false);
  std::vector<RuleInstance> out;
  for (int r = 0; r < detail::kRuleCount; ++r)
    e.instances(s, r, [&](const std::vector<detail::IItem>& prem, const detail::Alternatives& alts) {
      RuleInstance ri{detail::rule_name(r), e.to_public(prem), {}};
      for (const auto& a : alts) ri.alternatives.push_back(e.to_public(a));
      out.push_back(std::move(ri));
    });
  return out;
}

struct Refutation {
  std::size_t tree = 0;
  std::vector<Item> branch;
  /// Absent when no complete open branch admits a realising valuation
  /// (possible in paper mode only).
  std::optional<Valuation> countermodel;
  bool greedy_fallback = false;
  /// The countermodel refutes the sequent under matrix evaluation.
  bool verified = false;
};

struct ProofResult {
  Sequent sequent;
  Logic logic;
  std::string lattice;
  TableauConfig config;
  std::vector<TableauTree> trees;
  bool proved = false;
  std::optional<Refutation> refutation;
  std::size_t items = 0;
};

/// Root item sets: ETL {t[φ], m[χ]} and {t[φ], f[χ]}; NFL {m[φ], f[χ]} and {t[φ], f[χ]}.
inline std::vector<std::vector<Item>> proof_roots(const Sequent& s, Logic logic) {
  const Formula &p = s.premise, &c = s.conclusion;
  if (logic == Logic::ETL)
    return {{Item::labelled(Label::T, p), Item::labelled(Label::M, c)},
            {Item::labelled(Label::T, p), Item::labelled(Label::F, c)}};
  return {{Item::labelled(Label::M, p), Item::labelled(Label::F, c)},
          {Item::labelled(Label::T, p), Item::labelled(Label::F, c)}};
}

/// Proved iff both root sets yield closed tableaux. Otherwise the result
/// carries the first complete open branch with a countermodel, or, when no
/// open branch is realisable, the first complete open branch alone.
inline ProofResult prove(const Sequent& s, Logic logic, TableauConfig c,
                         const std::string& lattice_id = "") {
  ProofResult r{s, logic, lattice_id, c, {}, false, std::nullopt, 0};
  if (r.lattice.empty()) r.lattice = c.capacity ? "m" + std::to_string(*c.capacity) : "momega";
  detail::Universe u({s.premise, s.conclusion});
  detail::Engine e(u, c);
  std::size_t budget = c.item_cap;
  const auto vars = variables(s);
  std::optional<Refutation> first_open;
  const auto root_sets = proof_roots(s, logic);
  for (std::size_t t = 0; t < 2; ++t) {
    std::vector<detail::IItem> roots;
    for (const auto& i : root_sets[t]) roots.push_back(e.from_public(i));
    detail::Saturator sat(e, vars, budget);
    r.trees.push_back(sat.run(roots));
    for (const auto& ob : sat.open()) {
      if (ob.realisable) {
        r.refutation = Refutation{t, ob.items, ob.valuation, ob.greedy_fallback, false};
        break;
      }
      if (!first_open) first_open = Refutation{t, ob.items, std::nullopt, false, false};
    }
    if (r.refutation) break;
  }
  r.items = c.item_cap - budget;
  if (!r.refutation && first_open) r.refutation = first_open;
  r.proved = !r.refutation;
  if (r.refutation && r.refutation->countermodel) {
    const Lattice l = c.capacity ? Lattice::mn(*c.capacity) : Lattice::m_omega();
    const Matrix m(l, logic);
    r.refutation->verified = refutes(m, *r.refutation->countermodel, s);
  }
  return r;
}

/// Convenience overload taking the lattice; only Mn and Mω are supported.
inline ProofResult prove(const Sequent& s, Logic logic, const Lattice& l, TableauConfig c = {}) {
  if (!l.is_flat()) throw std::invalid_argument("tableaux are defined for Mn and Mω only, not " + l.id());
  c.capacity = l.middle_capacity();
  return prove(s, logic, c, l.id());
}

}  // namespace latab

#endif  // LATAB_TABLEAU_HPP
