#ifndef LATAB_LATTICE_HPP
#define LATAB_LATTICE_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace latab {

/// A truth value: Bot, Top, or the k-th middle element (k >= 1).
///
/// Named elements of the ad-hoc lattices use reserved middle indices:
///
///   M2:      B = Mid1, N = Mid2
///   M3:      B = Mid1, 0 = Mid2, N = Mid3
///   N5:      x = Mid1, y = Mid2, z = Mid3     (z < y)
///   ladder5: a = Mid1, b = Mid2, c = Mid3     (b, c < a)
///
/// The defaulted ordering is carrier order: Bot, Mid1, Mid2, ..., Top.
struct Element {
  enum class Kind : std::uint8_t { Bot = 0, Mid = 1, Top = 2 };
  Kind kind = Kind::Bot;
  std::uint32_t index = 0;  // nonzero only for Mid

  static constexpr Element bot() noexcept { return {Kind::Bot, 0}; }
  static constexpr Element top() noexcept { return {Kind::Top, 0}; }
  static constexpr Element mid(std::uint32_t k) noexcept { return {Kind::Mid, k}; }

  constexpr bool is_mid() const noexcept { return kind == Kind::Mid; }
  constexpr bool is_top() const noexcept { return kind == Kind::Top; }
  constexpr bool is_bot() const noexcept { return kind == Kind::Bot; }

  friend constexpr auto operator<=>(const Element&, const Element&) = default;
};

class UnknownElement : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Bounded lattice with an optional negation map. Finite lattices are lookup
/// tables over carrier positions; Mω (no carrier) is computed symbolically.
class Lattice {
 public:
  /// Flat lattice with n pairwise incomparable middle elements.
  static Lattice mn(std::uint32_t n);
  /// Flat lattice with countably many middle elements.
  static Lattice m_omega();
  static Lattice n5();
  static Lattice ladder5();

  /// Builds a finite lattice from its carrier (Bot first, Top last) and the
  /// strict covering pairs (lower, upper); the order is their reflexive-transitive
  /// closure. Throws if the order is not a bounded lattice.
  static Lattice from_order(std::string id, std::vector<Element> carrier,
                            std::vector<std::pair<Element, Element>> covers,
                            std::map<Element, std::string> names);

  const std::string& id() const noexcept { return id_; }
  bool is_finite() const noexcept { return !omega_; }
  /// Mn and Mω are flat; only these carry a middle-level capacity.
  bool is_flat() const noexcept { return flat_; }
  /// n for Mn, nullopt for Mω and for non-flat lattices.
  std::optional<std::uint32_t> middle_capacity() const noexcept {
    if (!flat_ || omega_) return std::nullopt;
    return static_cast<std::uint32_t>(carrier_.size() - 2);
  }

  const std::vector<Element>& carrier() const;
  std::size_t size() const { return carrier().size(); }
  bool contains(Element e) const noexcept;
  /// Carrier position of e; throws UnknownElement.
  std::size_t index_of(Element e) const;

  bool leq(Element a, Element b) const;
  Element meet(Element a, Element b) const;
  Element join(Element a, Element b) const;

  bool has_negation() const noexcept { return omega_ || !neg_.empty(); }
  Element neg(Element a) const;

  /// Installs a negation table given in carrier order.
  Lattice with_negation(std::vector<Element> table) const;
  const std::vector<Element>& negation_table() const { return neg_; }

  /// Display name: paper letters where defined, otherwise Top/Bot/Mid<k>.
  std::string name(Element e) const;
  /// Accepts display names as well as the generic Top/Bot/Mid<k> forms.
  Element parse_element(const std::string& s) const;

  // Index-level tables for the hot evaluation path (finite lattices only).
  std::size_t meet_index(std::size_t a, std::size_t b) const { return meet_[a * size() + b]; }
  std::size_t join_index(std::size_t a, std::size_t b) const { return join_[a * size() + b]; }
  std::size_t neg_index(std::size_t a) const { return neg_idx_[a]; }
  std::size_t top_index() const { return carrier_.size() - 1; }
  std::size_t bot_index() const { return 0; }

 private:
  Lattice() = default;
  void require_finite(const char* what) const {
    if (omega_) throw std::logic_error(std::string(what) + " requires a finite lattice");
  }
  void require(Element e) const {
    if (!contains(e)) throw UnknownElement("element not in lattice " + id_);
  }

  std::string id_;
  bool omega_ = false;
  bool flat_ = false;
  std::vector<Element> carrier_;
  std::vector<char> leq_;
  std::vector<std::uint16_t> meet_, join_;
  std::vector<Element> neg_;
  std::vector<std::uint16_t> neg_idx_;
  std::map<Element, std::string> names_;
};

inline Lattice Lattice::from_order(std::string id, std::vector<Element> carrier,
                                   std::vector<std::pair<Element, Element>> covers,
                                   std::map<Element, std::string> names) {
  Lattice l;
  l.id_ = std::move(id);
  l.carrier_ = std::move(carrier);
  l.names_ = std::move(names);
  const std::size_t k = l.carrier_.size();
  if (k < 2 || !l.carrier_.front().is_bot() || !l.carrier_.back().is_top())
    throw std::invalid_argument("carrier must start with Bot and end with Top");
  if (k > 4098) throw std::invalid_argument("carrier too large");
  l.leq_.assign(k * k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    l.leq_[i * k + i] = 1;
    l.leq_[0 * k + i] = 1;
    l.leq_[i * k + (k - 1)] = 1;
  }
  for (auto [lo, hi] : covers) l.leq_[l.index_of(lo) * k + l.index_of(hi)] = 1;
  // Transitive closure (Warshall).
  for (std::size_t m = 0; m < k; ++m)
    for (std::size_t i = 0; i < k; ++i)
      if (l.leq_[i * k + m])
        for (std::size_t j = 0; j < k; ++j)
          if (l.leq_[m * k + j]) l.leq_[i * k + j] = 1;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (i != j && l.leq_[i * k + j] && l.leq_[j * k + i])
        throw std::invalid_argument("order is not antisymmetric");

  l.meet_.assign(k * k, 0);
  l.join_.assign(k * k, 0);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      std::optional<std::size_t> glb, lub;
      for (std::size_t c = 0; c < k; ++c) {
        if (l.leq_[c * k + a] && l.leq_[c * k + b] && (!glb || l.leq_[*glb * k + c])) glb = c;
        if (l.leq_[a * k + c] && l.leq_[b * k + c] && (!lub || l.leq_[c * k + *lub])) lub = c;
      }
      // Verify the candidates really are greatest / least.
      for (std::size_t c = 0; c < k; ++c) {
        if (l.leq_[c * k + a] && l.leq_[c * k + b] && !l.leq_[c * k + *glb])
          throw std::invalid_argument("order is not a lattice (no meet)");
        if (l.leq_[a * k + c] && l.leq_[b * k + c] && !l.leq_[*lub * k + c])
          throw std::invalid_argument("order is not a lattice (no join)");
      }
      l.meet_[a * k + b] = static_cast<std::uint16_t>(*glb);
      l.join_[a * k + b] = static_cast<std::uint16_t>(*lub);
    }
  return l;
}

inline Lattice Lattice::mn(std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("Mn requires n >= 1");
  if (n > 4096) throw std::invalid_argument("Mn supports n <= 4096");
  std::vector<Element> carrier{Element::bot()};
  for (std::uint32_t k = 1; k <= n; ++k) carrier.push_back(Element::mid(k));
  carrier.push_back(Element::top());
  std::map<Element, std::string> names;
  if (n == 2) {
    names = {{Element::top(), "T"}, {Element::mid(1), "B"}, {Element::mid(2), "N"},
             {Element::bot(), "F"}};
  } else if (n == 3) {
    names = {{Element::top(), "T"}, {Element::mid(1), "B"}, {Element::mid(2), "0"},
             {Element::mid(3), "N"}, {Element::bot(), "F"}};
  }
  Lattice l;
  l.id_ = "m" + std::to_string(n);
  l.flat_ = true;
  l.carrier_ = std::move(carrier);
  l.names_ = std::move(names);
  const std::size_t k = l.carrier_.size();
  l.leq_.assign(k * k, 0);
  l.meet_.assign(k * k, 0);
  l.join_.assign(k * k, 0);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      const bool le = a == b || a == 0 || b == k - 1;
      const bool ge = a == b || b == 0 || a == k - 1;
      l.leq_[a * k + b] = le;
      l.meet_[a * k + b] = static_cast<std::uint16_t>(le ? a : ge ? b : 0);
      l.join_[a * k + b] = static_cast<std::uint16_t>(le ? b : ge ? a : k - 1);
    }
  std::vector<Element> neg;
  for (Element e : l.carrier_)
    neg.push_back(e.is_top() ? Element::bot() : e.is_bot() ? Element::top() : e);
  return l.with_negation(std::move(neg));
}

inline Lattice Lattice::m_omega() {
  Lattice l;
  l.id_ = "momega";
  l.omega_ = true;
  l.flat_ = true;
  return l;
}

inline Lattice Lattice::n5() {
  const Element x = Element::mid(1), y = Element::mid(2), z = Element::mid(3);
  Lattice l = from_order("n5", {Element::bot(), x, y, z, Element::top()}, {{z, y}},
                         {{Element::bot(), "Bot"}, {x, "x"}, {y, "y"}, {z, "z"},
                          {Element::top(), "Top"}});
  // The unique De Morgan involution of N5.
  return l.with_negation({Element::top(), x, z, y, Element::bot()});
}

inline Lattice Lattice::ladder5() {
  const Element a = Element::mid(1), b = Element::mid(2), c = Element::mid(3);
  return from_order("ladder5", {Element::bot(), a, b, c, Element::top()}, {{b, a}, {c, a}},
                    {{Element::bot(), "Bot"}, {a, "a"}, {b, "b"}, {c, "c"},
                     {Element::top(), "Top"}});
}

inline const std::vector<Element>& Lattice::carrier() const {
  require_finite("carrier()");
  return carrier_;
}

inline bool Lattice::contains(Element e) const noexcept {
  if (omega_) return !e.is_mid() || e.index >= 1;
  if (flat_) {
    return !e.is_mid() || (e.index >= 1 && e.index <= carrier_.size() - 2);
  }
  return std::find(carrier_.begin(), carrier_.end(), e) != carrier_.end();
}

inline std::size_t Lattice::index_of(Element e) const {
  if (omega_) throw std::logic_error("index_of() requires a finite lattice");
  if (flat_) {
    require(e);
    return e.is_bot() ? 0 : e.is_top() ? carrier_.size() - 1 : e.index;
  }
  auto it = std::find(carrier_.begin(), carrier_.end(), e);
  if (it == carrier_.end()) throw UnknownElement("element not in lattice " + id_);
  return static_cast<std::size_t>(it - carrier_.begin());
}

inline bool Lattice::leq(Element a, Element b) const {
  require(a);
  require(b);
  if (flat_) return a == b || a.is_bot() || b.is_top();
  return leq_[index_of(a) * size() + index_of(b)] != 0;
}

inline Element Lattice::meet(Element a, Element b) const {
  require(a);
  require(b);
  if (omega_) {
    if (a == b || b.is_top()) return a;
    if (a.is_top()) return b;
    return Element::bot();
  }
  return carrier_[meet_index(index_of(a), index_of(b))];
}

inline Element Lattice::join(Element a, Element b) const {
  require(a);
  require(b);
  if (omega_) {
    if (a == b || b.is_bot()) return a;
    if (a.is_bot()) return b;
    return Element::top();
  }
  return carrier_[join_index(index_of(a), index_of(b))];
}

inline Element Lattice::neg(Element a) const {
  require(a);
  if (omega_) return a.is_top() ? Element::bot() : a.is_bot() ? Element::top() : a;
  if (neg_.empty()) throw std::logic_error("lattice " + id_ + " has no negation installed");
  return neg_[index_of(a)];
}

inline Lattice Lattice::with_negation(std::vector<Element> table) const {
  require_finite("with_negation()");
  if (table.size() != carrier_.size())
    throw std::invalid_argument("negation table size mismatch");
  Lattice l = *this;
  l.neg_idx_.clear();
  for (Element e : table) l.neg_idx_.push_back(static_cast<std::uint16_t>(index_of(e)));
  l.neg_ = std::move(table);
  return l;
}

inline std::string Lattice::name(Element e) const {
  if (auto it = names_.find(e); it != names_.end()) return it->second;
  switch (e.kind) {
    case Element::Kind::Top: return "Top";
    case Element::Kind::Bot: return "Bot";
    case Element::Kind::Mid: return "Mid" + std::to_string(e.index);
  }
  return "?";
}

inline Element Lattice::parse_element(const std::string& s) const {
  for (const auto& [e, n] : names_)
    if (n == s) return e;
  Element e;
  if (s == "Top") e = Element::top();
  else if (s == "Bot") e = Element::bot();
  else if (s.size() > 3 && s.starts_with("Mid")) {
    try {
      std::size_t used = 0;
      unsigned long k = std::stoul(s.substr(3), &used);
      if (used != s.size() - 3 || k == 0 || k > 0xffffffffUL) throw std::invalid_argument(s);
      e = Element::mid(static_cast<std::uint32_t>(k));
    } catch (const std::exception&) {
      throw UnknownElement("unknown element '" + s + "'");
    }
  } else {
    throw UnknownElement("unknown element '" + s + "'");
  }
  if (!contains(e)) throw UnknownElement("element '" + s + "' not in lattice " + id_);
  return e;
}

/// Resolves CLI lattice ids: m<n>, momega, n5, ladder5.
inline Lattice lattice_by_id(const std::string& id) {
  if (id == "momega") return Lattice::m_omega();
  if (id == "n5") return Lattice::n5();
  if (id == "ladder5") return Lattice::ladder5();
  if (id.size() >= 2 && id[0] == 'm') {
    std::string digits = id.substr(1);
    if (std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }) &&
        digits.size() <= 4) {
      auto n = static_cast<std::uint32_t>(std::stoul(digits));
      if (n >= 1) return Lattice::mn(n);
    }
  }
  throw std::invalid_argument("unknown lattice id '" + id + "'");
}

enum class Logic { ETL, NFL };

inline std::string to_string(Logic l) { return l == Logic::ETL ? "etl" : "nfl"; }

inline Logic parse_logic(const std::string& s) {
  if (s == "etl" || s == "ETL") return Logic::ETL;
  if (s == "nfl" || s == "NFL") return Logic::NFL;
  throw std::invalid_argument("unknown logic '" + s + "'");
}

/// A lattice plus a designated set: {Top} for ETL, everything but Bot for NFL.
struct Matrix {
  std::shared_ptr<const Lattice> lattice;
  Logic logic;

  Matrix(Lattice l, Logic g) : lattice(std::make_shared<const Lattice>(std::move(l))), logic(g) {}
  Matrix(std::shared_ptr<const Lattice> l, Logic g) : lattice(std::move(l)), logic(g) {}

  bool designated(Element e) const { return logic == Logic::ETL ? e.is_top() : !e.is_bot(); }
  std::string id() const { return to_string(logic) + "_" + lattice->id(); }
};

/// All involutive De Morgan maps on a finite lattice, as tables in carrier order,
/// enumerated in lexicographic order of their carrier-position images.
inline std::vector<std::vector<Element>> find_demorgan_negations(const Lattice& l) {
  if (!l.is_finite()) throw std::logic_error("find_demorgan_negations requires a finite lattice");
  const std::size_t k = l.size();
  std::vector<std::vector<Element>> out;
  std::vector<int> f(k, -1);
  // Enumerate involutions: each position is a fixed point or paired with a later one.
  auto check = [&] {
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        if (static_cast<std::size_t>(f[l.meet_index(a, b)]) != l.join_index(f[a], f[b])) return false;
        if (static_cast<std::size_t>(f[l.join_index(a, b)]) != l.meet_index(f[a], f[b])) return false;
      }
    return true;
  };
  std::vector<std::vector<int>> found;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    while (i < k && f[i] != -1) ++i;
    if (i == k) {
      if (check()) found.push_back(f);
      return;
    }
    for (std::size_t j = i; j < k; ++j) {
      if (f[j] != -1) continue;
      f[i] = static_cast<int>(j);
      f[j] = static_cast<int>(i);
      self(self, i + 1);
      f[i] = -1;
      f[j] = -1;
    }
  };
  rec(rec, 0);
  std::sort(found.begin(), found.end());
  for (const auto& m : found) {
    std::vector<Element> t;
    for (int j : m) t.push_back(l.carrier()[static_cast<std::size_t>(j)]);
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace latab

#endif  // LATAB_LATTICE_HPP
