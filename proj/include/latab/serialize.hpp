#ifndef LATAB_SERIALIZE_HPP
#define LATAB_SERIALIZE_HPP

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "latab/lattice.hpp"
#include "latab/oracle.hpp"
#include "latab/parse.hpp"
#include "latab/tableau.hpp"

namespace latab {

using json = nlohmann::ordered_json;

// Items:  {"label": "t", "formula": "p & q"}
//         {"relation": "~" | "!~", "left": "p", "right": "q & r"}
inline json to_json(const Item& i) {
  if (!i.is_pair()) return {{"label", std::string(1, to_char(i.label))}, {"formula", render(i.left)}};
  return {{"relation", i.relation == Relation::Same ? "~" : "!~"},
          {"left", render(i.left)},
          {"right", render(i.right)}};
}

inline Item item_from_json(const json& j) {
  if (j.contains("label")) {
    const std::string l = j.at("label").get<std::string>();
    Label lab = l == "t" ? Label::T : l == "m" ? Label::M : l == "f" ? Label::F
                                                                   : throw std::invalid_argument("bad label " + l);
    return Item::labelled(lab, parse_formula(j.at("formula").get<std::string>()));
  }
  const std::string r = j.at("relation").get<std::string>();
  if (r != "~" && r != "!~") throw std::invalid_argument("bad relation " + r);
  return Item::pair(r == "~" ? Relation::Same : Relation::Diff,
                    parse_formula(j.at("left").get<std::string>()),
                    parse_formula(j.at("right").get<std::string>()));
}

inline json to_json(const std::vector<Item>& is) {
  json a = json::array();
  for (const auto& i : is) a.push_back(to_json(i));
  return a;
}

inline std::vector<Item> items_from_json(const json& j) {
  std::vector<Item> out;
  for (const auto& e : j) out.push_back(item_from_json(e));
  return out;
}

inline json to_json(const Step& s) {
  json j{{"rule", s.rule}, {"premises", to_json(s.premises)}};
  if (!s.added.empty()) j["added"] = to_json(s.added);
  return j;
}

inline Step step_from_json(const json& j) {
  Step s{j.at("rule").get<std::string>(), items_from_json(j.at("premises")), {}};
  if (j.contains("added")) s.added = items_from_json(j.at("added"));
  return s;
}

inline json to_json(const TreeNode& n) {
  json j{{"status", to_string(n.status)}, {"added", to_json(n.added)}};
  json steps = json::array();
  for (const auto& s : n.steps) steps.push_back(to_json(s));
  j["steps"] = std::move(steps);
  if (n.split) j["split"] = to_json(*n.split);
  if (n.closure)
    j["closure"] = {{"condition", n.closure->condition}, {"items", to_json(n.closure->items)}};
  if (!n.children.empty()) {
    json cs = json::array();
    for (const auto& c : n.children) cs.push_back(to_json(c));
    j["children"] = std::move(cs);
  }
  return j;
}

inline TreeNode node_from_json(const json& j) {
  TreeNode n;
  const std::string st = j.at("status").get<std::string>();
  n.status = st == "expanded" ? NodeStatus::Expanded
             : st == "closed" ? NodeStatus::Closed
             : st == "open"   ? NodeStatus::Open
                              : NodeStatus::Unexplored;
  n.added = items_from_json(j.at("added"));
  for (const auto& s : j.at("steps")) n.steps.push_back(step_from_json(s));
  if (j.contains("split")) n.split = step_from_json(j.at("split"));
  if (j.contains("closure"))
    n.closure = ClosureWitness{j.at("closure").at("condition").get<std::string>(),
                               items_from_json(j.at("closure").at("items"))};
  if (j.contains("children"))
    for (const auto& c : j.at("children")) n.children.push_back(node_from_json(c));
  return n;
}

inline json to_proof_json(const TableauTree& t) {
  return {{"roots", to_json(t.roots)}, {"closed", t.closed()}, {"root", to_json(t.root)}};
}

inline TableauTree tree_from_json(const json& j) {
  return {items_from_json(j.at("roots")), node_from_json(j.at("root"))};
}

inline bool operator==(const Step& a, const Step& b) {
  return a.rule == b.rule && a.premises == b.premises && a.added == b.added;
}
inline bool operator==(const TreeNode& a, const TreeNode& b) {
  auto same_closure = [](const std::optional<ClosureWitness>& x, const std::optional<ClosureWitness>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x || (x->condition == y->condition && x->items == y->items);
  };
  return a.status == b.status && a.added == b.added && a.steps == b.steps && a.split == b.split &&
         same_closure(a.closure, b.closure) && a.children == b.children;
}
inline bool operator==(const TableauTree& a, const TableauTree& b) {
  return a.roots == b.roots && a.root == b.root;
}

/// Lattice used for naming elements of a result.
inline Lattice naming_lattice(const ProofResult& r) {
  try {
    return lattice_by_id(r.lattice);
  } catch (const std::exception&) {
    return r.config.capacity ? Lattice::mn(*r.config.capacity) : Lattice::m_omega();
  }
}

inline json to_json(const Lattice& l, const Valuation& v) {
  json j = json::object();
  for (const auto& [x, e] : v) j[x] = l.name(e);
  return j;
}

/// {sequent, logic, lattice, mode, strategy, result, trees, countermodel?, refutation?}
inline json to_proof_json(const ProofResult& r) {
  const Lattice l = naming_lattice(r);
  json j{{"sequent", render(r.sequent)},
         {"logic", to_string(r.logic)},
         {"lattice", r.lattice},
         {"mode", to_string(r.config.mode)},
         {"strategy", to_string(r.config.strategy)},
         {"tr_rules", r.config.tr_rules},
         {"result", r.proved ? "proved" : "refuted"},
         {"items", r.items}};
  json trees = json::array();
  for (const auto& t : r.trees) trees.push_back(to_proof_json(t));
  j["trees"] = std::move(trees);
  if (r.refutation) {
    const Refutation& f = *r.refutation;
    if (f.countermodel) j["countermodel"] = to_json(l, *f.countermodel);
    j["refutation"] = {{"tree", f.tree},
                       {"branch", to_json(f.branch)},
                       {"realisable", f.countermodel.has_value()},
                       {"greedy_fallback", f.greedy_fallback},
                       {"verified", f.verified}};
  }
  return j;
}

namespace detail {
inline std::string dot_escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '"' || c == '\\') o += '\\';
    o += c;
  }
  return o;
}
}  // namespace detail

/// One DOT node per tree node; edges are labelled by the splitting rule.
/// Closed leaves are drawn with a double border, open leaves in red.
inline std::string to_dot(const TableauTree& t, const std::string& name = "tableau") {
  std::ostringstream os;
  os << "digraph \"" << detail::dot_escape(name) << "\" {\n"
     << "  node [shape=box, fontname=\"monospace\"];\n";
  int next = 0;
  auto rec = [&](auto&& self, const TreeNode& n) -> int {
    const int id = next++;
    std::string label;
    for (const auto& i : n.added) label += detail::dot_escape(to_string(i)) + "\\l";
    for (const auto& s : n.steps)
      for (const auto& i : s.added) label += detail::dot_escape(to_string(i) + "  (" + s.rule + ")") + "\\l";
    std::string attrs;
    switch (n.status) {
      case NodeStatus::Closed:
        label += "X closed by " + n.closure->condition + "\\l";
        attrs = ", peripheries=2";
        break;
      case NodeStatus::Open: label += "open\\l"; attrs = ", color=red"; break;
      case NodeStatus::Unexplored: label += "unexplored\\l"; attrs = ", style=dashed"; break;
      case NodeStatus::Expanded: break;
    }
    os << "  n" << id << " [label=\"" << label << "\"" << attrs << "];\n";
    for (const auto& c : n.children) {
      const int cid = self(self, c);
      os << "  n" << id << " -> n" << cid << " [label=\"" << detail::dot_escape(n.split->rule)
         << "\"];\n";
    }
    return id;
  };
  rec(rec, t.root);
  os << "}\n";
  return os.str();
}

}  // namespace latab

#endif  // LATAB_SERIALIZE_HPP
