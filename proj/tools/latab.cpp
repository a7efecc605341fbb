// latab: prove, check, diff, gen, corpus, lattice-info.
// Exit status: 0 proved/valid, 1 refuted/invalid, 2 error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "latab/conditions.hpp"
#include "latab/corpus.hpp"
#include "latab/diff.hpp"
#include "latab/formula.hpp"
#include "latab/lattice.hpp"
#include "latab/oracle.hpp"
#include "latab/parse.hpp"
#include "latab/serialize.hpp"
#include "latab/tableau.hpp"

using namespace latab;

namespace {

constexpr int kOk = 0, kRefuted = 1, kError = 2;

struct RunConfig {
  std::string logic = "etl";
  std::string lattice = "m3";
  std::string mode = "semantic";
  std::string strategy = "greedy";
  std::string tr_rules = "off";
  std::string emit = "text";
  std::size_t samples = 1000;
  std::uint64_t seed = 7;
  std::size_t var_cap = kDefaultVariableCap;
  std::size_t node_cap = 0;  // 0 keeps the library default
  unsigned jobs = 1;
  std::string sequent_from;
  std::string sequent_text;
  bool show_tree = false;
  std::string export_path;
};

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Sequent input_sequent(const RunConfig& rc) {
  if (!rc.sequent_from.empty()) {
    if (!rc.sequent_text.empty()) throw Failure("give a sequent or --sequent-from, not both");
    if (rc.sequent_from == "eq3") return gen_eq3();
    if (rc.sequent_from.starts_with("dn:")) {
      const std::string n = rc.sequent_from.substr(3);
      if (n.empty() || n.size() > 3 || n.find_first_not_of("0123456789") != std::string::npos)
        throw Failure("bad --sequent-from '" + rc.sequent_from + "'");
      return gen_dn(std::stoi(n));
    }
    throw Failure("unknown --sequent-from '" + rc.sequent_from + "' (expected dn:N or eq3)");
  }
  if (rc.sequent_text.empty()) throw Failure("no sequent given");
  return parse_sequent(rc.sequent_text);
}

TableauConfig tableau_config(const RunConfig& rc) {
  TableauConfig c;
  c.mode = rc.mode == "paper" ? ClosureMode::Paper : ClosureMode::Semantic;
  c.strategy = rc.strategy == "exact" ? Strategy::Exact : Strategy::Greedy;
  c.tr_rules = rc.tr_rules == "on";
  if (rc.node_cap) c.item_cap = rc.node_cap;
  return c;
}

std::string valuation_text(const Lattice& l, const Valuation& v) {
  std::string out;
  for (const auto& [x, e] : v) {
    if (!out.empty()) out += ", ";
    out += "v(" + x + ")=" + l.name(e);
  }
  return out.empty() ? "(no variables)" : out;
}

std::string items_text(const std::vector<Item>& is) {
  std::string out;
  for (const auto& i : is) {
    if (!out.empty()) out += ", ";
    out += to_string(i);
  }
  return out;
}

void print_node(std::ostream& os, const TreeNode& n, int depth) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  if (!n.added.empty()) os << pad << "+ " << items_text(n.added) << "\n";
  for (const auto& s : n.steps)
    os << pad << "  " << s.rule << " [" << items_text(s.premises) << "] => " << items_text(s.added) << "\n";
  switch (n.status) {
    case NodeStatus::Closed:
      os << pad << "  closed (" << n.closure->condition << "): " << items_text(n.closure->items) << "\n";
      break;
    case NodeStatus::Open: os << pad << "  open\n"; break;
    case NodeStatus::Unexplored: os << pad << "  not explored\n"; break;
    case NodeStatus::Expanded:
      os << pad << "  split " << n.split->rule << " on " << items_text(n.split->premises) << "\n";
      for (const auto& c : n.children) print_node(os, c, depth + 1);
      break;
  }
}

int cmd_prove(const RunConfig& rc) {
  const Sequent s = input_sequent(rc);
  const Logic logic = parse_logic(rc.logic);
  const ProofResult r = prove(s, logic, lattice_by_id(rc.lattice), tableau_config(rc));
  if (rc.emit == "json") {
    std::cout << to_proof_json(r).dump(2) << "\n";
  } else if (rc.emit == "dot") {
    for (std::size_t t = 0; t < r.trees.size(); ++t) std::cout << to_dot(r.trees[t], "tableau" + std::to_string(t));
  } else {
    const Lattice l = naming_lattice(r);
    std::cout << "sequent: " << render(s) << "\n"
              << "matrix: " << to_string(logic) << "_" << r.lattice << " (" << to_string(r.config.mode)
              << " closure, " << to_string(r.config.strategy) << " extraction"
              << (r.config.tr_rules ? ", Tr rules" : "") << ")\n"
              << "result: " << (r.proved ? "proved" : "refuted") << "\n";
    if (r.refutation) {
      const Refutation& f = *r.refutation;
      std::cout << "open branch (tree " << f.tree << "): " << items_text(f.branch) << "\n";
      if (f.countermodel) {
        std::cout << "countermodel: " << valuation_text(l, *f.countermodel) << "\n";
        if (f.greedy_fallback) std::cout << "note: greedy colouring failed, exact colouring used\n";
        if (!f.verified) std::cout << "warning: countermodel does not refute the sequent\n";
      } else {
        std::cout << "countermodel: none (no open branch has a realising valuation)\n";
      }
    }
    std::cout << "items: " << r.items << "\n";
    if (rc.show_tree)
      for (std::size_t t = 0; t < r.trees.size(); ++t) {
        std::cout << "tree " << t << ": " << items_text(r.trees[t].roots) << "\n";
        print_node(std::cout, r.trees[t].root, 0);
      }
  }
  return r.proved ? kOk : kRefuted;
}

Lattice finite_lattice(const std::string& id) {
  Lattice l = lattice_by_id(id);
  if (!l.is_finite())
    throw Failure("lattice " + id + " is infinite and has no truth-table check; use `latab prove --lattice " +
                  id + "` instead");
  return l;
}

int cmd_check(const RunConfig& rc) {
  const Sequent s = input_sequent(rc);
  const Matrix m(finite_lattice(rc.lattice), parse_logic(rc.logic));
  const Verdict v = entails(m, s, rc.var_cap);
  if (rc.emit == "json") {
    json j{{"sequent", render(s)}, {"matrix", m.id()}, {"valid", v.valid}, {"examined", v.examined}};
    if (v.countermodel) j["countermodel"] = to_json(*m.lattice, *v.countermodel);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "sequent: " << render(s) << "\n"
              << "matrix: " << m.id() << "\n"
              << "result: " << (v.valid ? "valid" : "invalid") << "\n";
    if (v.countermodel) std::cout << "countermodel: " << valuation_text(*m.lattice, *v.countermodel) << "\n";
    std::cout << "valuations examined: " << v.examined << "\n";
  }
  return v.valid ? kOk : kRefuted;
}

int cmd_diff(const RunConfig& rc) {
  const Lattice l = finite_lattice(rc.lattice);
  if (!l.middle_capacity()) throw Failure("diff runs the tableau prover, which needs an Mn lattice");
  DiffConfig c;
  c.logic = parse_logic(rc.logic);
  c.n = *l.middle_capacity();
  c.samples = rc.samples;
  c.seed = rc.seed;
  c.jobs = rc.jobs;
  c.var_cap = rc.var_cap;
  c.tableau.strategy = rc.strategy == "exact" ? Strategy::Exact : Strategy::Greedy;
  c.tableau.tr_rules = rc.tr_rules == "on";
  if (rc.node_cap) c.tableau.item_cap = rc.node_cap;
  const DiffReport r = run_diff(c);
  if (rc.emit == "json") {
    json j{{"matrix", r.matrix},
           {"seed", rc.seed},
           {"samples", rc.samples},
           {"total", r.total()},
           {"semantic_agree", r.semantic_agree()},
           {"paper_agree", r.paper_agree()},
           {"bad_countermodels", r.bad_countermodels()},
           {"errors", r.errors()}};
    for (bool paper : {false, true}) {
      json ws = json::array();
      for (const DiffCase* w : r.witnesses(paper))
        ws.push_back({{"name", w->name},
                      {"sequent", render(w->sequent)},
                      {"oracle_valid", w->oracle_valid},
                      {"proved", paper ? w->paper_proved : w->semantic_proved},
                      {"error", w->error}});
      j[paper ? "paper_divergences" : "semantic_divergences"] = std::move(ws);
    }
    if (const DiffCase* c5 = r.find("C5"))
      j["C5"] = {{"oracle_valid", c5->oracle_valid},
                 {"semantic_proved", c5->semantic_proved},
                 {"paper_proved", c5->paper_proved}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << format_diff_report(r);
  }
  return r.semantic_ok() ? kOk : kRefuted;
}

int cmd_gen(const std::string& kind, int n) {
  if (kind == "eq3") {
    std::cout << render_compact(gen_eq3()) << "\n";
  } else if (kind == "dn") {
    if (n < 1) throw Failure("gen dn needs n >= 1");
    std::cout << render_compact(gen_dn(n)) << "\n";
  } else {
    throw Failure("unknown generator '" + kind + "' (expected dn or eq3)");
  }
  return kOk;
}

int cmd_corpus(const RunConfig& rc, bool lattice_given, bool logic_given) {
  const auto entries = corpus();
  if (!rc.export_path.empty()) {
    std::ofstream out(rc.export_path);
    if (!out) throw Failure("cannot write " + rc.export_path);
    write_corpus_jsonl(out, entries);
  }
  std::size_t run = 0, failed = 0, skipped = 0;
  json rows = json::array();
  for (const auto& e : entries)
    for (const auto& x : e.expectations) {
      if (lattice_given && x.lattice != rc.lattice) continue;
      if (logic_given && x.logic != parse_logic(rc.logic)) continue;
      const Matrix m(lattice_by_id(x.lattice), x.logic);
      std::optional<bool> got;
      try {
        got = entails(m, e.sequent, rc.var_cap).valid;
      } catch (const VariableLimitExceeded&) {
      }
      const char* status = !got ? "SKIP" : *got == x.valid ? "PASS" : "FAIL";
      if (!got) ++skipped;
      else if (*got != x.valid) ++failed;
      ++run;
      if (rc.emit == "json") {
        json row{{"name", e.name}, {"matrix", m.id()}, {"expected", x.valid}, {"status", status},
                 {"provenance", x.provenance}};
        if (got) row["oracle"] = *got;
        rows.push_back(std::move(row));
      } else {
        std::cout << status << "  " << e.name << "  " << m.id() << "  expected "
                  << (x.valid ? "valid" : "invalid") << "  [" << x.provenance << "]\n";
      }
    }
  if (rc.emit == "json")
    std::cout << json{{"expectations", run}, {"failed", failed}, {"skipped", skipped}, {"rows", rows}}.dump(2)
              << "\n";
  else
    std::cout << run << " expectations, " << failed << " failed, " << skipped << " skipped (variable cap)\n";
  return failed ? kRefuted : kOk;
}

std::vector<std::string> negation_names(const Lattice& l, const std::vector<Element>& t) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < t.size(); ++i) out.push_back(l.name(l.carrier()[i]) + "->" + l.name(t[i]));
  return out;
}

int cmd_lattice_info(const std::string& id, const std::string& emit) {
  const Lattice l = lattice_by_id(id);
  if (!l.is_finite()) {
    if (emit == "json")
      std::cout << json{{"id", l.id()}, {"finite", false}, {"flat", true}}.dump(2) << "\n";
    else
      std::cout << "lattice " << l.id() << ": Bot < Mid<k> < Top for every k >= 1, middle elements pairwise "
                   "incomparable\nnegation: Top->Bot, Bot->Top, Mid<k>->Mid<k>\n";
    return kOk;
  }
  std::vector<std::string> elements, order;
  for (Element e : l.carrier()) elements.push_back(l.name(e));
  for (Element a : l.carrier())
    for (Element b : l.carrier())
      if (a != b && l.leq(a, b)) order.push_back(l.name(a) + "<" + l.name(b));
  std::vector<std::string> neg;
  if (l.has_negation()) neg = negation_names(l, l.negation_table());
  const auto found = find_demorgan_negations(l);
  std::optional<ConditionReport> report;
  if (l.has_negation()) report = check_like_conditions(Matrix(l, Logic::ETL));

  if (emit == "json") {
    json j{{"id", l.id()}, {"finite", true}, {"flat", l.is_flat()}, {"elements", elements}, {"order", order}};
    j["negation"] = l.has_negation() ? json(neg) : json(nullptr);
    json dm = json::array();
    for (const auto& t : found) dm.push_back(negation_names(l, t));
    j["demorgan_negations"] = std::move(dm);
    if (report) {
      json items = json::array();
      for (const auto& i : report->items) items.push_back({{"passed", i.passed}, {"witness", i.witness}});
      j["etl_conditions"] = std::move(items);
    }
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
    return s;
  };
  std::cout << "lattice " << l.id() << "\n"
            << "elements: " << join(elements) << "\n"
            << "order: " << join(order) << "\n"
            << "negation: " << (l.has_negation() ? join(neg) : "none installed") << "\n";
  if (found.empty()) {
    std::cout << "De Morgan negations: none\n";
  } else {
    std::cout << "De Morgan negations: " << found.size() << "\n";
    for (const auto& t : found) std::cout << "  " << join(negation_names(l, t)) << "\n";
  }
  if (report)
    for (std::size_t i = 0; i < report->items.size(); ++i)
      std::cout << "ETL condition " << i + 1 << ": " << (report->items[i].passed ? "holds" : "fails")
                << (report->items[i].witness.empty() ? "" : " (" + report->items[i].witness + ")") << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Labelled tableaux and truth-table checking for ETL and NFL over Mn lattices"};
  app.require_subcommand(1);
  RunConfig rc;

  const std::vector<std::string> logics{"etl", "nfl"};
  auto add_matrix = [&](CLI::App* c) {
    c->add_option("--logic", rc.logic, "etl or nfl")->check(CLI::IsMember(logics));
    return c->add_option("--lattice", rc.lattice, "m<n>, momega, n5, ladder5");
  };
  auto add_sequent = [&](CLI::App* c) {
    c->add_option("sequent", rc.sequent_text, "sequent, e.g. \"p & ~p |- q\"");
    c->add_option("--sequent-from", rc.sequent_from, "dn:N or eq3");
  };
  auto add_emit = [&](CLI::App* c, std::vector<std::string> formats) {
    c->add_option("--emit", rc.emit, "output format")->check(CLI::IsMember(std::move(formats)));
  };
  auto add_tableau = [&](CLI::App* c) {
    c->add_option("--strategy", rc.strategy, "greedy or exact")->check(CLI::IsMember({"greedy", "exact"}));
    c->add_option("--tr-rules", rc.tr_rules, "on or off")->check(CLI::IsMember({"on", "off"}));
    c->add_option("--node-cap", rc.node_cap, "maximum number of tableau items");
  };

  auto* prove_cmd = app.add_subcommand("prove", "tableau proof search");
  add_matrix(prove_cmd);
  add_sequent(prove_cmd);
  add_tableau(prove_cmd);
  prove_cmd->add_option("--mode", rc.mode, "paper or semantic")->check(CLI::IsMember({"paper", "semantic"}));
  add_emit(prove_cmd, {"text", "json", "dot"});
  prove_cmd->add_flag("--show-tree", rc.show_tree, "print the trees in text output");

  auto* check_cmd = app.add_subcommand("check", "truth-table entailment check");
  add_matrix(check_cmd);
  add_sequent(check_cmd);
  add_emit(check_cmd, {"text", "json"});
  check_cmd->add_option("--var-cap", rc.var_cap, "maximum number of variables");

  auto* diff_cmd = app.add_subcommand("diff", "compare the tableau prover with the truth-table check");
  add_matrix(diff_cmd);
  add_tableau(diff_cmd);
  add_emit(diff_cmd, {"text", "json"});
  diff_cmd->add_option("--samples", rc.samples, "number of random sequents");
  diff_cmd->add_option("--seed", rc.seed, "random seed");
  diff_cmd->add_option("--var-cap", rc.var_cap, "skip corpus sequents with more variables");
  diff_cmd->add_option("--jobs", rc.jobs, "worker threads")->check(CLI::PositiveNumber);

  std::string gen_kind;
  int gen_n = 0;
  auto* gen_cmd = app.add_subcommand("gen", "print a generated sequent");
  gen_cmd->add_option("kind", gen_kind, "dn or eq3")->required();
  gen_cmd->add_option("n", gen_n, "index for dn");

  auto* corpus_cmd = app.add_subcommand("corpus", "check the built-in corpus expectations");
  auto* corpus_lattice = add_matrix(corpus_cmd);
  add_emit(corpus_cmd, {"text", "json"});
  corpus_cmd->add_option("--var-cap", rc.var_cap, "skip sequents with more variables");
  corpus_cmd->add_option("--export", rc.export_path, "also write the corpus as JSON lines");

  std::string info_id;
  auto* info_cmd = app.add_subcommand("lattice-info", "dump a lattice and its De Morgan negations");
  info_cmd->add_option("lattice", info_id, "lattice id")->required();
  add_emit(info_cmd, {"text", "json"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }

  try {
    if (*prove_cmd) return cmd_prove(rc);
    if (*check_cmd) return cmd_check(rc);
    if (*diff_cmd) return cmd_diff(rc);
    if (*gen_cmd) return cmd_gen(gen_kind, gen_n);
    if (*corpus_cmd)
      return cmd_corpus(rc, corpus_lattice->count() > 0, corpus_cmd->get_option("--logic")->count() > 0);
    if (*info_cmd) return cmd_lattice_info(info_id, rc.emit);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const ResourceCapExceeded& e) {
    std::cerr << "resource cap: " << e.what() << " (raise --node-cap)\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kError;
}
