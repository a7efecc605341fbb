#ifndef LATAB_DIFF_HPP
#define LATAB_DIFF_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <iomanip>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "latab/corpus.hpp"
#include "latab/lattice.hpp"
#include "latab/oracle.hpp"
#include "latab/random.hpp"
#include "latab/tableau.hpp"

namespace latab {

/// Trees are not kept and the item cap is raised: the NFL D6 dual needs
/// about 5.5e7 items under the fixed rule order.
inline TableauConfig default_diff_tableau() {
  TableauConfig t;
  t.record_tree = false;
  t.item_cap = 200'000'000;
  return t;
}

struct DiffConfig {
  Logic logic = Logic::ETL;
  std::uint32_t n = 3;  // tableau capacity; the oracle runs over mn(n)
  std::size_t samples = 1000;
  std::uint64_t seed = 7;
  bool include_corpus = true;
  unsigned jobs = 1;
  /// Base tableau settings; `mode` and `capacity` are overridden per run.
  TableauConfig tableau = default_diff_tableau();
  std::size_t var_cap = kDefaultVariableCap;
};

struct DiffCase {
  std::string name;  // corpus name, or "sample-<i>"
  Sequent sequent;
  bool oracle_valid = false;
  bool semantic_proved = false;
  bool paper_proved = false;
  /// Paper mode refuted without any realisable open branch.
  bool paper_unrealisable = false;
  /// A tableau countermodel failed to refute the sequent (should never happen).
  bool bad_countermodel = false;
  std::string error;  // non-empty when a run threw
};

struct DiffReport {
  std::string matrix;
  std::vector<DiffCase> cases;

  std::size_t total() const { return cases.size(); }
  std::size_t semantic_agree() const {
    return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const DiffCase& c) {
      return c.error.empty() && c.semantic_proved == c.oracle_valid;
    }));
  }
  std::size_t paper_agree() const {
    return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const DiffCase& c) {
      return c.error.empty() && c.paper_proved == c.oracle_valid;
    }));
  }
  std::size_t bad_countermodels() const {
    return static_cast<std::size_t>(std::count_if(
        cases.begin(), cases.end(), [](const DiffCase& c) { return c.bad_countermodel; }));
  }
  std::size_t errors() const {
    return static_cast<std::size_t>(
        std::count_if(cases.begin(), cases.end(), [](const DiffCase& c) { return !c.error.empty(); }));
  }
  bool semantic_ok() const {
    return semantic_agree() == total() && bad_countermodels() == 0 && errors() == 0;
  }

  /// Distinct diverging sequents, smallest first (size, then rendering).
  std::vector<const DiffCase*> witnesses(bool paper) const {
    std::vector<const DiffCase*> out;
    std::set<std::string> seen;
    for (const auto& c : cases) {
      const bool proved = paper ? c.paper_proved : c.semantic_proved;
      if (c.error.empty() && proved == c.oracle_valid) continue;
      if (seen.insert(render(c.sequent)).second) out.push_back(&c);
    }
    std::stable_sort(out.begin(), out.end(), [](const DiffCase* a, const DiffCase* b) {
      const std::size_t sa = a->sequent.premise.size() + a->sequent.conclusion.size();
      const std::size_t sb = b->sequent.premise.size() + b->sequent.conclusion.size();
      if (sa != sb) return sa < sb;
      return render(a->sequent) < render(b->sequent);
    });
    return out;
  }

  const DiffCase* find(const std::string& name) const {
    for (const auto& c : cases)
      if (c.name == name) return &c;
    return nullptr;
  }
};

/// Runs one case: oracle over mn(n) and one paper-mode tableau run. Both modes
/// visit the same nodes in the same order and differ only in how a complete
/// unrealisable branch is treated, so the semantic verdict is "no realisable
/// open branch" on the same run.
inline DiffCase run_diff_case(const std::string& name, const Sequent& s, const DiffConfig& cfg,
                              const Matrix& m) {
  DiffCase c{name, s, false, false, false, false, false, {}};
  try {
    c.oracle_valid = entails(m, s, cfg.var_cap).valid;
    TableauConfig t = cfg.tableau;
    t.capacity = cfg.n;
    t.mode = ClosureMode::Paper;
    const ProofResult pap = prove(s, cfg.logic, t);
    c.paper_proved = pap.proved;
    c.semantic_proved = !(pap.refutation && pap.refutation->countermodel);
    if (pap.refutation) {
      c.paper_unrealisable = !pap.refutation->countermodel.has_value();
      if (pap.refutation->countermodel && !pap.refutation->verified) c.bad_countermodel = true;
    }
  } catch (const std::exception& e) {
    c.error = e.what();
  }
  return c;
}

/// The case list: seeded samples followed by the corpus; C5 is always present.
inline std::vector<std::pair<std::string, Sequent>> diff_inputs(const DiffConfig& cfg) {
  std::vector<std::pair<std::string, Sequent>> in;
  const auto samples = random_sequents(cfg.seed, cfg.samples);
  for (std::size_t i = 0; i < samples.size(); ++i)
    in.emplace_back("sample-" + std::to_string(i), samples[i]);
  if (cfg.include_corpus) {
    for (const auto& e : corpus())
      if (variables(e.sequent).size() <= cfg.var_cap) in.emplace_back(e.name, e.sequent);
  } else {
    in.emplace_back("C5", c5_sequent());
  }
  return in;
}

/// Deterministic for any number of jobs: results are stored by input index.
inline DiffReport run_diff(const DiffConfig& cfg) {
  const Matrix m(Lattice::mn(cfg.n), cfg.logic);
  const auto inputs = diff_inputs(cfg);
  std::vector<std::optional<DiffCase>> slots(inputs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < inputs.size();)
      slots[i] = run_diff_case(inputs[i].first, inputs[i].second, cfg, m);
  };
  const unsigned jobs = std::max(1u, cfg.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  DiffReport r{m.id(), {}};
  for (auto& c : slots) r.cases.push_back(std::move(*c));
  return r;
}

inline std::string percent(std::size_t a, std::size_t b) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << (b ? 100.0 * static_cast<double>(a) / static_cast<double>(b) : 100.0)
     << "%";
  return os.str();
}

inline std::string format_diff_report(const DiffReport& r, std::size_t max_witnesses = 20) {
  std::ostringstream os;
  auto verdict = [](bool v) { return v ? "valid" : "invalid"; };
  auto proved = [](bool v) { return v ? "proved" : "refuted"; };
  os << "matrix " << r.matrix << ": " << r.total() << " sequents\n";
  os << "semantic mode agreement: " << r.semantic_agree() << "/" << r.total() << " ("
     << percent(r.semantic_agree(), r.total()) << ")\n";
  os << "paper mode agreement:    " << r.paper_agree() << "/" << r.total() << " ("
     << percent(r.paper_agree(), r.total()) << ")\n";
  os << "countermodels failing re-evaluation: " << r.bad_countermodels() << "\n";
  os << "errors: " << r.errors() << "\n";
  for (bool paper : {false, true}) {
    const auto ws = r.witnesses(paper);
    os << (paper ? "paper" : "semantic") << " divergences: " << ws.size() << "\n";
    for (std::size_t i = 0; i < ws.size() && i < max_witnesses; ++i) {
      const DiffCase& c = *ws[i];
      os << "  " << c.name << ": " << render(c.sequent) << "  oracle " << verdict(c.oracle_valid)
         << ", tableau " << proved(paper ? c.paper_proved : c.semantic_proved);
      if (paper && c.paper_unrealisable) os << " (open branch has no realising valuation)";
      if (!c.error.empty()) os << " error: " << c.error;
      os << "\n";
    }
    if (ws.size() > max_witnesses) os << "  ... " << ws.size() - max_witnesses << " more\n";
  }
  if (const DiffCase* c = r.find("C5")) {
    os << "C5: oracle " << verdict(c->oracle_valid) << ", semantic " << proved(c->semantic_proved)
       << ", paper " << proved(c->paper_proved)
       << (c->paper_unrealisable ? " (open branch has no realising valuation)" : "") << "\n";
  }
  return os.str();
}

}  // namespace latab

#endif  // LATAB_DIFF_HPP
