// Cross-module properties: prover against oracle on small seeded suites.
// The full-size runs live in the acceptance binary.

#include <gtest/gtest.h>

#include "latab/diff.hpp"

using namespace latab;

TEST(Diff, DeterministicAcrossJobs) {
  DiffConfig c;
  c.logic = Logic::NFL;
  c.n = 2;
  c.samples = 300;
  c.include_corpus = false;
  const std::string one = format_diff_report(run_diff(c));
  c.jobs = 4;
  EXPECT_EQ(format_diff_report(run_diff(c)), one);
  EXPECT_EQ(format_diff_report(run_diff(c)), one);
}

TEST(Diff, C5AlwaysPresent) {
  DiffConfig c;
  c.n = 2;
  c.samples = 10;
  c.include_corpus = false;
  const DiffReport r = run_diff(c);
  ASSERT_TRUE(r.find("C5"));
  EXPECT_TRUE(r.find("C5")->oracle_valid);
  EXPECT_TRUE(r.find("C5")->semantic_proved);
  EXPECT_FALSE(r.find("C5")->paper_proved);
  EXPECT_EQ(r.witnesses(true).size(), 1u);
  EXPECT_NE(format_diff_report(r).find("C5: oracle valid, semantic proved, paper refuted"), std::string::npos);
}

TEST(Diff, SemanticAgreesOnSmallSuite) {
  for (Logic g : {Logic::ETL, Logic::NFL})
    for (std::uint32_t n : {1u, 2u, 3u, 4u}) {
      DiffConfig c;
      c.logic = g;
      c.n = n;
      c.samples = 500;
      c.seed = 99;
      c.include_corpus = false;
      const DiffReport r = run_diff(c);
      EXPECT_TRUE(r.semantic_ok()) << format_diff_report(r);
    }
}

TEST(Diff, SemanticVerdictMatchesSeparateRun) {
  // run_diff_case derives the semantic verdict from the paper-mode run.
  for (const auto& s : random_sequents(31, 300))
    for (std::uint32_t n : {1u, 2u, 3u}) {
      TableauConfig t;
      t.capacity = n;
      t.mode = ClosureMode::Semantic;
      DiffConfig c;
      c.n = n;
      c.logic = Logic::NFL;
      const DiffCase d = run_diff_case("x", s, c, Matrix(Lattice::mn(n), Logic::NFL));
      EXPECT_EQ(d.semantic_proved, prove(s, Logic::NFL, t).proved) << render(s);
    }
  DiffConfig c;
  c.n = 2;
  const DiffCase d = run_diff_case("C5", c5_sequent(), c, Matrix(Lattice::mn(2), Logic::ETL));
  TableauConfig t;
  t.capacity = 2;
  EXPECT_EQ(d.semantic_proved, prove(c5_sequent(), Logic::ETL, t).proved);
}

TEST(Lemmas, TrRulesConservative) {
  for (const auto& s : random_sequents(41, 400))
    for (Logic g : {Logic::ETL, Logic::NFL})
      for (std::uint32_t n : {1u, 2u, 3u}) {
        TableauConfig base;
        base.capacity = n;
        TableauConfig tr = base;
        tr.tr_rules = true;
        TableauConfig no_neg = tr;
        no_neg.negation_pair_rules = false;
        const bool v = prove(s, g, base).proved;
        EXPECT_EQ(prove(s, g, tr).proved, v) << render(s);
        EXPECT_EQ(prove(s, g, no_neg).proved, v) << render(s);
      }
}

TEST(MOmega, ProvedImpliesFiniteValidity) {
  const std::vector<Lattice> finite{Lattice::mn(1), Lattice::mn(2), Lattice::mn(3), Lattice::mn(4),
                                    Lattice::n5()};
  for (const auto& s : random_sequents(51, 400))
    for (Logic g : {Logic::ETL, Logic::NFL}) {
      const ProofResult r = prove(s, g, Lattice::m_omega());
      if (r.proved) {
        for (const Lattice& l : finite) EXPECT_TRUE(entails(Matrix(l, g), s).valid) << render(s) << " " << l.id();
      } else {
        ASSERT_TRUE(r.refutation && r.refutation->countermodel);
        EXPECT_TRUE(refutes(Matrix(Lattice::mn(8), g), *r.refutation->countermodel, s));
      }
    }
}

TEST(MOmega, SeparationFamilyRefuted) {
  for (int n = 2; n <= 4; ++n) {
    const ProofResult r = prove(gen_dn(n), Logic::ETL, Lattice::m_omega());
    ASSERT_FALSE(r.proved);
    ASSERT_TRUE(r.refutation->countermodel);
    EXPECT_TRUE(refutes(Matrix(Lattice::mn(static_cast<std::uint32_t>(n + 1)), Logic::ETL),
                        *r.refutation->countermodel, gen_dn(n)));
  }
}
