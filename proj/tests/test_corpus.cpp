#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "latab/corpus.hpp"
#include "latab/oracle.hpp"

using namespace latab;

namespace {

const CorpusEntry& entry(const std::vector<CorpusEntry>& c, const std::string& name) {
  for (const auto& e : c)
    if (e.name == name) return e;
  throw std::out_of_range("no corpus entry " + name);
}

std::optional<bool> expected(const CorpusEntry& e, Logic g, const std::string& lattice) {
  for (const auto& x : e.expectations)
    if (x.logic == g && x.lattice == lattice) return x.valid;
  return std::nullopt;
}

}  // namespace

TEST(Corpus, NamesAreUnique) {
  std::set<std::string> names;
  for (const auto& e : corpus()) EXPECT_TRUE(names.insert(e.name).second) << e.name;
}

TEST(Corpus, Contents) {
  const auto c = corpus();
  std::size_t etl_axioms = 0, nfl_axioms = 0;
  for (const auto& e : c)
    for (const auto& x : e.expectations)
      if (x.provenance == "cited: ETL axiom") ++etl_axioms;
      else if (x.provenance == "cited: NFL axiom") ++nfl_axioms;
  EXPECT_EQ(etl_axioms, 15u);
  EXPECT_EQ(nfl_axioms, 15u);
  for (int i = 1; i <= 5; ++i) {
    entry(c, "ETL-schema-" + std::to_string(i));
    entry(c, "NFL-schema-" + std::to_string(i));
  }
  for (int n = 2; n <= 6; ++n) {
    EXPECT_EQ(entry(c, "D" + std::to_string(n)).sequent, gen_dn(n));
    EXPECT_EQ(entry(c, "D" + std::to_string(n) + "-dual").sequent, dual_sequent(gen_dn(n)));
  }
  EXPECT_EQ(entry(c, "eq3").sequent, gen_eq3());
  EXPECT_EQ(entry(c, "C5").sequent, c5_sequent());
}

TEST(Corpus, SpecExamples) {
  const auto c = corpus();
  const auto& ds = entry(c, "ETL-DS");
  for (const char* l : {"m1", "m2", "m3", "m4"}) EXPECT_EQ(expected(ds, Logic::ETL, l), true);
  const auto& dist = entry(c, "ETL-dist-join-meet");
  EXPECT_EQ(dist.sequent, parse_sequent("(p | q) & (p | r) |- p | (q & r)"));
  EXPECT_EQ(expected(dist, Logic::ETL, "m2"), true);
  EXPECT_EQ(expected(dist, Logic::ETL, "m3"), false);
  EXPECT_EQ(expected(entry(c, "Fig2"), Logic::ETL, "m3"), false);
}

TEST(Corpus, ProvenanceTags) {
  for (const auto& e : corpus())
    for (const auto& x : e.expectations)
      EXPECT_TRUE(x.provenance == "oracle-derived" || x.provenance.starts_with("cited: ")) << e.name;
}

TEST(Corpus, EveryExpectationReproduced) {
  for (const auto& e : corpus())
    for (const auto& x : e.expectations) {
      const Matrix m(lattice_by_id(x.lattice), x.logic);
      const std::size_t k = variables(e.sequent).size();
      // Keep the run short: the largest families are exercised by the acceptance run.
      if (std::pow(static_cast<double>(m.lattice->size()), static_cast<double>(k)) > 3e6) continue;
      EXPECT_EQ(entails(m, e.sequent).valid, x.valid) << e.name << " " << m.id() << " [" << x.provenance << "]";
    }
}

TEST(Corpus, JsonLinesRoundTrip) {
  const auto c = corpus();
  std::stringstream ss;
  write_corpus_jsonl(ss, c);
  const auto back = read_corpus_jsonl(ss);
  ASSERT_EQ(back.size(), c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    EXPECT_EQ(back[i].name, c[i].name);
    EXPECT_EQ(back[i].sequent, c[i].sequent);
    ASSERT_EQ(back[i].expectations.size(), c[i].expectations.size());
    for (std::size_t j = 0; j < c[i].expectations.size(); ++j) {
      EXPECT_EQ(back[i].expectations[j].valid, c[i].expectations[j].valid);
      EXPECT_EQ(back[i].expectations[j].lattice, c[i].expectations[j].lattice);
      EXPECT_EQ(back[i].expectations[j].provenance, c[i].expectations[j].provenance);
    }
  }
}

TEST(Corpus, ExportedFileIsCurrent) {
  std::ifstream in(LATAB_SOURCE_DIR "/data/corpus.jsonl");
  ASSERT_TRUE(in) << "data/corpus.jsonl missing";
  std::stringstream file, fresh;
  file << in.rdbuf();
  write_corpus_jsonl(fresh, corpus());
  EXPECT_EQ(file.str(), fresh.str()) << "regenerate with: latab corpus --export data/corpus.jsonl";
}
