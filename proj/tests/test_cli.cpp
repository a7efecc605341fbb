#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <string>

#include "latab/serialize.hpp"

namespace {

struct CliRun {
  int status;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(LATAB_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
  const int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

bool has(const CliRun& r, const std::string& s) { return r.out.find(s) != std::string::npos; }

}  // namespace

TEST(Cli, ProveFig1) {
  const CliRun r = run("prove --logic etl --lattice m3 \"(p|q)&r |- p|(q&r)\"");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_TRUE(has(r, "result: proved"));
}

TEST(Cli, ProveFig2) {
  const CliRun r = run("prove --logic etl --lattice m3 \"(p&~p)|(q&~q) |- r\"");
  EXPECT_EQ(r.status, 1) << r.out;
  EXPECT_TRUE(has(r, "countermodel: v(p)=B, v(q)=0, v(r)=B")) << r.out;
}

TEST(Cli, ProveMOmega) {
  const CliRun r = run("prove --logic etl --lattice momega \"p |- q\"");
  EXPECT_EQ(r.status, 1) << r.out;
}

TEST(Cli, ProveJsonAndDot) {
  const CliRun j = run("prove --lattice m3 --emit json \"(p&~p)|(q&~q) |- r\"");
  EXPECT_EQ(j.status, 1);
  const auto doc = latab::json::parse(j.out);
  EXPECT_EQ(doc["result"], "refuted");
  EXPECT_EQ(doc["countermodel"]["q"], "0");
  const CliRun d = run("prove --lattice m3 --emit dot \"(p|q)&r |- p|(q&r)\"");
  EXPECT_EQ(d.status, 0);
  EXPECT_TRUE(has(d, "digraph \"tableau0\""));
  EXPECT_TRUE(has(d, "digraph \"tableau1\""));
  const CliRun t = run("prove --lattice m2 --show-tree \"p & ~p |- q\"");
  EXPECT_EQ(t.status, 0);
  EXPECT_TRUE(has(t, "closed ("));
}

TEST(Cli, ProveOptions) {
  EXPECT_EQ(run("prove --lattice m2 --mode paper \"(p | q) & (q | r) & (r | s) & (s | t) & (t | p) |- "
                "p & q | q & r | r & s | s & t | t & p\"")
                .status,
            1);
  EXPECT_EQ(run("prove --lattice m2 --mode semantic \"(p | q) & (q | r) & (r | s) & (s | t) & (t | p) |- "
                "p & q | q & r | r & s | s & t | t & p\"")
                .status,
            0);
  EXPECT_EQ(run("prove --lattice m3 --tr-rules on --strategy exact \"p |- q | ~q\"").status, 1);
  const CliRun cap = run("prove --lattice m4 --node-cap 10 --sequent-from dn:4");
  EXPECT_EQ(cap.status, 2);
  EXPECT_TRUE(has(cap, "resource cap"));
}

TEST(Cli, Check) {
  EXPECT_EQ(run("check --logic nfl --lattice m3 \"p |- q|~q\"").status, 0);
  EXPECT_EQ(run("check --logic etl --lattice m3 \"p |- q|~q\"").status, 1);
  const CliRun d = run("check --logic etl --lattice m4 --sequent-from dn:3");
  EXPECT_EQ(d.status, 1);
  EXPECT_TRUE(has(d, "v(p1)=Mid1, v(p2)=Mid2, v(p3)=Mid3, v(p4)=Mid4")) << d.out;
  EXPECT_TRUE(has(d, "valuations examined"));
  const CliRun w = run("check --lattice momega \"p |- p\"");
  EXPECT_EQ(w.status, 2);
  EXPECT_TRUE(has(w, "prove"));
  const CliRun j = run("check --lattice n5 --emit json --sequent-from eq3");
  EXPECT_EQ(latab::json::parse(j.out)["matrix"], "etl_n5");
}

TEST(Cli, Errors) {
  EXPECT_EQ(run("prove \"p & & q |- r\"").status, 2);
  EXPECT_EQ(run("prove --lattice q9 \"p |- p\"").status, 2);
  EXPECT_EQ(run("prove --lattice n5 \"p |- p\"").status, 2);
  EXPECT_EQ(run("prove --logic fde \"p |- p\"").status, 2);
  EXPECT_EQ(run("check --lattice m3 --sequent-from dn:x").status, 2);
  EXPECT_EQ(run("check --var-cap 2 --sequent-from eq3").status, 2);
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
  EXPECT_EQ(run("gen pentagon").status, 2);
  EXPECT_EQ(run("lattice-info m0").status, 2);
  EXPECT_EQ(run("diff --lattice n5 --samples 1").status, 2);
  EXPECT_EQ(run("--help").status, 0);
}

TEST(Cli, Gen) {
  const CliRun r = run("gen dn 2");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "(p1|p2)&(p1|p3) |- p1|(p2&p3)\n");
  EXPECT_EQ(run("gen eq3").status, 0);
}

TEST(Cli, LatticeInfo) {
  const CliRun r = run("lattice-info ladder5");
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(has(r, "De Morgan negations: none"));
  const CliRun j = run("lattice-info n5 --emit json");
  const auto doc = latab::json::parse(j.out);
  ASSERT_EQ(doc["demorgan_negations"].size(), 1u);
  EXPECT_EQ(doc["elements"].size(), 5u);
  EXPECT_TRUE(has(run("lattice-info momega"), "Mid<k>"));
}

TEST(Cli, Corpus) {
  const CliRun r = run("corpus --lattice m3");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_TRUE(has(r, " 0 failed"));
  EXPECT_FALSE(has(r, "FAIL "));
}

TEST(Cli, DiffDeterministic) {
  const CliRun a = run("diff --logic nfl --lattice m2 --samples 200 --seed 7");
  const CliRun b = run("diff --logic nfl --lattice m2 --samples 200 --seed 7 --jobs 3");
  EXPECT_EQ(a.status, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(has(a, "C5: oracle valid, semantic proved, paper refuted"));
  const CliRun m1 = run("diff --lattice m1 --samples 200 --emit json");
  EXPECT_EQ(m1.status, 0);
  const auto doc = latab::json::parse(m1.out);
  EXPECT_EQ(doc["semantic_agree"], doc["total"]);
  EXPECT_EQ(doc["paper_agree"], doc["total"]);
}
