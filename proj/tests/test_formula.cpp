#include <gtest/gtest.h>

#include <random>

#include "latab/formula.hpp"
#include "latab/parse.hpp"
#include "latab/random.hpp"

using namespace latab;

namespace {
const Formula p = var("p"), q = var("q"), r = var("r");
}

TEST(Parse, Precedence) {
  EXPECT_EQ(parse_formula("p & q | r"), (p & q) | r);
  EXPECT_EQ(parse_formula("~p & q"), (~p) & q);
  EXPECT_EQ(parse_formula("p | q | r"), (p | q) | r);
  EXPECT_EQ(parse_formula("p & q & r"), (p & q) & r);
  EXPECT_EQ(parse_formula("~~p"), ~~p);
}

TEST(Parse, Sequent) {
  const Sequent s = parse_sequent("~p & (p | q) |- q");
  EXPECT_EQ(s.premise, ~p & (p | q));
  EXPECT_EQ(s.conclusion, q);
  EXPECT_TRUE(std::holds_alternative<Sequent>(parse("p |- q")));
  EXPECT_TRUE(std::holds_alternative<Formula>(parse("p | q")));
}

TEST(Parse, UnicodeAliases) {
  EXPECT_EQ(parse_sequent("¬p ∧ (p ∨ q) ⊢ q"), parse_sequent("~p & (p | q) |- q"));
}

TEST(Parse, ErrorPosition) {
  try {
    parse_formula("p & & q");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.token(), 3u);
    EXPECT_EQ(e.offset(), 4u);
    EXPECT_FALSE(e.expected().empty());
  }
  EXPECT_THROW(parse_formula(""), ParseError);
  EXPECT_THROW(parse_formula("(p"), ParseError);
  EXPECT_THROW(parse_formula("p q"), ParseError);
  EXPECT_THROW(parse_sequent("p"), ParseError);
  EXPECT_THROW(parse_sequent("p |- q |- r"), ParseError);
  EXPECT_THROW(parse_formula("p $ q"), ParseError);
}

TEST(Parse, Identifiers) {
  EXPECT_EQ(parse_formula("p_1 | Q2"), var("p_1") | var("Q2"));
  EXPECT_THROW(var(""), std::invalid_argument);
  EXPECT_THROW(var("1p"), std::invalid_argument);
}

TEST(Render, Examples) {
  EXPECT_EQ(render((p & q) | r), "p & q | r");
  EXPECT_EQ(render(~(p | q)), "~(p | q)");
  EXPECT_EQ(render(p & (q & r)), "p & (q & r)");
  EXPECT_EQ(render((p & q) & r), "p & q & r");
  EXPECT_EQ(render(~~p), "~~p");
  EXPECT_EQ(render(Sequent{p, q}), "p |- q");
}

TEST(Render, RoundTripRandom) {
  std::mt19937_64 rng(11);
  FormulaShape shape;
  shape.max_depth = 8;
  shape.vars = {"p", "q", "r", "s"};
  for (int i = 0; i < 2000; ++i) {
    const Formula f = random_formula(rng, shape);
    const std::string text = render(f);
    EXPECT_EQ(parse_formula(text), f) << text;
    EXPECT_EQ(render(parse_formula(text)), text);
    EXPECT_EQ(parse_formula(render_compact(f)), f);
  }
}

TEST(Render, Compact) {
  EXPECT_EQ(render_compact(gen_dn(2)), "(p1|p2)&(p1|p3) |- p1|(p2&p3)");
}

TEST(Subformulas, Examples) {
  EXPECT_EQ(subformulas(p), std::vector<Formula>{p});
  EXPECT_EQ(subformulas(p & ~p), (std::vector<Formula>{p, ~p, p & ~p}));
  EXPECT_EQ(subformulas(p | p), (std::vector<Formula>{p, p | p}));
  EXPECT_EQ(subformulas((p & q) | (q & p)).size(), 5u);
}

TEST(Dual, Examples) {
  EXPECT_EQ(dual(p & (q | r)), p | (q & r));
  EXPECT_EQ(dual(~p), ~p);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const Formula f = random_formula(rng, {});
    EXPECT_EQ(dual(dual(f)), f);
  }
}

TEST(Dual, Sequent) {
  EXPECT_EQ(dual_sequent(parse_sequent("~p & (p | q) |- q")), parse_sequent("q |- ~p | (p & q)"));
  EXPECT_EQ(dual_sequent(Sequent{p, p}), (Sequent{p, p}));
  for (const Sequent& s : random_sequents(5, 300)) EXPECT_EQ(dual_sequent(dual_sequent(s)), s);
}

TEST(Generators, D2) {
  EXPECT_EQ(gen_dn(2), parse_sequent("(p1 | p2) & (p1 | p3) |- p1 | (p2 & p3)"));
  EXPECT_EQ(gen_dn(3),
            parse_sequent("(p1|p2)&(p1|p3)&(p1|p4) |- p1|((p2&p3)|(p2&p4)|(p3&p4))"));
  EXPECT_THROW(gen_dn(1), std::invalid_argument);
}

TEST(Generators, DnCounts) {
  for (int n = 2; n <= 6; ++n) {
    const Sequent d = gen_dn(n);
    std::size_t conjuncts = 1;
    Formula f = d.premise;
    for (; f.kind() == Formula::Kind::And; f = f.left()) ++conjuncts;
    EXPECT_EQ(conjuncts, static_cast<std::size_t>(n));
    Formula big = d.conclusion.right();
    std::size_t pairs = 1;
    for (; big.kind() == Formula::Kind::Or; big = big.left()) ++pairs;
    EXPECT_EQ(pairs, static_cast<std::size_t>(n * (n - 1) / 2));
    std::vector<std::string> expect;
    for (int i = 1; i <= n + 1; ++i) expect.push_back("p" + std::to_string(i));
    std::sort(expect.begin(), expect.end());
    EXPECT_EQ(variables(d), expect);
  }
}

TEST(Generators, Eq3) {
  EXPECT_EQ(gen_eq3(), parse_sequent("p | (((p | q) | (r & s)) & (r & (q | s))) |- "
                                     "p | ((q | (r & s)) & (r | (p & s)))"));
  EXPECT_EQ(variables(gen_eq3()), (std::vector<std::string>{"p", "q", "r", "s"}));
}

TEST(Random, Deterministic) {
  const auto a = random_sequents(42, 50), b = random_sequents(42, 50);
  EXPECT_EQ(a, b);
  for (const auto& s : a) {
    EXPECT_LE(s.premise.depth(), 4u);
    EXPECT_LE(variables(s).size(), 3u);
  }
}
