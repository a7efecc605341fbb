#include <gtest/gtest.h>

#include "latab/conditions.hpp"
#include "latab/lattice.hpp"

using namespace latab;

namespace {

const Element T = Element::top(), F = Element::bot();
Element M(std::uint32_t k) { return Element::mid(k); }

std::vector<Lattice> finite_lattices() {
  return {Lattice::mn(1), Lattice::mn(2), Lattice::mn(3), Lattice::mn(4), Lattice::mn(7),
          Lattice::n5(), Lattice::ladder5()};
}

}  // namespace

TEST(Mn, Examples) {
  const Lattice m2 = Lattice::mn(2), m3 = Lattice::mn(3), m1 = Lattice::mn(1);
  EXPECT_EQ(m2.meet(M(1), M(2)), F);
  EXPECT_EQ(m2.join(M(1), M(2)), T);
  EXPECT_EQ(m3.join(M(1), M(3)), T);
  EXPECT_EQ(m1.join(M(1), M(1)), M(1));
  EXPECT_EQ(m3.meet(M(1), M(2)), F);
  EXPECT_EQ(m3.join(M(1), F), M(1));
  EXPECT_THROW(Lattice::mn(0), std::invalid_argument);
  EXPECT_THROW(m3.meet(M(4), T), UnknownElement);
}

TEST(Mn, PaperLetters) {
  const Lattice m2 = Lattice::mn(2), m3 = Lattice::mn(3);
  EXPECT_EQ(m2.name(T), "T");
  EXPECT_EQ(m2.name(M(1)), "B");
  EXPECT_EQ(m2.name(M(2)), "N");
  EXPECT_EQ(m2.name(F), "F");
  EXPECT_EQ(m3.name(M(2)), "0");
  EXPECT_EQ(m3.name(M(3)), "N");
  EXPECT_EQ(m3.parse_element("0"), M(2));
  EXPECT_EQ(Lattice::mn(4).name(M(3)), "Mid3");
  EXPECT_EQ(Lattice::mn(4).parse_element("Mid3"), M(3));
}

TEST(Mn, StandardNegation) {
  for (std::uint32_t n : {1u, 2u, 3u, 4u}) {
    const Lattice l = Lattice::mn(n);
    EXPECT_EQ(l.neg(T), F);
    EXPECT_EQ(l.neg(F), T);
    for (std::uint32_t k = 1; k <= n; ++k) EXPECT_EQ(l.neg(M(k)), M(k));
    const auto found = find_demorgan_negations(l);
    EXPECT_NE(std::find(found.begin(), found.end(), l.negation_table()), found.end()) << l.id();
  }
}

TEST(MOmega, Symbolic) {
  const Lattice w = Lattice::m_omega();
  EXPECT_EQ(w.join(M(7), M(9)), T);
  EXPECT_EQ(w.meet(M(7), M(9)), F);
  EXPECT_EQ(w.neg(M(7)), M(7));
  EXPECT_EQ(w.meet(M(7), M(7)), M(7));
  EXPECT_FALSE(w.is_finite());
  EXPECT_TRUE(w.is_flat());
  EXPECT_FALSE(w.middle_capacity());
  EXPECT_THROW(find_demorgan_negations(w), std::logic_error);
  EXPECT_THROW(check_like_conditions(Matrix(w, Logic::ETL)), std::invalid_argument);
}

TEST(N5, Shape) {
  const Lattice l = Lattice::n5();
  const Element x = l.parse_element("x"), y = l.parse_element("y"), z = l.parse_element("z");
  EXPECT_EQ(l.meet(y, z), z);
  EXPECT_EQ(l.join(x, z), T);
  EXPECT_EQ(l.meet(x, y), F);
  EXPECT_EQ(l.neg(x), x);
  EXPECT_EQ(l.neg(y), z);
  EXPECT_EQ(l.neg(z), y);
  EXPECT_EQ(l.neg(l.meet(y, z)), l.join(l.neg(y), l.neg(z)));
  const auto found = find_demorgan_negations(l);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0], l.negation_table());
}

TEST(Ladder5, NoDeMorganNegation) {
  const Lattice l = Lattice::ladder5();
  const Element a = l.parse_element("a"), b = l.parse_element("b"), c = l.parse_element("c");
  EXPECT_EQ(l.join(b, c), a);
  EXPECT_EQ(l.meet(a, T), a);
  EXPECT_EQ(l.meet(b, c), F);
  EXPECT_FALSE(l.has_negation());
  EXPECT_TRUE(find_demorgan_negations(l).empty());
}

TEST(Lattices, LatticeLaws) {
  for (const Lattice& l : finite_lattices()) {
    for (Element a : l.carrier()) {
      EXPECT_EQ(l.meet(a, a), a);
      EXPECT_EQ(l.join(a, a), a);
      EXPECT_EQ(l.meet(a, T), a);
      EXPECT_EQ(l.join(a, F), a);
      for (Element b : l.carrier()) {
        EXPECT_EQ(l.meet(a, b), l.meet(b, a));
        EXPECT_EQ(l.join(a, b), l.join(b, a));
        EXPECT_EQ(l.meet(a, l.join(a, b)), a);
        EXPECT_EQ(l.join(a, l.meet(a, b)), a);
        EXPECT_EQ(l.leq(a, b), l.meet(a, b) == a);
        for (Element c : l.carrier()) {
          EXPECT_EQ(l.meet(a, l.meet(b, c)), l.meet(l.meet(a, b), c));
          EXPECT_EQ(l.join(a, l.join(b, c)), l.join(l.join(a, b), c));
        }
      }
    }
    if (!l.has_negation()) continue;
    for (Element a : l.carrier()) {
      EXPECT_EQ(l.neg(l.neg(a)), a);
      for (Element b : l.carrier()) {
        if (l.leq(a, b)) EXPECT_TRUE(l.leq(l.neg(b), l.neg(a)));
      }
    }
  }
}

TEST(Lattices, Ids) {
  EXPECT_EQ(lattice_by_id("m3").id(), "m3");
  EXPECT_EQ(lattice_by_id("m12").size(), 14u);
  EXPECT_EQ(lattice_by_id("momega").id(), "momega");
  EXPECT_EQ(lattice_by_id("n5").id(), "n5");
  EXPECT_EQ(lattice_by_id("ladder5").id(), "ladder5");
  EXPECT_THROW(lattice_by_id("m0"), std::invalid_argument);
  EXPECT_THROW(lattice_by_id("q7"), std::invalid_argument);
  EXPECT_EQ(Matrix(Lattice::mn(3), Logic::NFL).id(), "nfl_m3");
}

TEST(Matrix, Designation) {
  const Matrix etl(Lattice::mn(2), Logic::ETL), nfl(Lattice::mn(2), Logic::NFL);
  EXPECT_TRUE(etl.designated(T));
  EXPECT_FALSE(etl.designated(M(1)));
  EXPECT_TRUE(nfl.designated(M(1)));
  EXPECT_FALSE(nfl.designated(F));
}

TEST(LikeConditions, Mn) {
  for (std::uint32_t n : {1u, 2u, 3u, 4u})
    for (Logic g : {Logic::ETL, Logic::NFL}) {
      const ConditionReport r = check_like_conditions(Matrix(Lattice::mn(n), g));
      EXPECT_TRUE(r.all_passed()) << r.matrix;
    }
}

TEST(LikeConditions, N5) {
  const ConditionReport r = check_like_conditions(Matrix(Lattice::n5(), Logic::ETL));
  EXPECT_TRUE(r.items[0].passed);
  EXPECT_TRUE(r.items[1].passed);
}

TEST(LikeConditions, FailingNegationHasWitness) {
  // Identity "negation" on M2 breaks De Morgan's laws and item 2.
  const Lattice l = Lattice::mn(2);
  const Lattice bad = l.with_negation(l.carrier());
  const ConditionReport r = check_like_conditions(Matrix(bad, Logic::ETL));
  EXPECT_FALSE(r.items[0].passed);
  EXPECT_FALSE(r.items[0].witness.empty());
}
