#include <gtest/gtest.h>

#include "ccloop/fixtures.hpp"
#include "ccloop/identities.hpp"
#include "ccloop/structure.hpp"
#include "oracles.hpp"

using namespace ccloop;
namespace fx = ccloop::fixtures;

namespace {

LoopTable cc6() {
  return LoopTable::from_rows(std::vector<std::vector<Elem>>{{0, 1, 2, 3, 4, 5},
                                                            {1, 2, 0, 4, 5, 3},
                                                            {2, 0, 1, 5, 3, 4},
                                                            {3, 5, 4, 1, 0, 2},
                                                            {4, 3, 5, 2, 1, 0},
                                                            {5, 4, 3, 0, 2, 1}});
}

}  // namespace

TEST(Parse, RccIdentity) {
  const auto id = parse_identity("x*(y*z) = ((x*y)/x)*(x*z)");
  EXPECT_EQ(id.vars, (std::vector<std::string>{"x", "y", "z"}));
  ASSERT_EQ(id.lhs->kind, Term::Kind::Mul);
  EXPECT_EQ(id.lhs->lhs->name, "x");
  ASSERT_EQ(id.rhs->kind, Term::Kind::Mul);
  EXPECT_EQ(id.rhs->lhs->kind, Term::Kind::RDiv);
}

TEST(Parse, Trivial) {
  const auto id = parse_identity("x*1 = x");
  EXPECT_EQ(id.lhs->kind, Term::Kind::Mul);
  EXPECT_EQ(id.lhs->rhs->kind, Term::Kind::One);
  EXPECT_EQ(id.rhs->kind, Term::Kind::Var);
}

TEST(Parse, PrecedenceAndAssociativity) {
  // postfix > * > \ = /, all left-associative
  const auto t = parse_term("a\\b*c/d^l");
  ASSERT_EQ(t->kind, Term::Kind::RDiv);
  EXPECT_EQ(t->rhs->kind, Term::Kind::LInv);
  EXPECT_EQ(t->lhs->kind, Term::Kind::LDiv);
  EXPECT_EQ(t->lhs->rhs->kind, Term::Kind::Mul);
  const auto u = parse_term("a*b*c");
  EXPECT_EQ(u->lhs->kind, Term::Kind::Mul);
  EXPECT_EQ(parse_term("x^r^l")->kind, Term::Kind::LInv);
}

TEST(Parse, SyntaxErrors) {
  try {
    parse_identity("x*(y");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.position, 4u);
    EXPECT_FALSE(e.expected.empty());
  }
  EXPECT_THROW(parse_identity("x*y"), SyntaxError);
  EXPECT_THROW(parse_identity("x = = y"), SyntaxError);
  EXPECT_THROW(parse_identity("x^q = x"), SyntaxError);
  EXPECT_THROW(parse_identity("X = x"), SyntaxError);
}

TEST(Parse, PrintRoundTrip) {
  const char* samples[] = {
      "x*(y*z) = ((x*y)/x)*(x*z)", "(z*y)*x = (z*x)*(x\\(y*x))", "(x*(y*x^r))*(x*y^r) = x",
      "x\\(y/z) = (x\\y)/z",       "1 = x*x^r",                  "(a*b)^l^r = b\\(a\\1)",
      "x*y*z = x*(y*z)",
  };
  for (const char* s : samples) {
    const auto id = parse_identity(s);
    const auto printed = print_identity(id);
    EXPECT_TRUE(same_identity(parse_identity(printed), id)) << s << " -> " << printed;
    EXPECT_EQ(print_identity(parse_identity(printed)), printed);
  }
}

TEST(CheckIdentity, Examples) {
  EXPECT_TRUE(check_identity(fx::t16(), parse_identity("(x*(y*x^r))*(x*y^r) = x")).holds);
  EXPECT_TRUE(check_identity(fx::cyclic(4), parse_identity("x*y = y*x")).holds);
  const auto r = check_identity(fx::t27(), parse_identity("x*(x*y) = (x*x)*y"));
  ASSERT_FALSE(r.holds);
  const auto& q = fx::t27();
  const Elem x = r.counterexample[0], y = r.counterexample[1];
  EXPECT_NE(q.mul(x, q.mul(x, y)), q.mul(q.mul(x, x), y));
  // least counterexample: nothing smaller fails
  for (Elem a = 0; a <= x; ++a)
    for (Elem b = 0; b < (a == x ? y : 27); ++b) EXPECT_EQ(q.mul(a, q.mul(a, b)), q.mul(q.mul(a, a), b));
}

TEST(CheckIdentity, Budget) {
  EXPECT_THROW(check_identity(fx::t27(), parse_identity("a*(b*(c*d)) = ((a*b)*c)*d"), 1000), TooManyVariables);
}

TEST(CheckIdentity, EvaluateMatchesDirectComputation) {
  const auto& q = fx::t16();
  const auto id = parse_identity("x\\(y/z^l) = x");
  const auto t = compile_term(*id.lhs, id.vars);
  for (Elem x = 0; x < 16; ++x)
    for (Elem y = 0; y < 16; ++y)
      for (Elem z = 0; z < 16; ++z) {
        const Elem zl = lambda(q, z);
        std::array<Elem, 3> a{x, y, z};
        EXPECT_EQ(evaluate(q, t, a), q.ldiv(x, q.rdiv(y, zl)));
      }
}

TEST(CC, AgreesWithOracle) {
  std::vector<LoopTable> loops{fx::t16(),          fx::t27(),        fx::symmetric(3), fx::quaternion(),
                               fx::octonion_loop(), fx::non_cc_order5(), cc6(),          fx::dihedral(5)};
  for (const auto& q : loops) {
    const auto g = oracle::grid_of(q.rows());
    const bool want = oracle::is_rcc(g) && oracle::is_lcc(g);
    EXPECT_EQ(is_cc(q), want);
    EXPECT_EQ(is_cc_by_conjugation(q), want);
    EXPECT_EQ(!rcc_violation(q) && !lcc_violation(q), want);
  }
  EXPECT_TRUE(is_cc(fx::t16()));
  EXPECT_TRUE(is_cc(fx::t27()));
  EXPECT_FALSE(is_cc(fx::non_cc_order5()));
}

TEST(CC, OrderFiveLoopsByEnumeration) {
  int cc = 0, total = 0;
  oracle::for_each_reduced_latin_square(5, [&](const oracle::Grid& g) {
    const auto q = LoopTable::from_rows(g);
    const bool want = oracle::is_rcc(g) && oracle::is_lcc(g);
    EXPECT_EQ(is_cc(q), want);
    cc += want;
    ++total;
  });
  EXPECT_EQ(total, 56);
  // every CC-loop of prime order is a group, and Z5 has 6 labelings fixing 0
  EXPECT_EQ(cc, 6);
}

TEST(PowerAssociativity, Fixtures) {
  for (Elem a = 0; a < 16; ++a) EXPECT_TRUE(is_pa_element(fx::t16(), a));
  for (Elem a = 0; a < 27; ++a) EXPECT_TRUE(is_pa_element(fx::t27(), a));
  EXPECT_TRUE(is_pa(fx::t16()));
  EXPECT_TRUE(is_pa(fx::t27()));
  EXPECT_TRUE(is_pa(fx::symmetric(4)));
  EXPECT_FALSE(is_pa(cc6()));
}

TEST(PowerAssociativity, ShortcutAgreesOnCCLoops) {
  for (const auto& q : {fx::t16(), fx::t27(), cc6(), fx::octonion_loop()}) {
    const auto g = oracle::grid_of(q.rows());
    for (Elem a = 0; a < q.order(); ++a) {
      EXPECT_EQ(is_pa_element(q, a), oracle::power_associative(g, a));
      EXPECT_EQ(is_pa_element_cc(q, a), is_pa_element(q, a));
    }
  }
}

TEST(Diassociativity, T16FailsAtFourAndEight) {
  const auto d = check_diassociative(fx::t16());
  EXPECT_FALSE(d.holds);
  const auto& q = fx::t16();
  const auto [a, b, c] = d.triple;
  EXPECT_NE(q.mul(a, q.mul(b, c)), q.mul(q.mul(a, b), c));
  EXPECT_NE(q.mul(4, q.mul(8, 4)), q.mul(q.mul(4, 8), 4));
  EXPECT_TRUE(is_diassociative(fx::octonion_loop()));
  EXPECT_TRUE(is_diassociative(fx::quaternion()));
}

TEST(Wip, Fixtures) {
  EXPECT_TRUE(has_wip(fx::t16()));
  EXPECT_EQ(wip_elements(fx::t16()).size(), 16);
  EXPECT_TRUE(has_wip(fx::octonion_loop()));
  EXPECT_FALSE(has_wip(fx::t27()));
  // in a group every element is WIP
  EXPECT_TRUE(wip_elements(fx::symmetric(3)).is_full());
}

TEST(Wip, DefinitionByHand) {
  // lambda R_c rho = L_c^-1 read pointwise: ((y^l) c)^r = c \ y
  for (const auto& q : {fx::t16(), fx::t27(), cc6()}) {
    for (Elem c = 0; c < q.order(); ++c) {
      bool want = true;
      for (Elem y = 0; y < q.order(); ++y) want = want && rho(q, q.mul(lambda(q, y), c)) == q.ldiv(c, y);
      EXPECT_EQ(is_wip_element(q, c), want);
    }
  }
}

TEST(Classify, Fixtures) {
  const auto p16 = classify(fx::t16());
  EXPECT_TRUE(p16.get(Property::CC));
  EXPECT_TRUE(p16.get(Property::PA));
  EXPECT_TRUE(p16.get(Property::WIP));
  EXPECT_FALSE(p16.get(Property::Diassociative));
  EXPECT_FALSE(p16.get(Property::Extra));
  const auto p27 = classify(fx::t27());
  EXPECT_TRUE(p27.get(Property::AIP));
  EXPECT_FALSE(p27.get(Property::Group));
  const auto po = classify(fx::octonion_loop());
  EXPECT_TRUE(po.get(Property::Extra));
  EXPECT_TRUE(po.get(Property::Moufang));
  EXPECT_FALSE(po.get(Property::Group));
  const auto pz = classify(fx::abelian({2, 2, 2}));
  EXPECT_TRUE(pz.get(Property::BooleanGroup));
  EXPECT_FALSE(classify(fx::cyclic(4)).get(Property::BooleanGroup));
}

TEST(Classify, EveryFalseFlagHasAReproducibleWitness) {
  for (const auto& q : {fx::t16(), fx::t27(), cc6(), fx::non_cc_order5(), fx::octonion_loop(), fx::symmetric(3)}) {
    const auto p = classify(q);
    for (Property prop : all_properties()) {
      if (p.get(prop)) {
        EXPECT_FALSE(p.witness(prop).has_value());
        continue;
      }
      ASSERT_TRUE(p.witness(prop).has_value()) << property_name(prop);
      EXPECT_TRUE(witness_confirms_violation(q, *p.witness(prop))) << property_name(prop);
    }
  }
}

TEST(Classify, CommutativeAgreesWithOracle) {
  for (const auto& q : {fx::t16(), fx::abelian({3, 3}), fx::quaternion()}) {
    const auto g = oracle::grid_of(q.rows());
    EXPECT_EQ(is_commutative(q), oracle::is_commutative(g));
    EXPECT_EQ(is_associative(q), oracle::is_associative(g));
  }
}

TEST(Classify, Names) {
  for (Property p : all_properties()) EXPECT_EQ(property_from_name(property_name(p)), p);
  EXPECT_EQ(property_from_name("associative"), Property::Group);
  EXPECT_FALSE(property_from_name("bogus").has_value());
  EXPECT_EQ(property_key(Property::WIP), "has_wip");
  EXPECT_EQ(property_key(Property::CC), "is_cc");
}
