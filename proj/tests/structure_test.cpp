#include <gtest/gtest.h>

#include "ccloop/fixtures.hpp"
#include "ccloop/identities.hpp"
#include "ccloop/structure.hpp"
#include "oracles.hpp"

using namespace ccloop;
namespace fx = ccloop::fixtures;

namespace {

std::set<int> as_set(const ElemSet& s) {
  const auto m = s.members();
  return {m.begin(), m.end()};
}

ElemSet upto(int n, Elem hi) {
  ElemSet s(n);
  for (Elem e = 0; e < hi; ++e) s.insert(e);
  return s;
}

}  // namespace

TEST(Autotopism, Examples) {
  const auto& q = fx::t16();
  const Perm id = Perm::identity(16);
  EXPECT_TRUE(is_autotopism(q, id, id, id));
  for (Elem x = 0; x < 16; ++x) {
    const auto t = translations(q, x);
    EXPECT_TRUE(is_autotopism(q, t.left * t.right.inverse(), t.left, t.left));
  }
  const auto s3 = fx::symmetric(3);
  for (Elem a = 0; a < 6; ++a) {
    const auto la = left_translation(s3, a);
    EXPECT_TRUE(is_autotopism(s3, la, Perm::identity(6), la));
  }
  EXPECT_FALSE(is_autotopism(q, left_translation(q, 4), id, left_translation(q, 4)));
  EXPECT_THROW(Autotopism(q, left_translation(q, 4), id, left_translation(q, 4)), LoopError);
}

TEST(Nuclei, MatchOracle) {
  for (const auto& q : {fx::t16(), fx::t27(), fx::octonion_loop(), fx::non_cc_order5(), fx::quaternion()}) {
    const auto g = oracle::grid_of(q.rows());
    const auto nu = nuclei(q);
    EXPECT_EQ(as_set(nu.left), oracle::left_nucleus(g));
    EXPECT_EQ(as_set(nu.middle), oracle::middle_nucleus(g));
    EXPECT_EQ(as_set(nu.right), oracle::right_nucleus(g));
    EXPECT_EQ(as_set(nu.nucleus), oracle::nucleus(g));
    EXPECT_EQ(as_set(center(q)), oracle::center(g));
  }
}

TEST(Nuclei, Fixtures) {
  EXPECT_EQ(nucleus(fx::t27()), upto(27, 3));
  EXPECT_EQ(center(fx::t27()), upto(27, 3));
  EXPECT_EQ(nucleus(fx::t16()), upto(16, 4));
  EXPECT_EQ(center(fx::t16()), upto(16, 4));
  EXPECT_TRUE(nucleus(fx::symmetric(3)).is_full());
  EXPECT_TRUE(center(fx::abelian({2, 3})).is_full());
  EXPECT_EQ(center(fx::symmetric(3)).size(), 1);
  EXPECT_EQ(commutant(fx::t16()), center(fx::t16()));
}

TEST(Subloops, Generation) {
  EXPECT_TRUE(generate_subloop(fx::t16(), std::vector<Elem>{4, 8}).members.is_full());
  EXPECT_EQ(generate_subloop(fx::t16(), std::vector<Elem>{0}).members, ElemSet(16, {0}));
  const auto s = generate_subloop(fx::t27(), std::vector<Elem>{3, 9});
  EXPECT_GE(s.members.size(), 9);
  EXPECT_FALSE(associates(fx::t27(), s.members));
}

TEST(Subloops, EnumerationMatchesSubsetOracle) {
  for (const auto& q : {fx::t16(), fx::octonion_loop(), fx::dihedral(4), fx::abelian({2, 2, 2})}) {
    const auto expect = oracle::all_subloops(oracle::grid_of(q.rows()));
    const auto got = all_subloops(q);
    std::set<std::set<int>> a(expect.begin(), expect.end()), b;
    for (const auto& s : got) b.insert(as_set(s.members));
    EXPECT_EQ(a, b);
    EXPECT_EQ(got.size(), expect.size());
  }
}

TEST(Associators, DefinitionAndGroups) {
  const auto& q = fx::t27();
  for (Elem x = 0; x < 27; x += 4)
    for (Elem y = 0; y < 27; y += 3)
      for (Elem z = 0; z < 27; z += 2) {
        const auto a = associator(q, x, y, z);
        EXPECT_EQ(q.mul(q.mul(x, q.mul(y, z)), a.paren), q.mul(q.mul(x, y), z));
        EXPECT_EQ(q.mul(a.bracket, q.mul(q.mul(x, y), z)), q.mul(x, q.mul(y, z)));
      }
  const auto s3 = fx::symmetric(3);
  EXPECT_EQ(associator(s3, 1, 2, 3).paren, 0);
  EXPECT_TRUE(associates(s3, ElemSet::full(6)));
  EXPECT_FALSE(association_failure(s3, ElemSet::full(6), ElemSet::full(6), ElemSet::full(6)).has_value());
  const auto w = association_failure(q, ElemSet::full(27), ElemSet::full(27), ElemSet::full(27));
  ASSERT_TRUE(w.has_value());
  EXPECT_NE(q.mul((*w)[0], q.mul((*w)[1], (*w)[2])), q.mul(q.mul((*w)[0], (*w)[1]), (*w)[2]));
}

TEST(InnerMaps, Definitions) {
  const auto& q = fx::t16();
  for (Elem x = 0; x < 16; ++x)
    for (Elem y = 0; y < 16; ++y) {
      const auto m = inner_maps(q, x, y);
      for (Elem z = 0; z < 16; ++z) {
        EXPECT_EQ(q.mul(m.r(z), q.mul(x, y)), q.mul(q.mul(z, x), y));
        EXPECT_EQ(q.mul(q.mul(y, x), m.l(z)), q.mul(y, q.mul(x, z)));
      }
      EXPECT_EQ(m.r(0), 0);
      EXPECT_EQ(m.l(0), 0);
    }
  const auto t = t_map(q, 4);
  for (Elem z = 0; z < 16; ++z) EXPECT_EQ(q.mul(4, t(z)), q.mul(z, 4));
}

TEST(Automorphisms, MatchPermutationOracle) {
  for (const auto& q : {fx::symmetric(3), fx::quaternion(), fx::abelian({2, 2}), fx::dihedral(4), fx::cyclic(7)}) {
    const auto expect = oracle::automorphisms(oracle::grid_of(q.rows()));
    const auto got = automorphisms(q);
    ASSERT_EQ(got.size(), expect.size());
    for (std::size_t i = 0; i < got.size(); ++i)
      EXPECT_EQ(std::vector<int>(got[i].images().begin(), got[i].images().end()), expect[i]);
  }
  EXPECT_EQ(automorphisms(fx::quaternion()).size(), 24u);
  EXPECT_EQ(automorphisms(fx::abelian({2, 2, 2})).size(), 168u);
}

TEST(Automorphisms, NuclearOnFixtures) {
  const auto& q = fx::t16();
  const auto aut = automorphisms(q);
  const auto naut = nuclear_automorphisms(q);
  EXPECT_FALSE(naut.empty());
  EXPECT_LE(naut.size(), aut.size());
  const auto nuc = nucleus(q);
  for (const auto& a : naut) {
    EXPECT_TRUE(is_automorphism(q, a));
    for (Elem x = 0; x < 16; ++x) EXPECT_TRUE(nuc.contains(q.ldiv(x, a(x))));
  }
  const auto s4 = fx::symmetric(4);
  EXPECT_EQ(nuclear_automorphisms(s4).size(), automorphisms(s4).size());
}

TEST(Isomorphism, FindsRelabelings) {
  std::mt19937_64 rng(3);
  for (const auto& q : {fx::t16(), fx::t27(), fx::octonion_loop()}) {
    const auto r = fx::random_relabel(q, rng);
    const auto iso = find_isomorphism(q, r);
    ASSERT_TRUE(iso.has_value());
    for (Elem x = 0; x < q.order(); ++x)
      for (Elem y = 0; y < q.order(); ++y) EXPECT_EQ((*iso)(q.mul(x, y)), r.mul((*iso)(x), (*iso)(y)));
  }
  EXPECT_FALSE(are_isomorphic(fx::cyclic(4), fx::abelian({2, 2})));
  EXPECT_FALSE(are_isomorphic(fx::quaternion(), fx::dihedral(4)));
  EXPECT_FALSE(are_isomorphic(fx::t16(), fx::octonion_loop()));
  EXPECT_TRUE(oracle::isomorphic(oracle::grid_of(fx::symmetric(3).rows()), oracle::grid_of(fx::dihedral(3).rows())));
  EXPECT_TRUE(are_isomorphic(fx::symmetric(3), fx::dihedral(3)));
}

TEST(Normality, FixturesAndTwoRoutes) {
  const auto& q27 = fx::t27();
  EXPECT_TRUE(is_normal(q27, upto(27, 9)));
  EXPECT_TRUE(is_normal(fx::t16(), nucleus(fx::t16())));
  const auto s3 = fx::symmetric(3);
  for (const auto& s : all_subloops(s3)) {
    EXPECT_EQ(s.is_normal, is_normal_by_inner_maps(s3, s.members));
    if (s.members.size() == 2) EXPECT_FALSE(s.is_normal);
    if (s.members.size() == 3) EXPECT_TRUE(s.is_normal);
  }
  for (const auto& s : all_subloops(fx::t16())) EXPECT_EQ(s.is_normal, is_normal_by_inner_maps(fx::t16(), s.members));
  EXPECT_THROW(is_normal(q27, ElemSet(27, {0, 9})), NotSubloop);
}

TEST(Quotient, T16ByNucleusIsBoolean) {
  const auto qn = quotient(fx::t16(), upto(16, 4));
  EXPECT_EQ(qn.table.order(), 4);
  EXPECT_TRUE(classify(qn.table).get(Property::BooleanGroup));
  EXPECT_EQ(qn.cosets[0], upto(16, 4));
  for (Elem x = 0; x < 16; ++x) EXPECT_TRUE(qn.cosets[static_cast<std::size_t>(qn.projection[static_cast<std::size_t>(x)])].contains(x));
  for (Elem x = 0; x < 16; ++x)
    for (Elem y = 0; y < 16; ++y)
      EXPECT_EQ(qn.projection[static_cast<std::size_t>(fx::t16().mul(x, y))],
                qn.table.mul(qn.projection[static_cast<std::size_t>(x)], qn.projection[static_cast<std::size_t>(y)]));
}

TEST(Quotient, T27ByNucleus) {
  const auto qn = quotient(fx::t27(), nucleus(fx::t27()));
  EXPECT_EQ(qn.table.order(), 9);
  const auto p = classify(qn.table);
  EXPECT_TRUE(p.get(Property::Group));
  EXPECT_TRUE(p.get(Property::Commutative));
  for (Elem x = 0; x < 9; ++x) EXPECT_EQ(power(qn.table, x, 3), 0);
}

TEST(Quotient, RejectsNonNormal) {
  const auto s3 = fx::symmetric(3);
  for (const auto& s : all_subloops(s3))
    if (s.members.size() == 2) EXPECT_THROW(quotient(s3, s.members), NotNormal);
}

TEST(Lagrange, FixturesAndOracle) {
  for (const auto& q : {fx::t16(), fx::t27()}) {
    const auto r = lagrange_report(q);
    EXPECT_TRUE(r.holds);
    EXPECT_TRUE(lagrange_check(q));
  }
  const auto subs = oracle::all_subloops(oracle::grid_of(fx::t16().rows()));
  for (const auto& h : subs) EXPECT_EQ(16 % h.size(), 0u);
}

TEST(Lagrange, DetectsFailure) {
  // a loop of order 5 with a subloop of order 2
  const auto q = LoopTable::from_rows(std::vector<std::vector<Elem>>{
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}});
  const auto r = lagrange_report(q);
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.violation.has_value());
}

TEST(CenterTower, T27AndT16) {
  const auto r = center_tower_check(fx::t27());
  EXPECT_EQ(r.prime, 3);
  EXPECT_EQ(r.exponent, 3);
  EXPECT_EQ(r.center_exponent, 1);
  EXPECT_TRUE(r.center_ok);
  EXPECT_TRUE(r.chain_ok);
  ASSERT_EQ(r.normal_chain.size(), 4u);
  for (int m = 0; m <= 3; ++m) {
    EXPECT_EQ(r.normal_chain[static_cast<std::size_t>(m)].size(), m == 0 ? 1 : m == 1 ? 3 : m == 2 ? 9 : 27);
    EXPECT_TRUE(is_normal(fx::t27(), r.normal_chain[static_cast<std::size_t>(m)]));
  }
  const auto s = center_tower_check(fx::t16());
  EXPECT_EQ(s.center_exponent, 2);
  EXPECT_TRUE(s.center_ok);
  EXPECT_THROW(center_tower_check(fx::symmetric(3)), NotPrimePower);
  EXPECT_THROW(center_tower_check(fx::non_cc_order5()), NotCC);
}

TEST(PrimePower, Basics) {
  EXPECT_EQ(prime_power(27), std::make_pair(3, 3));
  EXPECT_EQ(prime_power(2), std::make_pair(2, 1));
  EXPECT_FALSE(prime_power(12).has_value());
  EXPECT_FALSE(prime_power(1).has_value());
}
