#include <gtest/gtest.h>

#include "ccloop/construct.hpp"
#include "ccloop/fixtures.hpp"
#include "ccloop/identities.hpp"
#include "oracles.hpp"

using namespace ccloop;
namespace fx = ccloop::fixtures;

namespace {

ActionMap powers_of(const LoopTable& k, const Perm& alpha, int order) {
  std::vector<Perm> phi;
  for (int i = 0; i < order; ++i) phi.push_back(alpha.pow(i));
  return ActionMap(fx::cyclic(order), k, std::move(phi));
}

const Perm kDoubling(std::vector<Elem>{0, 2, 4, 1, 3});
const Perm kNeg3(std::vector<Elem>{0, 2, 1});

// (a,x)(b,y) = (ab, phi_b(x) y), recomputed from the definition.
void expect_product_formula(const ActionMap& act, const LoopTable& p) {
  const auto& a = act.domain();
  const auto& k = act.codomain();
  const int nk = k.order();
  for (Elem x = 0; x < a.order(); ++x)
    for (Elem u = 0; u < nk; ++u)
      for (Elem y = 0; y < a.order(); ++y)
        for (Elem v = 0; v < nk; ++v)
          ASSERT_EQ(p.mul(x * nk + u, y * nk + v), a.mul(x, y) * nk + k.mul(act.phi(y)(u), v));
}

std::optional<Perm> first_non_nuclear_automorphism(const LoopTable& q) {
  const auto nuc = nucleus(q);
  for (const auto& a : automorphisms(q))
    if (!is_nuclear(q, a, nuc)) return a;
  return std::nullopt;
}

}  // namespace

TEST(ActionMap, Validation) {
  EXPECT_NO_THROW(powers_of(fx::cyclic(3), kNeg3, 2));
  EXPECT_THROW(ActionMap(fx::cyclic(2), fx::cyclic(3), {Perm::identity(3)}), BadAction);
  EXPECT_THROW(ActionMap(fx::cyclic(2), fx::cyclic(3), {kNeg3, kNeg3}), BadAction);
  EXPECT_THROW(ActionMap(fx::cyclic(2), fx::cyclic(3), {Perm::identity(3), Perm(std::vector<Elem>{1, 0, 2})}),
               BadAction);
  const ActionMap bad(fx::cyclic(3), fx::cyclic(3), {Perm::identity(3), kNeg3, kNeg3});
  EXPECT_FALSE(bad.is_homomorphism());
  EXPECT_TRUE(powers_of(fx::cyclic(5), kDoubling, 4).is_homomorphism());
  EXPECT_TRUE(powers_of(fx::cyclic(5), kDoubling, 4).acts_by_automorphisms());
}

TEST(Semidirect, MatchesDefinition) {
  for (const auto& act : {ActionMap::trivial(fx::cyclic(2), fx::cyclic(3)), powers_of(fx::cyclic(3), kNeg3, 2),
                          powers_of(fx::cyclic(5), kDoubling, 4), ActionMap::trivial(fx::cyclic(2), fx::t16())}) {
    const auto p = semidirect(act);
    EXPECT_EQ(p.order(), act.domain().order() * act.codomain().order());
    expect_product_formula(act, p);
    EXPECT_TRUE(oracle::is_latin_with_identity(oracle::grid_of(p.rows())));
  }
}

TEST(Semidirect, ClassicalGroups) {
  EXPECT_TRUE(are_isomorphic(semidirect(ActionMap::trivial(fx::cyclic(2), fx::cyclic(3))), fx::cyclic(6)));
  const auto s3 = semidirect(powers_of(fx::cyclic(3), kNeg3, 2));
  EXPECT_TRUE(oracle::isomorphic(oracle::grid_of(s3.rows()), oracle::grid_of(fx::symmetric(3).rows())));
  EXPECT_EQ(direct_product(fx::cyclic(2), fx::cyclic(2)), fx::abelian({2, 2}));
  const auto f20 = semidirect(powers_of(fx::cyclic(5), kDoubling, 4));
  EXPECT_TRUE(oracle::is_associative(oracle::grid_of(f20.rows())));
  EXPECT_EQ(center(f20).size(), 1);
}

TEST(SemidirectTheorem, NuclearActionsGiveCC) {
  const auto r = check_semidirect_theorem(powers_of(fx::cyclic(3), kNeg3, 2));
  EXPECT_TRUE(r.cc && r.nuclear && r.triples);
  const auto t = check_semidirect_theorem(ActionMap::trivial(fx::cyclic(3), fx::t16()));
  EXPECT_TRUE(t.cc && t.nuclear && t.triples);
  const auto p = semidirect(ActionMap::trivial(fx::cyclic(3), fx::t16()));
  const auto g = oracle::grid_of(p.rows());
  EXPECT_TRUE(oracle::is_rcc(g) && oracle::is_lcc(g));
}

TEST(SemidirectTheorem, NonNuclearActionOnT16FailsAllThree) {
  const auto alpha = first_non_nuclear_automorphism(fx::t16());
  ASSERT_TRUE(alpha.has_value());
  const auto act = powers_of(fx::t16(), *alpha, static_cast<int>(alpha->order()));
  const auto r = check_semidirect_theorem(act);
  EXPECT_FALSE(r.cc);
  EXPECT_FALSE(r.nuclear);
  EXPECT_FALSE(r.triples);
  const auto g = oracle::grid_of(semidirect(act).rows());
  EXPECT_FALSE(oracle::is_rcc(g) && oracle::is_lcc(g));
}

TEST(SemidirectTheorem, AgreesOnEveryCyclicActionOnT27) {
  const auto& k = fx::t27();
  int seen = 0;
  for (const auto& a : automorphisms(k)) {
    if (a.order() > 3 || seen >= 12) continue;
    const auto act = powers_of(k, a, static_cast<int>(a.order()));
    const auto r = check_semidirect_theorem(act);
    EXPECT_TRUE(r.agree());
    EXPECT_EQ(r.nuclear, is_nuclear(k, a, nucleus(k)));
    ++seen;
  }
  EXPECT_GT(seen, 0);
}

TEST(SemidirectTheorem, Errors) {
  EXPECT_THROW(check_semidirect_theorem(ActionMap::trivial(fx::non_cc_order5(), fx::cyclic(2))), NotCC);
  const ActionMap bad(fx::cyclic(3), fx::cyclic(3), {Perm::identity(3), kNeg3, kNeg3});
  EXPECT_THROW(check_semidirect_theorem(bad), NotHomomorphism);
}

TEST(Triples, IdentityActionTriplesAreAutotopisms) {
  const auto& k = fx::t16();
  for (Elem x = 0; x < 16; ++x) {
    const auto u = u_triple(k, x, x);
    const auto v = v_triple(k, x, x);
    EXPECT_TRUE(is_autotopism(k, u.alpha, u.beta, u.gamma));
    EXPECT_TRUE(is_autotopism(k, v.alpha, v.beta, v.gamma));
  }
}

TEST(Holomorph, SmallGroups) {
  const auto h3 = holomorph(fx::cyclic(3));
  EXPECT_TRUE(oracle::isomorphic(oracle::grid_of(h3.table.rows()), oracle::grid_of(fx::symmetric(3).rows())));
  EXPECT_EQ(holomorph(fx::cyclic(2)).table.order(), 2);
  const auto h5 = holomorph(fx::cyclic(5));
  EXPECT_EQ(h5.table.order(), 20);
  EXPECT_TRUE(oracle::is_associative(oracle::grid_of(h5.table.rows())));
}

TEST(Holomorph, T16IsCC) {
  const auto h = holomorph(fx::t16());
  EXPECT_EQ(h.table.order(), 16 * static_cast<int>(nuclear_automorphisms(fx::t16()).size()));
  EXPECT_TRUE(is_cc(h.table));
  const auto sub = holomorph(fx::t16(), std::vector<Perm>{});
  EXPECT_EQ(sub.table, fx::t16());
  EXPECT_THROW(holomorph(fx::non_cc_order5()), NotCC);
}

TEST(PermutationGroupTable, S3) {
  std::vector<Perm> els;
  std::vector<Elem> img{0, 1, 2};
  do els.emplace_back(img);
  while (std::next_permutation(img.begin(), img.end()));
  const auto t = permutation_group_table(els);
  EXPECT_TRUE(are_isomorphic(t, fx::symmetric(3)));
}

TEST(Internal, RecoversSemidirectFactors) {
  const auto act = powers_of(fx::cyclic(5), kDoubling, 4);
  const auto q = semidirect(act);
  ElemSet a(20), k(20);
  for (Elem i = 0; i < 4; ++i) a.insert(i * 5);
  for (Elem x = 0; x < 5; ++x) k.insert(x);
  const auto d = internal_decompose(q, a, k);
  EXPECT_EQ(d.a_elems, (std::vector<Elem>{0, 5, 10, 15}));
  EXPECT_EQ(d.k_elems, (std::vector<Elem>{0, 1, 2, 3, 4}));
  for (Elem i = 0; i < 4; ++i) EXPECT_EQ(d.action.phi(i), act.phi(i));
  for (Elem i = 0; i < 4; ++i)
    for (Elem x = 0; x < 5; ++x) EXPECT_EQ(d.isomorphism(i * 5 + x), q.mul(d.a_elems[static_cast<std::size_t>(i)], x));
}

TEST(Internal, Errors) {
  const auto s3 = fx::symmetric(3);
  ElemSet two(6), three(6);
  for (const auto& s : all_subloops(s3)) {
    if (s.members.size() == 2 && two.empty()) two = s.members;
    if (s.members.size() == 3) three = s.members;
  }
  EXPECT_THROW(internal_decompose(s3, three, two), NotNormal);
  EXPECT_THROW(internal_decompose(s3, ElemSet(6, {0}), three), NotComplementary);
  Elem x = 1;
  while (s3.mul(x, x) == 0) ++x;
  EXPECT_THROW(internal_decompose(s3, ElemSet(6, {0, x}), three), NotSubloop);
}

TEST(Internal, T27OverOrderThreeComplementFails) {
  const auto& q = fx::t27();
  ElemSet h(27);
  for (Elem e = 0; e < 9; ++e) h.insert(e);
  const auto a = closure(q, ElemSet(27, {9}));
  ASSERT_EQ(a.size(), 3);
  try {
    (void)internal_decompose(q, a, h);
    FAIL() << "T27 is not a group, so it cannot split as a product of groups";
  } catch (const TriplesFail& e) {
    EXPECT_FALSE(e.which.empty());
    EXPECT_NE(q.mul(e.x, q.mul(e.y, e.z)), q.mul(q.mul(e.x, e.y), e.z));
  }
}

TEST(SubTable, Restriction) {
  const auto s = sub_table(fx::t16(), {0, 1, 2, 3});
  EXPECT_EQ(s.order(), 4);
  for (Elem x = 0; x < 4; ++x)
    for (Elem y = 0; y < 4; ++y) EXPECT_EQ(s.mul(x, y), fx::t16().mul(x, y));
}

TEST(ActionText, RoundTrip) {
  const auto act = powers_of(fx::cyclic(5), kDoubling, 4);
  const auto text = write_action(act);
  const auto back = parse_action(text, act.domain(), act.codomain());
  EXPECT_EQ(back.phis(), act.phis());
  EXPECT_EQ(write_action(back), text);
  EXPECT_THROW(parse_action("0: 0 1 2 3 4\n", act.domain(), act.codomain()), LoopError);
  EXPECT_THROW(parse_action("garbage", act.domain(), act.codomain()), LoopError);
}
