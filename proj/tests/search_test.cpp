#include <gtest/gtest.h>

#include <set>

#include "ccloop/fixtures.hpp"
#include "ccloop/search.hpp"
#include "ccloop/structure.hpp"
#include "oracles.hpp"

using namespace ccloop;
namespace fx = ccloop::fixtures;

namespace {

SearchSpec spec_of(int n, std::initializer_list<const char*> req, std::size_t limit = 0) {
  SearchSpec s;
  s.order = n;
  for (const char* t : req) add_requirement(s, t);
  s.limit = limit;
  return s;
}

std::set<oracle::Grid> grids(const std::vector<LoopTable>& models) {
  std::set<oracle::Grid> out;
  for (const auto& m : models) out.insert(oracle::grid_of(m.rows()));
  return out;
}

}  // namespace

TEST(Spec, ParseAndWrite) {
  const auto s = parse_search_spec(
      "# demo\norder = 16\nrequire = cc, pa, nonassociative\nidentity = \"x*(x*y) = (x*x)*y\"\nlimit = 3\n"
      "iso_reduce = yes\nseed = 7\nsymmetry = none\ntimeout = 5\n");
  EXPECT_EQ(s.order, 16);
  EXPECT_EQ(s.require, (std::vector<Property>{Property::CC, Property::PA}));
  EXPECT_EQ(s.forbid, (std::vector<Property>{Property::Group}));
  ASSERT_EQ(s.identities.size(), 1u);
  EXPECT_EQ(s.limit, 3u);
  EXPECT_TRUE(s.iso_reduce);
  EXPECT_EQ(s.seed, 7u);
  EXPECT_FALSE(s.lex_min_row);
  EXPECT_EQ(s.timeout_seconds, 5);
  const auto back = parse_search_spec(write_search_spec(s));
  EXPECT_EQ(write_search_spec(back), write_search_spec(s));
  EXPECT_EQ(back.require, s.require);
  EXPECT_EQ(back.forbid, s.forbid);
}

TEST(Spec, ExponentToken) {
  SearchSpec s;
  add_requirement(s, "exponent-3");
  EXPECT_EQ(s.exponent, 3);
  add_requirement(s, "nonassociative");
  EXPECT_EQ(s.forbid, (std::vector<Property>{Property::Group}));
  EXPECT_THROW(add_requirement(s, "shiny"), LoopError);
  EXPECT_THROW(add_forbidden(s, "shiny"), LoopError);
}

TEST(Spec, ParseErrors) {
  try {
    parse_search_spec("order = 4\nlimit = many\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 2u);
  }
  EXPECT_THROW(parse_search_spec("require = cc\n"), ParseError);
  EXPECT_THROW(parse_search_spec("order = 4\ncolour = red\n"), ParseError);
  EXPECT_THROW(parse_search_spec("order = 4\nidentity = x*(y = y\n"), ParseError);
  EXPECT_THROW(parse_search_spec("order = 4\nrequire = shiny\n"), ParseError);
  EXPECT_THROW(parse_search_spec("order 4\n"), ParseError);
  EXPECT_THROW(parse_search_spec("order = 0\n"), ParseError);
}

TEST(Propagate, T16PrefixIsConsistent) {
  const auto& q = fx::t16();
  PartialTable t(16);
  for (Elem x = 1; x < 4; ++x)
    for (Elem y = 1; y < 16; ++y) ASSERT_TRUE(t.assign(x, y, q.mul(x, y)));
  Constraints c;
  c.rcc = c.lcc = c.pa = true;
  EXPECT_FALSE(propagate(t, c).has_value());
  for (Elem x = 0; x < 16; ++x)
    for (Elem y = 0; y < 16; ++y)
      if (t.value(x, y) >= 0) EXPECT_EQ(t.value(x, y), q.mul(x, y));
}

TEST(Propagate, IdempotentElementConflicts) {
  PartialTable t(5);
  EXPECT_FALSE(t.assign(1, 1, 1));
  EXPECT_TRUE(t.conflict().has_value());
}

TEST(Propagate, LatinSinglesFillTheLastCell) {
  PartialTable t(3);
  ASSERT_TRUE(t.assign(1, 1, 2));
  EXPECT_FALSE(propagate(t, Constraints{}).has_value());
  EXPECT_TRUE(t.complete());
  EXPECT_EQ(t.to_table(), fx::cyclic(3));
}

TEST(CanonicalRows, CycleTypes) {
  EXPECT_EQ(canonical_first_rows(4).size(), 2u);
  // cycle of 0 of length k, then a partition of n - k into parts >= 2
  EXPECT_EQ(canonical_first_rows(6).size(), 5u);
  EXPECT_EQ(canonical_first_rows(2).size(), 1u);
  for (const auto& r : canonical_first_rows(7)) {
    ASSERT_EQ(r.size(), 7u);
    EXPECT_EQ(r[0], 1);
    for (Elem y = 0; y < 7; ++y) EXPECT_NE(r[static_cast<std::size_t>(y)], y);
  }
}

TEST(Counts, UnconstrainedMatchesLatinSquareEnumeration) {
  for (int n = 1; n <= 5; ++n) {
    auto s = spec_of(n, {});
    s.lex_min_row = false;
    const auto r = find_models(s);
    EXPECT_EQ(static_cast<long long>(r.models.size()), oracle::count_reduced_latin_squares(n)) << n;
    EXPECT_EQ(r.status, SearchStatus::Exhausted);
    std::set<oracle::Grid> expect;
    oracle::for_each_reduced_latin_square(n, [&](const oracle::Grid& g) { expect.insert(g); });
    EXPECT_EQ(grids(r.models), expect);
  }
}

TEST(Counts, OrderSix) {
  auto s = spec_of(6, {});
  s.lex_min_row = false;
  EXPECT_EQ(find_models(s).models.size(), 9408u);
}

TEST(Search, OrderSixNonassociativeCCModels) {
  auto s = spec_of(6, {"cc", "nonassociative"});
  s.lex_min_row = false;
  const auto r = find_models(s);
  std::set<oracle::Grid> expect;
  oracle::for_each_reduced_latin_square(6, [&](const oracle::Grid& g) {
    if (oracle::is_rcc(g) && oracle::is_lcc(g) && !oracle::is_associative(g)) expect.insert(g);
  });
  EXPECT_EQ(expect.size(), 40u);
  EXPECT_EQ(grids(r.models), expect);
  EXPECT_EQ(iso_reduce(r.models).size(), 1u);
  s.lex_min_row = true;
  const auto reduced = find_models(s);
  EXPECT_FALSE(reduced.models.empty());
  EXPECT_LE(reduced.models.size(), 40u);
  EXPECT_EQ(iso_reduce(reduced.models).size(), 1u);
}

TEST(Search, OrderEight) {
  const auto r = find_models(spec_of(8, {"cc", "nonassociative"}));
  for (const auto& m : r.models) {
    const auto g = oracle::grid_of(m.rows());
    EXPECT_TRUE(oracle::is_rcc(g) && oracle::is_lcc(g));
    EXPECT_FALSE(oracle::is_associative(g));
  }
  auto t = spec_of(8, {"extra", "nonassociative"});
  EXPECT_EQ(find_models(t).status, SearchStatus::Unsatisfiable);
}

TEST(Search, OrderSixteenModelIsWip) {
  const auto r = find_models(spec_of(16, {"cc", "pa", "nonassociative"}, 1));
  ASSERT_EQ(r.models.size(), 1u);
  EXPECT_EQ(r.status, SearchStatus::LimitReached);
  const auto g = oracle::grid_of(r.models[0].rows());
  EXPECT_TRUE(oracle::is_rcc(g) && oracle::is_lcc(g));
  EXPECT_FALSE(oracle::is_associative(g));
  EXPECT_TRUE(has_wip(r.models[0]));
  for (Elem a = 0; a < 16; ++a) EXPECT_TRUE(oracle::power_associative(g, a));
}

TEST(Search, ExponentThreeAtOrderNine) {
  const auto r = find_models(spec_of(9, {"cc", "exponent-3"}, 0));
  ASSERT_FALSE(r.models.empty());
  for (const auto& m : r.models) {
    EXPECT_TRUE(oracle::is_associative(oracle::grid_of(m.rows())));
    for (Elem x = 0; x < 9; ++x) EXPECT_EQ(m.mul(x, m.mul(x, x)), 0);
  }
  EXPECT_EQ(iso_reduce(r.models).size(), 1u);
}

TEST(Search, IdentityConstraint) {
  auto s = spec_of(4, {});
  s.identities.push_back(parse_identity("x*x = 1"));
  s.lex_min_row = false;
  const auto r = find_models(s);
  ASSERT_EQ(r.models.size(), 1u);
  EXPECT_TRUE(are_isomorphic(r.models[0], fx::abelian({2, 2})));
  EXPECT_TRUE(satisfies(r.models[0], s));
  EXPECT_FALSE(satisfies(fx::cyclic(4), s));
}

TEST(Search, DeterministicAndSeedIndependentUpToIsomorphism) {
  const auto s = spec_of(6, {"cc", "nonassociative"}, 0);
  const auto a = find_models(s), b = find_models(s);
  EXPECT_EQ(a.models, b.models);
  auto seeded = s;
  seeded.seed = 99;
  const auto c = find_models(seeded);
  EXPECT_EQ(iso_reduce(c.models).size(), iso_reduce(a.models).size());
  EXPECT_EQ(grids(c.models), grids(a.models));
}

TEST(Search, OnModelCallbackSeesEveryModel) {
  auto s = spec_of(5, {});
  s.lex_min_row = false;
  std::size_t seen = 0;
  const auto r = find_models(s, [&](const LoopTable&) { ++seen; });
  EXPECT_EQ(seen, r.models.size());
  EXPECT_EQ(r.stats.models, r.models.size());
}

TEST(IsoReduce, Representatives) {
  std::mt19937_64 rng(1);
  std::vector<LoopTable> in{fx::cyclic(4), fx::abelian({2, 2}), fx::random_relabel(fx::cyclic(4), rng),
                            fx::random_relabel(fx::abelian({2, 2}), rng)};
  const auto out = iso_reduce(in);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_TRUE(are_isomorphic(out[0], fx::cyclic(4)));
  EXPECT_TRUE(are_isomorphic(out[1], fx::abelian({2, 2})));
  EXPECT_TRUE(iso_reduce({}).empty());
  auto s = spec_of(5, {});
  s.lex_min_row = false;
  EXPECT_EQ(iso_reduce(find_models(s).models).size(), 6u);
}

TEST(Guards, OrderBoundsAndTimeout) {
  EXPECT_THROW(find_models(spec_of(65, {})), OrderTooLarge);
  EXPECT_THROW(find_models(spec_of(40, {"cc"})), OrderTooLarge);
  auto s = spec_of(24, {"cc", "nonassociative"}, 0);
  s.lex_min_row = false;
  s.timeout_seconds = 0.2;
  const auto r = find_models(s);
  EXPECT_EQ(r.status, SearchStatus::TimedOut);
  EXPECT_LT(r.stats.wall_seconds, 5.0);
}

TEST(Stream, SummaryFooter) {
  const auto s = spec_of(3, {});
  const auto r = find_models(s);
  const auto text = write_search_stream(r, s);
  EXPECT_NE(text.find("# status: exhausted"), std::string::npos);
  EXPECT_NE(text.find("# models: 1"), std::string::npos);
  EXPECT_EQ(parse_tbl_stream(text).size(), 1u);
}
