#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "ccloop/errors.hpp"
#include "ccloop/perm.hpp"

using namespace ccloop;

namespace {

Perm random_perm(int n, std::mt19937_64& rng) {
  std::vector<Elem> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 0);
  std::shuffle(img.begin(), img.end(), rng);
  return Perm(img);
}

}  // namespace

TEST(Perm, RejectsNonBijections) {
  EXPECT_THROW(Perm(std::vector<Elem>{0, 0, 1}), LoopError);
  EXPECT_THROW(Perm(std::vector<Elem>{0, 3, 1}), LoopError);
  EXPECT_THROW(Perm(std::vector<Elem>{-1, 0}), LoopError);
  EXPECT_NO_THROW(Perm(std::vector<Elem>{}));
}

TEST(Perm, ComposesLeftToRight) {
  const Perm p(std::vector<Elem>{1, 2, 0});  // 0->1->2->0
  const Perm q(std::vector<Elem>{1, 0, 2});  // swap 0,1
  const Perm pq = p * q;
  for (Elem x = 0; x < 3; ++x) EXPECT_EQ(pq(x), q(p(x)));
  EXPECT_EQ(pq, p.then(q));
  EXPECT_NE(pq, q * p);
}

TEST(Perm, InversePowersAndOrder) {
  const Perm p(std::vector<Elem>{1, 2, 0, 4, 3});
  EXPECT_TRUE((p * p.inverse()).is_identity());
  EXPECT_EQ(p.order(), 6);
  EXPECT_TRUE(p.pow(6).is_identity());
  EXPECT_EQ(p.pow(-1), p.inverse());
  EXPECT_EQ(p.pow(-7), p.inverse());
  EXPECT_EQ(p.pow(0), Perm::identity(5));
  EXPECT_EQ(Perm::identity(4).order(), 1);
  EXPECT_EQ(p.to_string(), "[1 2 0 4 3]");
}

TEST(PermProperty, GroupAxiomsOnRandomPerms) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 12);
    const Perm a = random_perm(n, rng), b = random_perm(n, rng), c = random_perm(n, rng);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ((a * b).inverse(), b.inverse() * a.inverse());
    EXPECT_TRUE(a.pow(a.order()).is_identity());
    const long long k = static_cast<long long>(rng() % 9) - 4, m = static_cast<long long>(rng() % 9) - 4;
    EXPECT_EQ(a.pow(k) * a.pow(m), a.pow(k + m));
  }
}
