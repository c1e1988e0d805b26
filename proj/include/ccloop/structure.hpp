#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ccloop/loop_table.hpp"

namespace ccloop {

inline constexpr int kDeskScaleBound = 64;

// (alpha, beta, gamma) with y alpha * z beta = (y z) gamma for all y, z.
bool is_autotopism(const LoopTable& q, const Perm& alpha, const Perm& beta, const Perm& gamma);

class Autotopism {
 public:
  // Throws LoopError unless the triple is an autotopism of q.
  Autotopism(const LoopTable& q, Perm alpha, Perm beta, Perm gamma);
  const Perm& alpha() const { return alpha_; }
  const Perm& beta() const { return beta_; }
  const Perm& gamma() const { return gamma_; }

 private:
  Perm alpha_, beta_, gamma_;
};

struct Nuclei {
  ElemSet left;    // a(xy) = (ax)y
  ElemSet middle;  // (xa)y = x(ay)
  ElemSet right;   // x(ya) = (xy)a
  ElemSet nucleus;
};
Nuclei nuclei(const LoopTable& q);
ElemSet nucleus(const LoopTable& q);
// Nuclear elements commuting with everything.
ElemSet center(const LoopTable& q);
// Elements commuting with everything (no nuclear requirement).
ElemSet commutant(const LoopTable& q);

// Least superset of s and {0} closed under *, \ and /.
ElemSet closure(const LoopTable& q, const ElemSet& s);

struct SubloopInfo {
  ElemSet members;
  bool is_normal = false;
  std::vector<Elem> generators;
};
SubloopInfo generate_subloop(const LoopTable& q, const ElemSet& s);
SubloopInfo generate_subloop(const LoopTable& q, const std::vector<Elem>& gens);

// x(yz) = (xy)z for x in a, y in b, z in c. Returns the first failing triple.
std::optional<std::array<Elem, 3>> association_failure(const LoopTable& q, const ElemSet& a,
                                                       const ElemSet& b, const ElemSet& c);
bool associates(const LoopTable& q, const ElemSet& a, const ElemSet& b, const ElemSet& c);
bool associates(const LoopTable& q, const ElemSet& s);

struct Associators {
  Elem paren;    // (x,y,z) = (x*yz) \ (xy*z)
  Elem bracket;  // [x,y,z] = (x*yz) / (xy*z)
};
Associators associator(const LoopTable& q, Elem x, Elem y, Elem z);

struct InnerMaps {
  Perm r;  // R(x,y) = R_x R_y R_{xy}^-1
  Perm l;  // L(x,y) = L_x L_y L_{yx}^-1
};
InnerMaps inner_maps(const LoopTable& q, Elem x, Elem y);
// T_x = R_x L_x^-1
Perm t_map(const LoopTable& q, Elem x);

bool is_automorphism(const LoopTable& q, const Perm& alpha);
// alpha(x) lies in xN for every x.
bool is_nuclear(const LoopTable& q, const Perm& alpha, const ElemSet& nucleus);

// Sorted by image array. Throws OrderTooLarge above `bound`.
std::vector<Perm> automorphisms(const LoopTable& q, int bound = kDeskScaleBound);
std::vector<Perm> nuclear_automorphisms(const LoopTable& q, int bound = kDeskScaleBound);

// An isomorphism a -> b (as a permutation of labels), if one exists.
std::optional<Perm> find_isomorphism(const LoopTable& a, const LoopTable& b);
bool are_isomorphic(const LoopTable& a, const LoopTable& b);

// Per-element isomorphism invariant: |<x>|, cycle lengths of 0 under L_x and
// R_x, whether x*x = 0, nuclear membership and central membership.
std::vector<std::array<int, 6>> element_profiles(const LoopTable& q);

// Normality as a congruence: the left cosets xH partition Q, xH = Hx, and
// coset multiplication is well defined. Throws NotSubloop if h is not closed.
bool is_normal(const LoopTable& q, const ElemSet& h);
// Same property via invariance of h under every R(x,y), L(x,y) and T_x.
bool is_normal_by_inner_maps(const LoopTable& q, const ElemSet& h);

struct Quotient {
  LoopTable table;
  std::vector<Elem> projection;  // element -> coset index
  std::vector<ElemSet> cosets;   // sorted by least member; cosets[0] == h
};
// Throws NotSubloop or NotNormal (with a witness pair).
Quotient quotient(const LoopTable& q, const ElemSet& h);

// Every subloop, sorted by (size, members). Throws OrderTooLarge.
std::vector<SubloopInfo> all_subloops(const LoopTable& q, int bound = kDeskScaleBound);

struct LagrangeReport {
  bool holds = true;
  std::vector<int> orders;  // distinct subloop orders, ascending
  // First violating pair (inner, outer) when !holds.
  std::optional<std::pair<ElemSet, ElemSet>> violation;
};
// Strong Lagrange property: for subloops K <= H, |K| divides |H|.
LagrangeReport lagrange_report(const LoopTable& q, int bound = kDeskScaleBound);
bool lagrange_check(const LoopTable& q, int bound = kDeskScaleBound);

struct CenterTowerReport {
  int prime = 0;
  int exponent = 0;         // |Q| = prime^exponent
  int center_exponent = 0;  // |Z| = prime^center_exponent
  bool center_ok = false;   // center_exponent != 0 and != exponent - 1 (or Q abelian)
  // normal_chain[m] is a normal subloop of order prime^m, m = 0..exponent.
  std::vector<ElemSet> normal_chain;
  bool chain_ok = false;
};
// Throws NotPrimePower or NotCC.
CenterTowerReport center_tower_check(const LoopTable& q);

// Smallest prime p and k with n = p^k, if n is a prime power.
std::optional<std::pair<int, int>> prime_power(int n);

}  // namespace ccloop
