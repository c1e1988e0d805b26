#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ccloop/loop_table.hpp"
#include "ccloop/structure.hpp"

namespace ccloop {

// An action of a loop A on a loop K: a -> phi_a in Sym(K), with phi_0 the
// identity and every phi_a fixing 0. Validated at construction (BadAction).
class ActionMap {
 public:
  ActionMap(LoopTable domain, LoopTable codomain, std::vector<Perm> phi);

  static ActionMap trivial(LoopTable domain, LoopTable codomain);

  const LoopTable& domain() const { return domain_; }
  const LoopTable& codomain() const { return codomain_; }
  const Perm& phi(Elem a) const { return phi_[static_cast<std::size_t>(a)]; }
  const std::vector<Perm>& phis() const { return phi_; }

  // phi_{ab} = phi_a phi_b (phi_a applied first) for all a, b.
  bool is_homomorphism() const;
  // Every phi_a is an automorphism of the codomain.
  bool acts_by_automorphisms() const;

 private:
  LoopTable domain_, codomain_;
  std::vector<Perm> phi_;
};

// A x K with (a,x)(b,y) = (ab, x phi_b * y). The pair (a,x) gets the label
// a*|K| + x, so (0,0) is the identity.
LoopTable semidirect(const ActionMap& action);
inline Elem pair_index(const ActionMap& action, Elem a, Elem x) {
  return a * action.codomain().order() + x;
}

// Direct product (trivial action).
LoopTable direct_product(const LoopTable& a, const LoopTable& k);

// The three equivalent conditions for A x_phi K to be a CC-loop, computed
// independently of each other.
struct SemidirectTheoremReport {
  bool cc = false;       // the product is a CC-loop
  bool nuclear = false;  // every phi_b is a nuclear automorphism of K
  bool triples = false;  // every U(x,b) and V(x,b) is an autotopism of K
  bool agree() const { return cc == nuclear && nuclear == triples; }
};
// Throws NotCC when A or K is not CC, NotHomomorphism when phi is not a
// homomorphism into Aut(K), and InvariantViolation if the three disagree.
SemidirectTheoremReport check_semidirect_theorem(const ActionMap& action);

// U(x,b) = (L_{x^b} R_x^-1, L_x, L_{x^b}) and V(x,b) = (R_x, R_{x^b} L_x^-1, R_{x^b}).
struct Triple {
  Perm alpha, beta, gamma;
};
Triple u_triple(const LoopTable& k, Elem x, Elem xb);
Triple v_triple(const LoopTable& k, Elem x, Elem xb);

// Cayley table of a permutation group under composition (p then q). The
// elements must be closed under composition and sorted; the identity must
// come first, which holds for sorted image arrays.
LoopTable permutation_group_table(const std::vector<Perm>& elements);

struct Holomorph {
  LoopTable table;
  ActionMap action;
};
// NAut(Q) x Q with phi the identity map. With `subgroup_generators`, the
// subgroup of NAut(Q) they generate is used instead. Throws NotCC.
Holomorph holomorph(const LoopTable& q, const std::optional<std::vector<Perm>>& subgroup_generators = std::nullopt);

struct InternalDecomposition {
  std::vector<Elem> a_elems;  // label i of the action's domain is a_elems[i]
  std::vector<Elem> k_elems;  // label j of the action's codomain is k_elems[j]
  ActionMap action;           // phi_a = R_a L_a^-1 restricted to K
  Perm isomorphism;           // external product -> q, (a,x) -> a*x
};
// Throws NotSubloop, NotNormal, NotComplementary or TriplesFail.
InternalDecomposition internal_decompose(const LoopTable& q, const ElemSet& a, const ElemSet& k);

// Restriction of q to a subloop, relabeled by ascending member order.
LoopTable sub_table(const LoopTable& q, const std::vector<Elem>& members);

// Sidecar action text: one line "a: i0 i1 ... i{k-1}" per domain element.
std::string write_action(const ActionMap& action);
ActionMap parse_action(const std::string& text, const LoopTable& domain, const LoopTable& codomain);

}  // namespace ccloop
