#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ccloop/loop_table.hpp"

namespace ccloop {

// ---- terms ---------------------------------------------------------------

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Loop words over *, \, /, the two inverse maps and the identity 1.
struct Term {
  enum class Kind { Var, One, Mul, LDiv, RDiv, LInv, RInv };

  Kind kind = Kind::One;
  std::string name;  // Var only
  TermPtr lhs;       // binary ops and the unary inverses
  TermPtr rhs;       // binary ops only

  static TermPtr var(std::string name);
  static TermPtr one();
  static TermPtr mul(TermPtr a, TermPtr b);
  static TermPtr ldiv(TermPtr a, TermPtr b);
  static TermPtr rdiv(TermPtr a, TermPtr b);
  static TermPtr linv(TermPtr a);  // a^l = 1/a
  static TermPtr rinv(TermPtr a);  // a^r = a\1
};

bool same_term(const Term& a, const Term& b);

// A universally quantified equation lhs = rhs. `vars` lists every variable
// in order of first appearance (left to right through lhs, then rhs).
struct Identity {
  TermPtr lhs;
  TermPtr rhs;
  std::vector<std::string> vars;
};

bool same_identity(const Identity& a, const Identity& b);

// Grammar (whitespace ignored):
//   identity := expr '=' expr
//   expr     := product (('\' | '/') product)*      left-associative
//   product  := postfix ('*' postfix)*              left-associative
//   postfix  := primary ('^l' | '^r')*
//   primary  := [a-z]+ | '1' | '(' expr ')'
// Throws SyntaxError with the 0-based offset and the expected token set.
Identity parse_identity(std::string_view src);
TermPtr parse_term(std::string_view src);

// Canonical text with minimal parentheses; parse_identity(print_identity(id))
// is structurally equal to id.
std::string print_term(const Term& t);
std::string print_identity(const Identity& id);

// Postfix program for fast repeated evaluation of a term over a table.
struct CompiledTerm {
  enum class Op : std::uint8_t { Var, One, Mul, LDiv, RDiv, LInv, RInv };
  struct Instr {
    Op op;
    std::int32_t var;  // index into the assignment for Var
  };
  std::vector<Instr> code;
};
CompiledTerm compile_term(const Term& t, const std::vector<std::string>& vars);
Elem evaluate(const LoopTable& q, const CompiledTerm& t, std::span<const Elem> assignment);

struct IdentityCheck {
  bool holds = true;
  // Lexicographically least violating assignment (vars[0] most significant).
  std::vector<Elem> counterexample;
};

inline constexpr unsigned long long kDefaultInstanceBudget = 1'000'000'000ULL;

// Exhaustive check over Q^|vars|. Throws TooManyVariables when
// n^|vars| exceeds `budget`.
IdentityCheck check_identity(const LoopTable& q, const Identity& id,
                             unsigned long long budget = kDefaultInstanceBudget);

// ---- named properties ----------------------------------------------------

// A counterexample to a named law: which law, at which elements.
struct Witness {
  std::string law;
  std::vector<Elem> elems;
};

// RCC: x*(y*z) = f(x,y)*(x*z) and LCC: (z*y)*x = (z*x)*g(x,y).
std::optional<Witness> rcc_violation(const LoopTable& q);
std::optional<Witness> lcc_violation(const LoopTable& q);
// Conjugation form: every L_x^-1 L_y L_x is a left translation and every
// R_x^-1 R_y R_x a right translation. Independent of the identity route.
bool is_cc_by_conjugation(const LoopTable& q);
// Both routes are evaluated and must agree (InvariantViolation otherwise).
bool is_cc(const LoopTable& q);

// Closure-based: <a> is a group.
bool is_pa_element(const LoopTable& q, Elem a);
// Shortcut a^rho == a^lambda. Only meaningful when q is a CC-loop.
bool is_pa_element_cc(const LoopTable& q, Elem a);
bool is_pa(const LoopTable& q);

struct DiassociativityCheck {
  bool holds = true;
  Elem x = 0, y = 0;                 // generators of a non-group <x,y>
  std::array<Elem, 3> triple{};      // non-associating triple inside it
};
DiassociativityCheck check_diassociative(const LoopTable& q);
bool is_diassociative(const LoopTable& q);

// c is WIP iff lambda R_c rho = L_c^-1. The four equivalent permutation forms
// are all evaluated and must agree.
bool is_wip_element(const LoopTable& q, Elem c);
ElemSet wip_elements(const LoopTable& q);
bool has_wip(const LoopTable& q);

bool is_associative(const LoopTable& q);
bool is_commutative(const LoopTable& q);

enum class Property : int {
  Loop,
  Group,
  CC,
  Extra,
  Moufang,
  Flexible,
  LeftAlt,
  RightAlt,
  PA,
  Diassociative,
  WIP,
  AIP,
  AAIP,
  Commutative,
  BooleanGroup,
};
inline constexpr int kPropertyCount = 15;

// Report key, e.g. "is_cc", "has_wip".
std::string_view property_key(Property p);
// Short vocabulary name used by search specs and the CLI: "cc", "pa",
// "wip", "group", ... Accepts "associative" for Group.
std::string_view property_name(Property p);
std::optional<Property> property_from_name(std::string_view name);
std::array<Property, kPropertyCount> all_properties();

struct PropertyReport {
  std::array<bool, kPropertyCount> flags{};
  std::array<std::optional<Witness>, kPropertyCount> witnesses{};

  bool get(Property p) const { return flags[static_cast<std::size_t>(p)]; }
  const std::optional<Witness>& witness(Property p) const {
    return witnesses[static_cast<std::size_t>(p)];
  }
};

PropertyReport classify(const LoopTable& q);
// Evaluates a single property, with a witness when it fails.
std::pair<bool, std::optional<Witness>> check_property(const LoopTable& q, Property p);

// Re-evaluates a witness from scratch: true iff it really violates the law
// it names.
bool witness_confirms_violation(const LoopTable& q, const Witness& w);

}  // namespace ccloop
