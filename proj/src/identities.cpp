#include "ccloop/identities.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "ccloop/structure.hpp"

namespace ccloop {

// ---- construction --------------------------------------------------------

namespace {

TermPtr make(Term::Kind k, std::string name, TermPtr a, TermPtr b) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  t->name = std::move(name);
  t->lhs = std::move(a);
  t->rhs = std::move(b);
  return t;
}

}  // namespace

TermPtr Term::var(std::string name) { return make(Kind::Var, std::move(name), nullptr, nullptr); }
TermPtr Term::one() { return make(Kind::One, {}, nullptr, nullptr); }
TermPtr Term::mul(TermPtr a, TermPtr b) { return make(Kind::Mul, {}, std::move(a), std::move(b)); }
TermPtr Term::ldiv(TermPtr a, TermPtr b) { return make(Kind::LDiv, {}, std::move(a), std::move(b)); }
TermPtr Term::rdiv(TermPtr a, TermPtr b) { return make(Kind::RDiv, {}, std::move(a), std::move(b)); }
TermPtr Term::linv(TermPtr a) { return make(Kind::LInv, {}, std::move(a), nullptr); }
TermPtr Term::rinv(TermPtr a) { return make(Kind::RInv, {}, std::move(a), nullptr); }

bool same_term(const Term& a, const Term& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Term::Kind::Var: return a.name == b.name;
    case Term::Kind::One: return true;
    case Term::Kind::LInv:
    case Term::Kind::RInv: return same_term(*a.lhs, *b.lhs);
    default: return same_term(*a.lhs, *b.lhs) && same_term(*a.rhs, *b.rhs);
  }
}

bool same_identity(const Identity& a, const Identity& b) {
  return same_term(*a.lhs, *b.lhs) && same_term(*a.rhs, *b.rhs) && a.vars == b.vars;
}

// ---- parser --------------------------------------------------------------

namespace {

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Identity identity() {
    Identity id;
    id.lhs = expr();
    expect('=', "'='");
    id.rhs = expr();
    skip_ws();
    if (pos_ != src_.size()) fail({"end of input"});
    id.vars = vars_;
    return id;
  }

  TermPtr term_only() {
    auto t = expr();
    skip_ws();
    if (pos_ != src_.size()) fail({"end of input"});
    return t;
  }

 private:
  TermPtr expr() {
    auto t = product();
    for (;;) {
      skip_ws();
      if (peek() == '\\') {
        ++pos_;
        t = Term::ldiv(t, product());
      } else if (peek() == '/') {
        ++pos_;
        t = Term::rdiv(t, product());
      } else {
        return t;
      }
    }
  }

  TermPtr product() {
    auto t = postfix();
    for (;;) {
      skip_ws();
      if (peek() != '*') return t;
      ++pos_;
      t = Term::mul(t, postfix());
    }
  }

  TermPtr postfix() {
    auto t = primary();
    for (;;) {
      skip_ws();
      if (peek() != '^') return t;
      ++pos_;
      skip_ws();
      if (peek() == 'l') {
        t = Term::linv(t);
      } else if (peek() == 'r') {
        t = Term::rinv(t);
      } else {
        fail({"'l'", "'r'"});
      }
      ++pos_;
    }
  }

  TermPtr primary() {
    skip_ws();
    const char c = peek();
    if (c == '(') {
      ++pos_;
      auto t = expr();
      expect(')', "')'");
      return t;
    }
    if (c == '1') {
      ++pos_;
      return Term::one();
    }
    if (c >= 'a' && c <= 'z') {
      const auto start = pos_;
      while (peek() >= 'a' && peek() <= 'z') ++pos_;
      std::string name(src_.substr(start, pos_ - start));
      if (std::find(vars_.begin(), vars_.end(), name) == vars_.end()) vars_.push_back(name);
      return Term::var(std::move(name));
    }
    fail({"variable", "'1'", "'('"});
  }

  void expect(char c, const char* what) {
    skip_ws();
    if (peek() != c) fail({what});
    ++pos_;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw SyntaxError(pos_, std::move(expected));
  }

  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::vector<std::string> vars_;
};

// Binding strength of the top-level constructor.
int precedence(const Term& t) {
  switch (t.kind) {
    case Term::Kind::LDiv:
    case Term::Kind::RDiv: return 1;
    case Term::Kind::Mul: return 2;
    case Term::Kind::LInv:
    case Term::Kind::RInv: return 3;
    default: return 4;
  }
}

void print_into(const Term& t, int min_prec, std::string& out) {
  const bool parens = precedence(t) < min_prec;
  if (parens) out += '(';
  switch (t.kind) {
    case Term::Kind::Var: out += t.name; break;
    case Term::Kind::One: out += '1'; break;
    case Term::Kind::Mul:
      print_into(*t.lhs, 2, out);
      out += '*';
      print_into(*t.rhs, 3, out);
      break;
    case Term::Kind::LDiv:
    case Term::Kind::RDiv:
      print_into(*t.lhs, 1, out);
      out += t.kind == Term::Kind::LDiv ? '\\' : '/';
      print_into(*t.rhs, 2, out);
      break;
    case Term::Kind::LInv:
    case Term::Kind::RInv:
      print_into(*t.lhs, 3, out);
      out += t.kind == Term::Kind::LInv ? "^l" : "^r";
      break;
  }
  if (parens) out += ')';
}

void compile_into(const Term& t, const std::vector<std::string>& vars, CompiledTerm& out) {
  using Op = CompiledTerm::Op;
  switch (t.kind) {
    case Term::Kind::Var: {
      auto it = std::find(vars.begin(), vars.end(), t.name);
      ensure(it != vars.end(), "variable missing from the identity's variable list");
      out.code.push_back({Op::Var, static_cast<std::int32_t>(it - vars.begin())});
      return;
    }
    case Term::Kind::One: out.code.push_back({Op::One, 0}); return;
    case Term::Kind::LInv:
    case Term::Kind::RInv:
      compile_into(*t.lhs, vars, out);
      out.code.push_back({t.kind == Term::Kind::LInv ? Op::LInv : Op::RInv, 0});
      return;
    default:
      compile_into(*t.lhs, vars, out);
      compile_into(*t.rhs, vars, out);
      out.code.push_back({t.kind == Term::Kind::Mul    ? Op::Mul
                          : t.kind == Term::Kind::LDiv ? Op::LDiv
                                                       : Op::RDiv,
                          0});
  }
}

}  // namespace

Identity parse_identity(std::string_view src) { return Parser(src).identity(); }
TermPtr parse_term(std::string_view src) { return Parser(src).term_only(); }

std::string print_term(const Term& t) {
  std::string s;
  print_into(t, 0, s);
  return s;
}

std::string print_identity(const Identity& id) {
  return print_term(*id.lhs) + " = " + print_term(*id.rhs);
}

CompiledTerm compile_term(const Term& t, const std::vector<std::string>& vars) {
  CompiledTerm c;
  compile_into(t, vars, c);
  return c;
}

Elem evaluate(const LoopTable& q, const CompiledTerm& t, std::span<const Elem> assignment) {
  using Op = CompiledTerm::Op;
  Elem stack[64];
  std::vector<Elem> big;
  Elem* sp = stack;
  if (t.code.size() > 64) {
    big.resize(t.code.size());
    sp = big.data();
  }
  Elem* const base = sp;
  for (const auto& ins : t.code) {
    switch (ins.op) {
      case Op::Var: *sp++ = assignment[static_cast<std::size_t>(ins.var)]; break;
      case Op::One: *sp++ = 0; break;
      case Op::Mul: --sp; sp[-1] = q.mul(sp[-1], sp[0]); break;
      case Op::LDiv: --sp; sp[-1] = q.ldiv(sp[-1], sp[0]); break;
      case Op::RDiv: --sp; sp[-1] = q.rdiv(sp[-1], sp[0]); break;
      case Op::LInv: sp[-1] = q.rdiv(0, sp[-1]); break;
      case Op::RInv: sp[-1] = q.ldiv(sp[-1], 0); break;
    }
  }
  ensure(sp == base + 1, "malformed compiled term");
  return base[0];
}

IdentityCheck check_identity(const LoopTable& q, const Identity& id, unsigned long long budget) {
  const auto k = id.vars.size();
  const auto n = static_cast<unsigned long long>(q.order());
  unsigned long long total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (total > budget / n) throw TooManyVariables(std::to_string(k) + " variables over order " +
                                                   std::to_string(n) + " exceed the instance budget");
    total *= n;
  }
  const auto lhs = compile_term(*id.lhs, id.vars);
  const auto rhs = compile_term(*id.rhs, id.vars);
  std::vector<Elem> a(k, 0);
  for (unsigned long long step = 0; step < total; ++step) {
    if (evaluate(q, lhs, a) != evaluate(q, rhs, a)) return {false, a};
    for (std::size_t i = k; i-- > 0;) {
      if (++a[i] < q.order()) break;
      a[i] = 0;
    }
  }
  return {};
}

// ---- CC ------------------------------------------------------------------

std::optional<Witness> rcc_violation(const LoopTable& q) {
  const int n = q.order();
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      const Elem f = q.rdiv(q.mul(x, y), x);
      for (Elem z = 0; z < n; ++z)
        if (q.mul(x, q.mul(y, z)) != q.mul(f, q.mul(x, z))) return Witness{"RCC", {x, y, z}};
    }
  return std::nullopt;
}

std::optional<Witness> lcc_violation(const LoopTable& q) {
  const int n = q.order();
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      const Elem g = q.ldiv(x, q.mul(y, x));
      for (Elem z = 0; z < n; ++z)
        if (q.mul(q.mul(z, y), x) != q.mul(q.mul(z, x), g)) return Witness{"LCC", {x, y, z}};
    }
  return std::nullopt;
}

bool is_cc_by_conjugation(const LoopTable& q) {
  const int n = q.order();
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      // w L_x^-1 L_y L_x = x*(y*(x\w)) must be a left translation L_z, z = its value at 1.
      const Elem zl = q.mul(x, q.mul(y, q.ldiv(x, 0)));
      // w R_x^-1 R_y R_x = ((w/x)*y)*x must be R_z.
      const Elem zr = q.mul(q.mul(q.rdiv(0, x), y), x);
      for (Elem w = 0; w < n; ++w) {
        if (q.mul(x, q.mul(y, q.ldiv(x, w))) != q.mul(zl, w)) return false;
        if (q.mul(q.mul(q.rdiv(w, x), y), x) != q.mul(w, zr)) return false;
      }
    }
  return true;
}

bool is_cc(const LoopTable& q) {
  const bool by_identity = !rcc_violation(q) && !lcc_violation(q);
  ensure(by_identity == is_cc_by_conjugation(q), "RCC/LCC and conjugation-closure disagree");
  return by_identity;
}

// ---- power associativity -------------------------------------------------

bool is_pa_element(const LoopTable& q, Elem a) {
  return associates(q, closure(q, ElemSet(q.order(), {a})));
}

bool is_pa_element_cc(const LoopTable& q, Elem a) { return rho(q, a) == lambda(q, a); }

bool is_pa(const LoopTable& q) {
  bool all = true;
  std::vector<bool> general(static_cast<std::size_t>(q.order()));
  for (Elem a = 0; a < q.order(); ++a) {
    general[static_cast<std::size_t>(a)] = is_pa_element(q, a);
    all = all && general[static_cast<std::size_t>(a)];
  }
  if (is_cc(q))
    for (Elem a = 0; a < q.order(); ++a)
      ensure(general[static_cast<std::size_t>(a)] == is_pa_element_cc(q, a),
             "power-associativity shortcut disagrees with the closure test on a CC-loop");
  return all;
}

// ---- diassociativity -----------------------------------------------------

DiassociativityCheck check_diassociative(const LoopTable& q) {
  std::unordered_set<ElemSet, ElemSetHash> checked;
  for (Elem x = 0; x < q.order(); ++x)
    for (Elem y = x; y < q.order(); ++y) {
      auto sub = closure(q, ElemSet(q.order(), {x, y}));
      if (!checked.insert(sub).second) continue;
      if (auto bad = association_failure(q, sub, sub, sub)) return {false, x, y, *bad};
    }
  return {};
}

bool is_diassociative(const LoopTable& q) { return check_diassociative(q).holds; }

// ---- WIP -----------------------------------------------------------------

bool is_wip_element(const LoopTable& q, Elem c) {
  const int n = q.order();
  bool forms[4] = {true, true, true, true};
  for (Elem y = 0; y < n; ++y) {
    // lambda R_c rho = L_c^-1
    if (rho(q, q.mul(lambda(q, y), c)) != q.ldiv(c, y)) forms[0] = false;
    // rho L_c lambda = R_c^-1
    if (lambda(q, q.mul(c, rho(q, y))) != q.rdiv(y, c)) forms[1] = false;
    // R_c rho L_c = rho
    if (q.mul(c, rho(q, q.mul(y, c))) != rho(q, y)) forms[2] = false;
    // L_c lambda R_c = lambda
    if (q.mul(lambda(q, q.mul(c, y)), c) != lambda(q, y)) forms[3] = false;
  }
  ensure(forms[0] == forms[1] && forms[1] == forms[2] && forms[2] == forms[3],
         "the four WIP characterisations disagree");
  return forms[0];
}

ElemSet wip_elements(const LoopTable& q) {
  ElemSet s(q.order());
  for (Elem c = 0; c < q.order(); ++c)
    if (is_wip_element(q, c)) s.insert(c);
  return s;
}

bool has_wip(const LoopTable& q) { return wip_elements(q).is_full(); }

bool is_associative(const LoopTable& q) {
  const auto all = ElemSet::full(q.order());
  return associates(q, all, all, all);
}

bool is_commutative(const LoopTable& q) {
  for (Elem x = 0; x < q.order(); ++x)
    for (Elem y = x + 1; y < q.order(); ++y)
      if (q.mul(x, y) != q.mul(y, x)) return false;
  return true;
}

// ---- property vocabulary -------------------------------------------------

namespace {

struct PropertyNames {
  Property p;
  std::string_view key;
  std::string_view name;
};

constexpr std::array<PropertyNames, kPropertyCount> kNames{{
    {Property::Loop, "is_loop", "loop"},
    {Property::Group, "is_group", "group"},
    {Property::CC, "is_cc", "cc"},
    {Property::Extra, "is_extra", "extra"},
    {Property::Moufang, "is_moufang", "moufang"},
    {Property::Flexible, "is_flexible", "flexible"},
    {Property::LeftAlt, "is_left_alt", "left_alt"},
    {Property::RightAlt, "is_right_alt", "right_alt"},
    {Property::PA, "is_pa", "pa"},
    {Property::Diassociative, "is_diassociative", "diassociative"},
    {Property::WIP, "has_wip", "wip"},
    {Property::AIP, "has_aip", "aip"},
    {Property::AAIP, "has_aaip", "aaip"},
    {Property::Commutative, "is_commutative", "commutative"},
    {Property::BooleanGroup, "is_boolean_group", "boolean_group"},
}};

// Identity-style laws, evaluated by name so witnesses can be re-checked.
struct Law {
  std::string_view name;
  int arity;
  bool (*holds)(const LoopTable&, const Elem*);
};

constexpr Law kLaws[] = {
    {"associative", 3,
     [](const LoopTable& q, const Elem* v) {
       return q.mul(v[0], q.mul(v[1], v[2])) == q.mul(q.mul(v[0], v[1]), v[2]);
     }},
    // Fenyves' extra law x(y(zx)) = ((xy)z)x
    {"extra", 3,
     [](const LoopTable& q, const Elem* v) {
       return q.mul(v[0], q.mul(v[1], q.mul(v[2], v[0]))) ==
              q.mul(q.mul(q.mul(v[0], v[1]), v[2]), v[0]);
     }},
    // (xy)(zx) = (x(yz))x
    {"moufang", 3,
     [](const LoopTable& q, const Elem* v) {
       return q.mul(q.mul(v[0], v[1]), q.mul(v[2], v[0])) ==
              q.mul(q.mul(v[0], q.mul(v[1], v[2])), v[0]);
     }},
    {"flexible", 2,
     [](const LoopTable& q, const Elem* v) {
       return q.mul(v[0], q.mul(v[1], v[0])) == q.mul(q.mul(v[0], v[1]), v[0]);
     }},
    {"left_alt", 2,
     [](const LoopTable& q, const Elem* v) {
       return q.mul(v[0], q.mul(v[0], v[1])) == q.mul(q.mul(v[0], v[0]), v[1]);
     }},
    {"right_alt", 2,
     [](const LoopTable& q, const Elem* v) {
       return q.mul(q.mul(v[1], v[0]), v[0]) == q.mul(v[1], q.mul(v[0], v[0]));
     }},
    {"commutative", 2, [](const LoopTable& q, const Elem* v) { return q.mul(v[0], v[1]) == q.mul(v[1], v[0]); }},
    // (xy)^rho = y^rho x^rho
    {"aaip", 2,
     [](const LoopTable& q, const Elem* v) {
       return rho(q, q.mul(v[0], v[1])) == q.mul(rho(q, v[1]), rho(q, v[0]));
     }},
    {"two_sided_inverse", 1, [](const LoopTable& q, const Elem* v) { return rho(q, v[0]) == lambda(q, v[0]); }},
    // J = rho is an automorphism
    {"aip", 2,
     [](const LoopTable& q, const Elem* v) {
       return rho(q, q.mul(v[0], v[1])) == q.mul(rho(q, v[0]), rho(q, v[1]));
     }},
    {"exponent_two", 1, [](const LoopTable& q, const Elem* v) { return q.mul(v[0], v[0]) == 0; }},
    {"RCC", 3,
     [](const LoopTable& q, const Elem* v) {
       const Elem f = q.rdiv(q.mul(v[0], v[1]), v[0]);
       return q.mul(v[0], q.mul(v[1], v[2])) == q.mul(f, q.mul(v[0], v[2]));
     }},
    {"LCC", 3,
     [](const LoopTable& q, const Elem* v) {
       const Elem g = q.ldiv(v[0], q.mul(v[1], v[0]));
       return q.mul(q.mul(v[2], v[1]), v[0]) == q.mul(q.mul(v[2], v[0]), g);
     }},
    {"power_associative", 1, [](const LoopTable& q, const Elem* v) { return is_pa_element(q, v[0]); }},
    {"wip", 1, [](const LoopTable& q, const Elem* v) { return is_wip_element(q, v[0]); }},
    // <x,y> associates, witnessed by (x, y, a, b, c) with a(bc) != (ab)c in <x,y>.
    {"diassociative", 5,
     [](const LoopTable& q, const Elem* v) {
       const auto sub = closure(q, ElemSet(q.order(), {v[0], v[1]}));
       const bool inside = sub.contains(v[2]) && sub.contains(v[3]) && sub.contains(v[4]);
       return !inside || q.mul(v[2], q.mul(v[3], v[4])) == q.mul(q.mul(v[2], v[3]), v[4]);
     }},
};

const Law* find_law(std::string_view name) {
  for (const auto& l : kLaws)
    if (l.name == name) return &l;
  return nullptr;
}

// First violating tuple of a law, enumerated lexicographically.
std::optional<Witness> scan_law(const LoopTable& q, std::string_view name) {
  const Law* law = find_law(name);
  ensure(law != nullptr, "unknown law");
  const int n = q.order();
  std::vector<Elem> v(static_cast<std::size_t>(law->arity), 0);
  for (;;) {
    if (!law->holds(q, v.data())) return Witness{std::string(name), v};
    int i = law->arity - 1;
    while (i >= 0 && ++v[static_cast<std::size_t>(i)] == n) v[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return std::nullopt;
  }
}

using Check = std::pair<bool, std::optional<Witness>>;

Check from_scan(std::optional<Witness> w) { return {!w.has_value(), std::move(w)}; }

Check check_cc(const LoopTable& q) {
  auto w = rcc_violation(q);
  if (!w) w = lcc_violation(q);
  ensure(!w.has_value() == is_cc_by_conjugation(q), "RCC/LCC and conjugation-closure disagree");
  return from_scan(std::move(w));
}

Check check_moufang(const LoopTable& q) { return from_scan(scan_law(q, "moufang")); }

}  // namespace

std::string_view property_key(Property p) { return kNames[static_cast<std::size_t>(p)].key; }
std::string_view property_name(Property p) { return kNames[static_cast<std::size_t>(p)].name; }

std::optional<Property> property_from_name(std::string_view name) {
  if (name == "associative") return Property::Group;
  for (const auto& e : kNames)
    if (e.name == name || e.key == name) return e.p;
  return std::nullopt;
}

std::array<Property, kPropertyCount> all_properties() {
  std::array<Property, kPropertyCount> out{};
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = kNames[i].p;
  return out;
}

std::pair<bool, std::optional<Witness>> check_property(const LoopTable& q, Property p) {
  switch (p) {
    case Property::Loop: return {true, std::nullopt};
    case Property::Group: return from_scan(scan_law(q, "associative"));
    case Property::CC: return check_cc(q);
    case Property::Extra: {
      auto direct = from_scan(scan_law(q, "extra"));
      auto [cc, cc_w] = check_cc(q);
      if (cc) {
        const bool via_moufang = check_moufang(q).first;
        ensure(direct.first == via_moufang, "extra law and CC+Moufang disagree on a CC-loop");
      }
      return direct;
    }
    case Property::Moufang: return check_moufang(q);
    case Property::Flexible: return from_scan(scan_law(q, "flexible"));
    case Property::LeftAlt: return from_scan(scan_law(q, "left_alt"));
    case Property::RightAlt: return from_scan(scan_law(q, "right_alt"));
    case Property::PA: {
      auto w = scan_law(q, "power_associative");
      if (check_cc(q).first)
        for (Elem a = 0; a < q.order(); ++a)
          ensure(is_pa_element(q, a) == is_pa_element_cc(q, a),
                 "power-associativity shortcut disagrees with the closure test on a CC-loop");
      return from_scan(std::move(w));
    }
    case Property::Diassociative: {
      auto d = check_diassociative(q);
      if (d.holds) return {true, std::nullopt};
      return {false, Witness{"diassociative", {d.x, d.y, d.triple[0], d.triple[1], d.triple[2]}}};
    }
    case Property::WIP: return from_scan(scan_law(q, "wip"));
    case Property::AIP: {
      if (auto w = scan_law(q, "two_sided_inverse")) return {false, std::move(w)};
      return from_scan(scan_law(q, "aip"));
    }
    case Property::AAIP: return from_scan(scan_law(q, "aaip"));
    case Property::Commutative: return from_scan(scan_law(q, "commutative"));
    case Property::BooleanGroup: {
      if (auto w = scan_law(q, "associative")) return {false, std::move(w)};
      return from_scan(scan_law(q, "exponent_two"));
    }
  }
  return {false, std::nullopt};
}

PropertyReport classify(const LoopTable& q) {
  PropertyReport r;
  for (auto p : all_properties()) {
    auto [ok, w] = check_property(q, p);
    r.flags[static_cast<std::size_t>(p)] = ok;
    r.witnesses[static_cast<std::size_t>(p)] = std::move(w);
  }
  // Extra loops are exactly the Moufang CC-loops.
  ensure(r.get(Property::Extra) == (r.get(Property::CC) && r.get(Property::Moufang)),
         "extra-loop characterisations disagree");
  return r;
}

bool witness_confirms_violation(const LoopTable& q, const Witness& w) {
  const Law* law = find_law(w.law);
  if (law == nullptr || static_cast<int>(w.elems.size()) != law->arity) return false;
  for (Elem e : w.elems)
    if (e < 0 || e >= q.order()) return false;
  return !law->holds(q, w.elems.data());
}

}  // namespace ccloop
