#include "ccloop/construct.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "ccloop/identities.hpp"

namespace ccloop {

ActionMap::ActionMap(LoopTable domain, LoopTable codomain, std::vector<Perm> phi)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), phi_(std::move(phi)) {
  if (static_cast<int>(phi_.size()) != domain_.order())
    throw BadAction("action needs one permutation per domain element");
  for (std::size_t a = 0; a < phi_.size(); ++a) {
    if (phi_[a].size() != codomain_.order())
      throw BadAction("phi_" + std::to_string(a) + " has the wrong degree");
    if (phi_[a](0) != 0) throw BadAction("phi_" + std::to_string(a) + " moves the identity");
  }
  if (!phi_[0].is_identity()) throw BadAction("phi of the identity is not the identity map");
}

ActionMap ActionMap::trivial(LoopTable domain, LoopTable codomain) {
  std::vector<Perm> phi(static_cast<std::size_t>(domain.order()), Perm::identity(codomain.order()));
  return ActionMap(std::move(domain), std::move(codomain), std::move(phi));
}

bool ActionMap::is_homomorphism() const {
  for (Elem a = 0; a < domain_.order(); ++a)
    for (Elem b = 0; b < domain_.order(); ++b)
      if (phi(domain_.mul(a, b)) != phi(a) * phi(b)) return false;
  return true;
}

bool ActionMap::acts_by_automorphisms() const {
  return std::all_of(phi_.begin(), phi_.end(), [&](const Perm& p) { return is_automorphism(codomain_, p); });
}

LoopTable semidirect(const ActionMap& action) {
  const auto& a = action.domain();
  const auto& k = action.codomain();
  const int na = a.order(), nk = k.order();
  const auto n = static_cast<std::size_t>(na * nk);
  std::vector<std::vector<Elem>> grid(n, std::vector<Elem>(n));
  for (Elem a1 = 0; a1 < na; ++a1)
    for (Elem x = 0; x < nk; ++x)
      for (Elem b = 0; b < na; ++b) {
        const Perm& phib = action.phi(b);
        auto& row = grid[static_cast<std::size_t>(a1 * nk + x)];
        const Elem ab = a.mul(a1, b);
        const Elem xb = phib(x);
        for (Elem y = 0; y < nk; ++y) row[static_cast<std::size_t>(b * nk + y)] = ab * nk + k.mul(xb, y);
      }
  return LoopTable::from_rows(grid);
}

LoopTable direct_product(const LoopTable& a, const LoopTable& k) {
  return semidirect(ActionMap::trivial(a, k));
}

Triple u_triple(const LoopTable& k, Elem x, Elem xb) {
  const auto lxb = left_translation(k, xb);
  return {lxb * right_translation(k, x).inverse(), left_translation(k, x), lxb};
}

Triple v_triple(const LoopTable& k, Elem x, Elem xb) {
  const auto rxb = right_translation(k, xb);
  return {right_translation(k, x), rxb * left_translation(k, x).inverse(), rxb};
}

SemidirectTheoremReport check_semidirect_theorem(const ActionMap& action) {
  const auto& a = action.domain();
  const auto& k = action.codomain();
  if (!is_cc(a)) throw NotCC("acting loop is not a CC-loop");
  if (!is_cc(k)) throw NotCC("loop acted on is not a CC-loop");
  if (!action.acts_by_automorphisms()) throw NotHomomorphism("some phi_a is not an automorphism");
  if (!action.is_homomorphism()) throw NotHomomorphism("phi is not a homomorphism");

  SemidirectTheoremReport r;
  r.cc = is_cc(semidirect(action));

  const auto nuc = nucleus(k);
  r.nuclear = std::all_of(action.phis().begin(), action.phis().end(),
                          [&](const Perm& p) { return is_nuclear(k, p, nuc); });

  r.triples = true;
  for (Elem b = 0; b < a.order() && r.triples; ++b)
    for (Elem x = 0; x < k.order() && r.triples; ++x) {
      const Elem xb = action.phi(b)(x);
      const auto u = u_triple(k, x, xb);
      const auto v = v_triple(k, x, xb);
      r.triples = is_autotopism(k, u.alpha, u.beta, u.gamma) && is_autotopism(k, v.alpha, v.beta, v.gamma);
    }
  ensure(r.agree(), "semidirect CC conditions disagree");
  return r;
}

LoopTable permutation_group_table(const std::vector<Perm>& elements) {
  std::map<Perm, Elem> index;
  for (std::size_t i = 0; i < elements.size(); ++i) index.emplace(elements[i], static_cast<Elem>(i));
  const auto n = elements.size();
  std::vector<std::vector<Elem>> grid(n, std::vector<Elem>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto it = index.find(elements[i] * elements[j]);
      if (it == index.end()) throw LoopError("permutation set is not closed under composition");
      grid[i][j] = it->second;
    }
  return LoopTable::from_rows(grid);
}

namespace {

std::vector<Perm> generated_group(const std::vector<Perm>& gens, int degree) {
  std::set<Perm> group{Perm::identity(degree)};
  std::vector<Perm> frontier{Perm::identity(degree)};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& p : frontier)
      for (const auto& g : gens) {
        auto r = p * g;
        if (group.insert(r).second) next.push_back(std::move(r));
      }
    frontier = std::move(next);
  }
  return {group.begin(), group.end()};
}

}  // namespace

Holomorph holomorph(const LoopTable& q, const std::optional<std::vector<Perm>>& subgroup_generators) {
  if (!is_cc(q)) throw NotCC("holomorph requires a CC-loop");
  auto naut = nuclear_automorphisms(q);
  if (subgroup_generators) {
    for (const auto& g : *subgroup_generators)
      if (!std::binary_search(naut.begin(), naut.end(), g))
        throw LoopError("subgroup generator is not a nuclear automorphism");
    naut = generated_group(*subgroup_generators, q.order());
  }
  auto group = permutation_group_table(naut);
  ActionMap action(group, q, naut);
  auto table = semidirect(action);
  ensure(is_cc(table), "holomorph of a CC-loop is not CC");
  return {std::move(table), std::move(action)};
}

LoopTable sub_table(const LoopTable& q, const std::vector<Elem>& members) {
  std::map<Elem, Elem> label;
  for (std::size_t i = 0; i < members.size(); ++i) label[members[i]] = static_cast<Elem>(i);
  const auto m = members.size();
  std::vector<std::vector<Elem>> grid(m, std::vector<Elem>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      auto it = label.find(q.mul(members[i], members[j]));
      if (it == label.end()) throw NotSubloop("set is not closed under multiplication");
      grid[i][j] = it->second;
    }
  return LoopTable::from_rows(grid);
}

InternalDecomposition internal_decompose(const LoopTable& q, const ElemSet& a, const ElemSet& k) {
  const int n = q.order();
  if (closure(q, a) != a) throw NotSubloop("A is not a subloop");
  if (closure(q, k) != k) throw NotSubloop("K is not a subloop");
  if (!is_normal(q, k)) (void)quotient(q, k);  // throws NotNormal with a witness pair
  if ((a & k).size() != 1) throw NotComplementary("A and K intersect nontrivially");
  ElemSet ak(n);
  for (Elem x : a.members())
    for (Elem y : k.members()) ak.insert(q.mul(x, y));
  if (!ak.is_full()) throw NotComplementary("AK is not all of Q");
  const auto all = ElemSet::full(n);
  if (auto w = association_failure(q, k, a, k)) throw TriplesFail("(K,A,K)", (*w)[0], (*w)[1], (*w)[2]);
  if (auto w = association_failure(q, a, a, k)) throw TriplesFail("(A,A,K)", (*w)[0], (*w)[1], (*w)[2]);
  if (auto w = association_failure(q, a, k, all)) throw TriplesFail("(A,K,Q)", (*w)[0], (*w)[1], (*w)[2]);

  InternalDecomposition d{a.members(), k.members(), ActionMap::trivial(sub_table(q, a.members()), sub_table(q, k.members())),
                          Perm::identity(n)};
  std::map<Elem, Elem> k_label;
  for (std::size_t j = 0; j < d.k_elems.size(); ++j) k_label[d.k_elems[j]] = static_cast<Elem>(j);
  std::vector<Perm> phi;
  for (Elem av : d.a_elems) {
    std::vector<Elem> img;
    for (Elem x : d.k_elems) {
      // x (R_a L_a^-1) = a \ (x a)
      auto it = k_label.find(q.ldiv(av, q.mul(x, av)));
      ensure(it != k_label.end(), "R_a L_a^-1 does not preserve a normal K");
      img.push_back(it->second);
    }
    phi.emplace_back(std::move(img));
  }
  d.action = ActionMap(d.action.domain(), d.action.codomain(), std::move(phi));

  const auto ext = semidirect(d.action);
  std::vector<Elem> iso(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < d.a_elems.size(); ++i)
    for (std::size_t j = 0; j < d.k_elems.size(); ++j)
      iso[i * d.k_elems.size() + j] = q.mul(d.a_elems[i], d.k_elems[j]);
  d.isomorphism = Perm(std::move(iso));
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      ensure(d.isomorphism(ext.mul(x, y)) == q.mul(d.isomorphism(x), d.isomorphism(y)),
             "external and internal semidirect products are not isomorphic via (a,x) -> ax");
  return d;
}

std::string write_action(const ActionMap& action) {
  std::string s;
  for (Elem a = 0; a < action.domain().order(); ++a) {
    s += std::to_string(a) + ":";
    for (Elem v : action.phi(a).images()) s += " " + std::to_string(v);
    s += '\n';
  }
  return s;
}

ActionMap parse_action(const std::string& text, const LoopTable& domain, const LoopTable& codomain) {
  std::vector<std::optional<Perm>> phi(static_cast<std::size_t>(domain.order()));
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError(lineno, 1, "expected 'a: images...'");
    long long a = -1;
    try {
      a = std::stoll(line.substr(0, colon));
    } catch (const std::exception&) {
      throw ParseError(lineno, 1, "bad domain element");
    }
    if (a < 0 || a >= domain.order()) throw ParseError(lineno, 1, "domain element out of range");
    std::istringstream vals(line.substr(colon + 1));
    std::vector<Elem> img;
    long long v;
    while (vals >> v) img.push_back(static_cast<Elem>(v));
    if (!vals.eof()) throw ParseError(lineno, colon + 2, "bad image value");
    try {
      phi[static_cast<std::size_t>(a)] = Perm(std::move(img));
    } catch (const LoopError& e) {
      throw ParseError(lineno, colon + 2, e.what());
    }
  }
  std::vector<Perm> out;
  for (std::size_t a = 0; a < phi.size(); ++a) {
    if (!phi[a]) throw ParseError(lineno, 1, "missing phi_" + std::to_string(a));
    out.push_back(*phi[a]);
  }
  return ActionMap(domain, codomain, std::move(out));
}

}  // namespace ccloop
