#include "ccloop/structure.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

#include "ccloop/identities.hpp"

namespace ccloop {

// ---- autotopisms -----------------------------------------------------------

bool is_autotopism(const LoopTable& q, const Perm& alpha, const Perm& beta, const Perm& gamma) {
  const int n = q.order();
  if (alpha.size() != n || beta.size() != n || gamma.size() != n) return false;
  for (Elem y = 0; y < n; ++y)
    for (Elem z = 0; z < n; ++z)
      if (q.mul(alpha(y), beta(z)) != gamma(q.mul(y, z))) return false;
  return true;
}

Autotopism::Autotopism(const LoopTable& q, Perm alpha, Perm beta, Perm gamma)
    : alpha_(std::move(alpha)), beta_(std::move(beta)), gamma_(std::move(gamma)) {
  if (!is_autotopism(q, alpha_, beta_, gamma_)) throw LoopError("triple is not an autotopism");
}

// ---- nuclei ----------------------------------------------------------------

Nuclei nuclei(const LoopTable& q) {
  const int n = q.order();
  Nuclei r{ElemSet(n), ElemSet(n), ElemSet(n), ElemSet(n)};
  for (Elem a = 0; a < n; ++a) {
    bool l = true, m = true, rt = true;
    for (Elem x = 0; x < n && (l || m || rt); ++x)
      for (Elem y = 0; y < n; ++y) {
        l = l && q.mul(a, q.mul(x, y)) == q.mul(q.mul(a, x), y);
        m = m && q.mul(q.mul(x, a), y) == q.mul(x, q.mul(a, y));
        rt = rt && q.mul(x, q.mul(y, a)) == q.mul(q.mul(x, y), a);
      }
    if (l) r.left.insert(a);
    if (m) r.middle.insert(a);
    if (rt) r.right.insert(a);
  }
  r.nucleus = r.left & r.middle & r.right;
  return r;
}

ElemSet nucleus(const LoopTable& q) { return nuclei(q).nucleus; }

ElemSet commutant(const LoopTable& q) {
  ElemSet c(q.order());
  for (Elem x = 0; x < q.order(); ++x) {
    bool ok = true;
    for (Elem y = 0; y < q.order() && ok; ++y) ok = q.mul(x, y) == q.mul(y, x);
    if (ok) c.insert(x);
  }
  return c;
}

ElemSet center(const LoopTable& q) { return nucleus(q) & commutant(q); }

// ---- subloops --------------------------------------------------------------

ElemSet closure(const LoopTable& q, const ElemSet& s) {
  ElemSet out = s;
  out.insert(0);
  std::vector<Elem> members = out.members();
  // Every pair is combined once: when u is appended, it is paired with all
  // earlier members (both orders) and with itself.
  for (std::size_t i = 0; i < members.size(); ++i) {
    const Elem u = members[i];
    for (std::size_t j = 0; j <= i; ++j) {
      const Elem v = members[j];
      const Elem products[6] = {q.mul(u, v), q.mul(v, u), q.ldiv(u, v),
                                q.ldiv(v, u), q.rdiv(u, v), q.rdiv(v, u)};
      for (Elem p : products)
        if (!out.contains(p)) {
          out.insert(p);
          members.push_back(p);
        }
    }
  }
  return out;
}

SubloopInfo generate_subloop(const LoopTable& q, const ElemSet& s) {
  SubloopInfo info;
  info.members = closure(q, s);
  info.generators = s.members();
  info.is_normal = is_normal(q, info.members);
  return info;
}

SubloopInfo generate_subloop(const LoopTable& q, const std::vector<Elem>& gens) {
  return generate_subloop(q, ElemSet::of(q.order(), gens));
}

std::optional<std::array<Elem, 3>> association_failure(const LoopTable& q, const ElemSet& a,
                                                       const ElemSet& b, const ElemSet& c) {
  const auto am = a.members(), bm = b.members(), cm = c.members();
  for (Elem x : am)
    for (Elem y : bm) {
      const Elem xy = q.mul(x, y);
      for (Elem z : cm)
        if (q.mul(x, q.mul(y, z)) != q.mul(xy, z)) return std::array<Elem, 3>{x, y, z};
    }
  return std::nullopt;
}

bool associates(const LoopTable& q, const ElemSet& a, const ElemSet& b, const ElemSet& c) {
  return !association_failure(q, a, b, c);
}

bool associates(const LoopTable& q, const ElemSet& s) { return associates(q, s, s, s); }

Associators associator(const LoopTable& q, Elem x, Elem y, Elem z) {
  const Elem left = q.mul(x, q.mul(y, z));
  const Elem right = q.mul(q.mul(x, y), z);
  return {q.ldiv(left, right), q.rdiv(left, right)};
}

InnerMaps inner_maps(const LoopTable& q, Elem x, Elem y) {
  const int n = q.order();
  std::vector<Elem> r(static_cast<std::size_t>(n)), l(static_cast<std::size_t>(n));
  const Elem xy = q.mul(x, y), yx = q.mul(y, x);
  for (Elem z = 0; z < n; ++z) {
    r[static_cast<std::size_t>(z)] = q.rdiv(q.mul(q.mul(z, x), y), xy);
    l[static_cast<std::size_t>(z)] = q.ldiv(yx, q.mul(y, q.mul(x, z)));
  }
  return {Perm(std::move(r)), Perm(std::move(l))};
}

Perm t_map(const LoopTable& q, Elem x) {
  std::vector<Elem> t(static_cast<std::size_t>(q.order()));
  for (Elem z = 0; z < q.order(); ++z) t[static_cast<std::size_t>(z)] = q.ldiv(x, q.mul(z, x));
  return Perm(std::move(t));
}

// ---- automorphisms and isomorphisms ---------------------------------------

bool is_automorphism(const LoopTable& q, const Perm& alpha) {
  if (alpha.size() != q.order()) return false;
  for (Elem x = 0; x < q.order(); ++x)
    for (Elem y = 0; y < q.order(); ++y)
      if (alpha(q.mul(x, y)) != q.mul(alpha(x), alpha(y))) return false;
  return true;
}

bool is_nuclear(const LoopTable& q, const Perm& alpha, const ElemSet& nuc) {
  for (Elem x = 0; x < q.order(); ++x)
    if (!nuc.contains(q.ldiv(x, alpha(x)))) return false;
  return true;
}

std::vector<std::array<int, 6>> element_profiles(const LoopTable& q) {
  const int n = q.order();
  const auto nuc = nucleus(q);
  const auto comm = commutant(q);
  std::vector<std::array<int, 6>> out(static_cast<std::size_t>(n));
  for (Elem x = 0; x < n; ++x) {
    int left_len = 0, right_len = 0;
    Elem l = 0, r = 0;
    do {
      l = q.mul(x, l);
      ++left_len;
    } while (l != 0);
    do {
      r = q.mul(r, x);
      ++right_len;
    } while (r != 0);
    out[static_cast<std::size_t>(x)] = {closure(q, ElemSet(n, {x})).size(), left_len, right_len,
                                        q.mul(x, x) == 0 ? 1 : 0, nuc.contains(x) ? 1 : 0,
                                        (nuc.contains(x) && comm.contains(x)) ? 1 : 0};
  }
  return out;
}

namespace {

// Partial injective map between two loops of the same order that is closed
// under the three operations on its domain.
class PartialHom {
 public:
  PartialHom(const LoopTable& a, const LoopTable& b)
      : a_(a), b_(b),
        image_(static_cast<std::size_t>(a.order()), -1),
        preimage_(static_cast<std::size_t>(a.order()), -1) {
    set(0, 0);
    known_.push_back(0);
  }

  // Maps x -> y and closes the domain; false on any inconsistency.
  bool add(Elem x, Elem y) {
    if (image_[static_cast<std::size_t>(x)] >= 0) return image_[static_cast<std::size_t>(x)] == y;
    if (preimage_[static_cast<std::size_t>(y)] >= 0) return false;
    set(x, y);
    std::size_t processed = known_.size();
    known_.push_back(x);
    for (std::size_t i = processed; i < known_.size(); ++i) {
      const Elem u = known_[i];
      for (std::size_t j = 0; j <= i; ++j) {
        const Elem v = known_[j];
        const Elem iu = image_[static_cast<std::size_t>(u)], iv = image_[static_cast<std::size_t>(v)];
        const std::pair<Elem, Elem> pairs[6] = {
            {a_.mul(u, v), b_.mul(iu, iv)},   {a_.mul(v, u), b_.mul(iv, iu)},
            {a_.ldiv(u, v), b_.ldiv(iu, iv)}, {a_.ldiv(v, u), b_.ldiv(iv, iu)},
            {a_.rdiv(u, v), b_.rdiv(iu, iv)}, {a_.rdiv(v, u), b_.rdiv(iv, iu)}};
        for (auto [s, t] : pairs) {
          const Elem cur = image_[static_cast<std::size_t>(s)];
          if (cur >= 0) {
            if (cur != t) return false;
            continue;
          }
          if (preimage_[static_cast<std::size_t>(t)] >= 0) return false;
          set(s, t);
          known_.push_back(s);
        }
      }
    }
    return true;
  }

  bool total() const { return known_.size() == image_.size(); }
  Perm perm() const { return Perm(image_); }

 private:
  void set(Elem x, Elem y) {
    image_[static_cast<std::size_t>(x)] = y;
    preimage_[static_cast<std::size_t>(y)] = x;
  }

  const LoopTable& a_;
  const LoopTable& b_;
  std::vector<Elem> image_, preimage_;
  std::vector<Elem> known_;
};

// Greedy generating sequence; elements whose profile class is smallest come
// first so that the backtracking below branches as little as possible.
std::vector<Elem> generating_sequence(const LoopTable& q, const std::vector<std::array<int, 6>>& prof) {
  std::map<std::array<int, 6>, int> class_size;
  for (const auto& p : prof) ++class_size[p];
  std::vector<Elem> order(static_cast<std::size_t>(q.order()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Elem x, Elem y) {
    const int cx = class_size[prof[static_cast<std::size_t>(x)]];
    const int cy = class_size[prof[static_cast<std::size_t>(y)]];
    if (cx != cy) return cx < cy;
    return prof[static_cast<std::size_t>(x)][0] > prof[static_cast<std::size_t>(y)][0];
  });
  std::vector<Elem> gens;
  ElemSet span = closure(q, ElemSet(q.order()));
  for (Elem x : order) {
    if (span.contains(x)) continue;
    gens.push_back(x);
    ElemSet s = span;
    s.insert(x);
    span = closure(q, s);
    if (span.is_full()) break;
  }
  return gens;
}

// Enumerates isomorphisms a -> b; `emit` returns false to stop.
template <typename Emit>
void enumerate_isomorphisms(const LoopTable& a, const LoopTable& b, Emit&& emit) {
  if (a.order() != b.order()) return;
  const auto pa = element_profiles(a);
  const auto pb = element_profiles(b);
  {
    auto sa = pa, sb = pb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return;
  }
  const auto gens = generating_sequence(a, pa);
  bool stop = false;
  auto rec = [&](auto&& self, std::size_t level, const PartialHom& partial) -> void {
    if (stop) return;
    if (level == gens.size()) {
      ensure(partial.total(), "generating sequence does not generate");
      if (!emit(partial.perm())) stop = true;
      return;
    }
    const Elem g = gens[level];
    for (Elem c = 0; c < b.order() && !stop; ++c) {
      if (pb[static_cast<std::size_t>(c)] != pa[static_cast<std::size_t>(g)]) continue;
      PartialHom next = partial;
      if (next.add(g, c)) self(self, level + 1, next);
    }
  };
  rec(rec, 0, PartialHom(a, b));
}

bool is_isomorphism(const LoopTable& a, const LoopTable& b, const Perm& p) {
  for (Elem x = 0; x < a.order(); ++x)
    for (Elem y = 0; y < a.order(); ++y)
      if (p(a.mul(x, y)) != b.mul(p(x), p(y))) return false;
  return true;
}

}  // namespace

std::vector<Perm> automorphisms(const LoopTable& q, int bound) {
  if (q.order() > bound) throw OrderTooLarge(q.order(), bound);
  std::vector<Perm> out;
  enumerate_isomorphisms(q, q, [&](Perm p) {
    ensure(is_automorphism(q, p), "extension produced a non-automorphism");
    out.push_back(std::move(p));
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Perm> nuclear_automorphisms(const LoopTable& q, int bound) {
  const auto nuc = nucleus(q);
  std::vector<Perm> out;
  for (auto& a : automorphisms(q, bound))
    if (is_nuclear(q, a, nuc)) out.push_back(std::move(a));
  return out;
}

std::optional<Perm> find_isomorphism(const LoopTable& a, const LoopTable& b) {
  std::optional<Perm> found;
  enumerate_isomorphisms(a, b, [&](Perm p) {
    ensure(is_isomorphism(a, b, p), "extension produced a non-isomorphism");
    found = std::move(p);
    return false;
  });
  return found;
}

bool are_isomorphic(const LoopTable& a, const LoopTable& b) { return find_isomorphism(a, b).has_value(); }

// ---- normality and quotients -----------------------------------------------

namespace {

void require_subloop(const LoopTable& q, const ElemSet& h) {
  if (h.universe() != q.order() || !h.contains(0) || closure(q, h) != h)
    throw NotSubloop("set " + h.to_string() + " is not a subloop");
}

struct CosetPartition {
  std::vector<Elem> cls;  // element -> coset index (cosets ordered by least member)
  std::vector<ElemSet> cosets;
};

// Left cosets xH, if they partition Q and agree with the right cosets Hx.
std::optional<CosetPartition> coset_partition(const LoopTable& q, const ElemSet& h) {
  const int n = q.order();
  const auto hm = h.members();
  CosetPartition p;
  p.cls.assign(static_cast<std::size_t>(n), -1);
  for (Elem x = 0; x < n; ++x) {
    if (p.cls[static_cast<std::size_t>(x)] >= 0) continue;
    ElemSet left(n), right(n);
    for (Elem a : hm) {
      left.insert(q.mul(x, a));
      right.insert(q.mul(a, x));
    }
    if (left != right) return std::nullopt;
    const auto idx = static_cast<Elem>(p.cosets.size());
    for (Elem y : left.members()) {
      if (p.cls[static_cast<std::size_t>(y)] >= 0) return std::nullopt;
      p.cls[static_cast<std::size_t>(y)] = idx;
    }
    p.cosets.push_back(left);
  }
  return p;
}

// First pair (u, v) whose product's coset is not determined by the cosets of u and v.
std::optional<std::pair<Elem, Elem>> congruence_failure(const LoopTable& q, const CosetPartition& p) {
  const auto k = p.cosets.size();
  std::vector<Elem> table(k * k, -1);
  for (Elem u = 0; u < q.order(); ++u)
    for (Elem v = 0; v < q.order(); ++v) {
      auto& slot = table[static_cast<std::size_t>(p.cls[static_cast<std::size_t>(u)]) * k +
                         static_cast<std::size_t>(p.cls[static_cast<std::size_t>(v)])];
      const Elem c = p.cls[static_cast<std::size_t>(q.mul(u, v))];
      if (slot < 0) slot = c;
      else if (slot != c) return std::make_pair(u, v);
    }
  return std::nullopt;
}

}  // namespace

bool is_normal(const LoopTable& q, const ElemSet& h) {
  require_subloop(q, h);
  auto p = coset_partition(q, h);
  return p && !congruence_failure(q, *p);
}

bool is_normal_by_inner_maps(const LoopTable& q, const ElemSet& h) {
  require_subloop(q, h);
  const auto hm = h.members();
  auto invariant = [&](const Perm& p) {
    for (Elem a : hm)
      if (!h.contains(p(a))) return false;
    return true;
  };
  for (Elem x = 0; x < q.order(); ++x) {
    if (!invariant(t_map(q, x))) return false;
    for (Elem y = 0; y < q.order(); ++y) {
      auto im = inner_maps(q, x, y);
      if (!invariant(im.r) || !invariant(im.l)) return false;
    }
  }
  return true;
}

Quotient quotient(const LoopTable& q, const ElemSet& h) {
  require_subloop(q, h);
  auto p = coset_partition(q, h);
  if (!p) {
    // Some x*a (a in H) falls outside Hx, or left cosets overlap.
    for (Elem x = 0; x < q.order(); ++x) {
      ElemSet right(q.order());
      for (Elem a : h.members()) right.insert(q.mul(a, x));
      for (Elem a : h.members())
        if (!right.contains(q.mul(x, a))) throw NotNormal(x, a);
    }
    throw NotNormal(0, 0);
  }
  if (auto bad = congruence_failure(q, *p)) throw NotNormal(bad->first, bad->second);
  const auto k = p->cosets.size();
  std::vector<Elem> reps(k);
  for (std::size_t i = 0; i < k; ++i) reps[i] = p->cosets[i].min();
  std::vector<std::vector<Elem>> grid(k, std::vector<Elem>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) grid[i][j] = p->cls[static_cast<std::size_t>(q.mul(reps[i], reps[j]))];
  return {LoopTable::from_rows(grid), p->cls, p->cosets};
}

// ---- subloop lattice ---------------------------------------------------------

std::vector<SubloopInfo> all_subloops(const LoopTable& q, int bound) {
  if (q.order() > bound) throw OrderTooLarge(q.order(), bound);
  const int n = q.order();
  std::map<std::vector<Elem>, std::vector<Elem>> found;  // members -> generators
  std::deque<std::pair<ElemSet, std::vector<Elem>>> work;
  auto visit = [&](ElemSet s, std::vector<Elem> gens) {
    auto key = s.members();
    if (found.emplace(key, gens).second) work.emplace_back(std::move(s), std::move(gens));
  };
  visit(ElemSet(n, {0}), {});
  // Closing each known subloop with one more element reaches every subloop:
  // any H = <g1..gk> is reached through <g1>, <g1,g2>, ...
  while (!work.empty()) {
    auto [s, gens] = work.front();
    work.pop_front();
    for (Elem x = 1; x < n; ++x) {
      if (s.contains(x)) continue;
      ElemSet t = s;
      t.insert(x);
      auto g = gens;
      g.push_back(x);
      visit(closure(q, t), std::move(g));
    }
  }
  std::vector<SubloopInfo> out;
  for (auto& [members, gens] : found) {
    SubloopInfo info;
    info.members = ElemSet::of(n, members);
    info.generators = gens;
    info.is_normal = is_normal(q, info.members);
    out.push_back(std::move(info));
  }
  std::sort(out.begin(), out.end(), [](const SubloopInfo& a, const SubloopInfo& b) {
    if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
    return a.members.members() < b.members.members();
  });
  return out;
}

LagrangeReport lagrange_report(const LoopTable& q, int bound) {
  const auto subs = all_subloops(q, bound);
  LagrangeReport r;
  std::set<int> orders;
  for (const auto& s : subs) orders.insert(s.members.size());
  r.orders.assign(orders.begin(), orders.end());
  for (const auto& outer : subs)
    for (const auto& inner : subs) {
      if (inner.members.size() > outer.members.size() || !inner.members.is_subset_of(outer.members)) continue;
      if (outer.members.size() % inner.members.size() != 0) {
        r.holds = false;
        r.violation = std::make_pair(inner.members, outer.members);
        return r;
      }
    }
  return r;
}

bool lagrange_check(const LoopTable& q, int bound) { return lagrange_report(q, bound).holds; }

// ---- prime-power centers -------------------------------------------------------

std::optional<std::pair<int, int>> prime_power(int n) {
  if (n < 2) return std::nullopt;
  int p = 2;
  while (n % p != 0) ++p;
  int k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  if (n != 1) return std::nullopt;
  return std::make_pair(p, k);
}

namespace {

// Normal subloops of orders p^0 .. p^k of a CC-loop of order p^k, built from
// a central subgroup of order p and recursion through the quotient.
std::vector<ElemSet> normal_chain(const LoopTable& q, int p) {
  const int n = q.order();
  std::vector<ElemSet> chain{ElemSet(n, {0})};
  if (n == 1) return chain;
  const auto z = center(q);
  ensure(z.size() > 1, "prime-power CC-loop with trivial center");
  const Elem c = z.members()[1];
  const int ord = element_order(q, c);
  const Elem gen = power(q, c, ord / p);
  const auto sub = closure(q, ElemSet(n, {gen}));
  ensure(sub.size() == p, "central subgroup of order p expected");
  auto quo = quotient(q, sub);
  ensure(is_cc(quo.table), "quotient of a CC-loop is not CC");
  for (const auto& s : normal_chain(quo.table, p)) {
    ElemSet pre(n);
    for (Elem x = 0; x < n; ++x)
      if (s.contains(quo.projection[static_cast<std::size_t>(x)])) pre.insert(x);
    chain.push_back(pre);
  }
  return chain;
}

}  // namespace

CenterTowerReport center_tower_check(const LoopTable& q) {
  const auto pp = prime_power(q.order());
  if (!pp) throw NotPrimePower(q.order());
  if (!is_cc(q)) throw NotCC("center tower requires a CC-loop");
  CenterTowerReport r;
  r.prime = pp->first;
  r.exponent = pp->second;
  const auto z = center(q);
  const auto zp = prime_power(z.size());
  r.center_exponent = z.size() == 1 ? 0 : (zp && zp->first == r.prime ? zp->second : -1);
  r.center_ok = r.center_exponent > 0 && r.center_exponent != r.exponent - 1;
  r.normal_chain = normal_chain(q, r.prime);
  r.chain_ok = static_cast<int>(r.normal_chain.size()) == r.exponent + 1;
  for (std::size_t m = 0; m < r.normal_chain.size() && r.chain_ok; ++m) {
    int expected = 1;
    for (std::size_t i = 0; i < m; ++i) expected *= r.prime;
    r.chain_ok = r.normal_chain[m].size() == expected && is_normal(q, r.normal_chain[m]);
  }
  return r;
}

}  // namespace ccloop
