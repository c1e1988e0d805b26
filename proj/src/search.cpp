#include "ccloop/search.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <map>
#include <sstream>

#include "ccloop/structure.hpp"

namespace ccloop {

namespace {

std::uint64_t bit(Elem v) { return std::uint64_t{1} << v; }

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto comma = s.find(',', start);
    if (comma == std::string_view::npos) comma = s.size();
    auto tok = trim(s.substr(start, comma - start));
    if (!tok.empty()) out.push_back(tok);
    start = comma + 1;
  }
  return out;
}

std::optional<int> exponent_token(std::string_view token) {
  constexpr std::string_view prefix = "exponent-";
  if (token.substr(0, prefix.size()) != prefix) return std::nullopt;
  const auto digits = token.substr(prefix.size());
  if (digits.empty() || digits.size() > 4 || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return std::nullopt;
  const int k = std::stoi(std::string(digits));
  if (k < 1) return std::nullopt;
  return k;
}

}  // namespace

// ---- spec vocabulary -------------------------------------------------------

void add_requirement(SearchSpec& spec, std::string_view token) {
  if (token == "nonassociative") {
    spec.forbid.push_back(Property::Group);
    return;
  }
  if (auto k = exponent_token(token)) {
    spec.exponent = *k;
    return;
  }
  auto p = property_from_name(token);
  if (!p) throw LoopError("unknown requirement '" + std::string(token) + "'");
  spec.require.push_back(*p);
}

void add_forbidden(SearchSpec& spec, std::string_view token) {
  auto p = property_from_name(token);
  if (!p) throw LoopError("unknown property '" + std::string(token) + "'");
  spec.forbid.push_back(*p);
}

SearchSpec parse_search_spec(std::string_view text) {
  SearchSpec spec;
  bool have_order = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const auto line = trim(std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, 1, "expected key = value");
    const auto key = trim(std::string_view(line).substr(0, eq));
    auto value = trim(std::string_view(line).substr(eq + 1));
    const std::size_t col = raw.find_first_not_of(" \t") + eq + 2;
    auto as_int = [&](long long lo, long long hi) {
      try {
        std::size_t used = 0;
        const long long v = std::stoll(value, &used);
        if (used != value.size() || v < lo || v > hi) throw std::out_of_range("");
        return v;
      } catch (const std::exception&) {
        throw ParseError(lineno, col, "bad integer for '" + key + "'");
      }
    };
    auto as_bool = [&] {
      if (value == "true" || value == "yes" || value == "1") return true;
      if (value == "false" || value == "no" || value == "0") return false;
      throw ParseError(lineno, col, "bad boolean for '" + key + "'");
    };
    try {
      if (key == "order") {
        spec.order = static_cast<int>(as_int(1, kSearchHardLimit));
        have_order = true;
      } else if (key == "require") {
        for (const auto& t : split_list(value)) add_requirement(spec, t);
      } else if (key == "forbid") {
        for (const auto& t : split_list(value)) add_forbidden(spec, t);
      } else if (key == "identity") {
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        spec.identities.push_back(parse_identity(value));
        spec.identity_sources.push_back(value);
      } else if (key == "limit") {
        spec.limit = static_cast<std::size_t>(as_int(0, 1LL << 40));
      } else if (key == "iso_reduce") {
        spec.iso_reduce = as_bool();
      } else if (key == "seed") {
        spec.seed = static_cast<std::uint64_t>(as_int(0, 1LL << 62));
      } else if (key == "symmetry") {
        if (value == "lexrow") spec.lex_min_row = true;
        else if (value == "none") spec.lex_min_row = false;
        else throw ParseError(lineno, col, "symmetry must be lexrow or none");
      } else if (key == "timeout") {
        spec.timeout_seconds = static_cast<double>(as_int(0, 1LL << 30));
      } else {
        throw ParseError(lineno, 1, "unknown key '" + key + "'");
      }
    } catch (const SyntaxError& e) {
      throw ParseError(lineno, col + e.position, e.what());
    } catch (const ParseError&) {
      throw;
    } catch (const LoopError& e) {
      throw ParseError(lineno, col, e.what());
    }
  }
  if (!have_order) throw ParseError(lineno + 1, 1, "missing 'order'");
  return spec;
}

std::string write_search_spec(const SearchSpec& spec) {
  std::string s = "order = " + std::to_string(spec.order) + "\n";
  std::vector<std::string> req;
  for (auto p : spec.require) req.emplace_back(property_name(p));
  if (spec.exponent) req.push_back("exponent-" + std::to_string(*spec.exponent));
  std::vector<std::string> forb;
  for (auto p : spec.forbid) forb.emplace_back(property_name(p));
  auto join = [](const std::vector<std::string>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i];
    return out;
  };
  if (!req.empty()) s += "require = " + join(req) + "\n";
  if (!forb.empty()) s += "forbid = " + join(forb) + "\n";
  for (const auto& id : spec.identities) s += "identity = " + print_identity(id) + "\n";
  s += "limit = " + std::to_string(spec.limit) + "\n";
  s += std::string("iso_reduce = ") + (spec.iso_reduce ? "true" : "false") + "\n";
  s += "seed = " + std::to_string(spec.seed) + "\n";
  s += std::string("symmetry = ") + (spec.lex_min_row ? "lexrow" : "none") + "\n";
  if (spec.timeout_seconds > 0) s += "timeout = " + std::to_string(static_cast<long long>(spec.timeout_seconds)) + "\n";
  return s;
}

std::string_view status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::Exhausted: return "exhausted";
    case SearchStatus::LimitReached: return "limit_reached";
    case SearchStatus::Unsatisfiable: return "unsatisfiable";
    case SearchStatus::TimedOut: return "timed_out";
  }
  return "?";
}

Constraints constraints_for(const SearchSpec& spec) {
  Constraints c;
  auto has = [&](Property p) { return std::find(spec.require.begin(), spec.require.end(), p) != spec.require.end(); };
  std::vector<std::string> ids;
  if (has(Property::CC) || has(Property::Extra)) c.rcc = c.lcc = true;
  if (has(Property::PA) || has(Property::Diassociative) || has(Property::Group) || has(Property::Extra) ||
      has(Property::Moufang) || has(Property::BooleanGroup) || spec.exponent)
    c.pa = true;
  if (has(Property::Group) || has(Property::BooleanGroup)) ids.push_back("x*(y*z) = (x*y)*z");
  if (has(Property::BooleanGroup)) ids.push_back("x*x = 1");
  if (has(Property::Commutative) || has(Property::BooleanGroup)) ids.push_back("x*y = y*x");
  if (has(Property::Moufang)) ids.push_back("(x*y)*(z*x) = (x*(y*z))*x");
  if (has(Property::Extra)) ids.push_back("x*(y*(z*x)) = ((x*y)*z)*x");
  if (has(Property::Flexible)) ids.push_back("x*(y*x) = (x*y)*x");
  if (has(Property::LeftAlt)) ids.push_back("x*(x*y) = (x*x)*y");
  if (has(Property::RightAlt)) ids.push_back("(y*x)*x = y*(x*x)");
  if (has(Property::AAIP)) ids.push_back("(x*y)^r = y^r*x^r");
  if (has(Property::AIP)) {
    ids.push_back("x^r = x^l");
    ids.push_back("(x*y)^r = x^r*y^r");
  }
  if (spec.exponent && *spec.exponent > 1) {
    std::string pow = "x";
    for (int i = 1; i < *spec.exponent; ++i) pow = "x*(" + pow + ")";
    ids.push_back(pow + " = 1");
  } else if (spec.exponent) {
    ids.push_back("x = 1");
  }
  for (const auto& s : ids) c.identities.push_back(parse_identity(s));
  for (const auto& id : spec.identities) c.identities.push_back(id);
  return c;
}

// ---- partial tables --------------------------------------------------------

PartialTable::PartialTable(int n)
    : n_(n), open_(0),
      val_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1),
      dom_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0),
      row_pos_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1),
      col_pos_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1) {
  if (n < 1 || n > kSearchHardLimit) throw OrderTooLarge(n, kSearchHardLimit);
  const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (bit(n) - 1);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      if (x == 0 || y == 0) {
        const Elem v = x == 0 ? y : x;
        val_[idx(x, y)] = v;
        dom_[idx(x, y)] = bit(v);
        row_pos_[idx(x, v)] = y;
        col_pos_[idx(y, v)] = x;
      } else {
        dom_[idx(x, y)] = full & ~bit(x) & ~bit(y);
        ++open_;
      }
    }
  for (Elem x = 1; x < n; ++x)
    for (Elem y = 1; y < n; ++y)
      if (val_[idx(x, y)] < 0 && std::popcount(dom_[idx(x, y)]) == 1)
        assign(x, y, static_cast<Elem>(std::countr_zero(dom_[idx(x, y)])));
}

bool PartialTable::fail(Elem x, Elem y) {
  if (!conflict_) conflict_ = Cell{x, y};
  return false;
}

bool PartialTable::assign(Elem x, Elem y, Elem v) {
  if (v < 0 || v >= n_) return fail(x, y);
  const auto i = idx(x, y);
  if (val_[i] >= 0) return val_[i] == v || fail(x, y);
  if (!(dom_[i] & bit(v))) return fail(x, y);
  if (row_pos_[idx(x, v)] >= 0 || col_pos_[idx(y, v)] >= 0) return fail(x, y);
  const auto old = dom_[i];
  dom_[i] = bit(v);
  val_[i] = v;
  row_pos_[idx(x, v)] = y;
  col_pos_[idx(y, v)] = x;
  --open_;
  ++assigned_;
  queue_.push_back({x, y, v, old});
  return true;
}

bool PartialTable::remove(Elem x, Elem y, Elem v) {
  const auto i = idx(x, y);
  if (val_[i] >= 0) return val_[i] != v || fail(x, y);
  if (!(dom_[i] & bit(v))) return true;
  dom_[i] &= ~bit(v);
  if (dom_[i] == 0) return fail(x, y);
  if (std::popcount(dom_[i]) == 1 && !assign(x, y, static_cast<Elem>(std::countr_zero(dom_[i])))) return false;
  return hidden_in_row(x, v) && hidden_in_col(y, v);
}

bool PartialTable::hidden_in_row(Elem x, Elem v) {
  if (row_pos_[idx(x, v)] >= 0) return true;
  Elem only = -1;
  for (Elem y = 0; y < n_; ++y)
    if (val_[idx(x, y)] < 0 && (dom_[idx(x, y)] & bit(v))) {
      if (only >= 0) return true;
      only = y;
    }
  if (only < 0) return fail(x, 0);
  return assign(x, only, v);
}

bool PartialTable::hidden_in_col(Elem y, Elem v) {
  if (col_pos_[idx(y, v)] >= 0) return true;
  Elem only = -1;
  for (Elem x = 0; x < n_; ++x)
    if (val_[idx(x, y)] < 0 && (dom_[idx(x, y)] & bit(v))) {
      if (only >= 0) return true;
      only = x;
    }
  if (only < 0) return fail(0, y);
  return assign(only, y, v);
}

LoopTable PartialTable::to_table() const {
  std::vector<std::vector<Elem>> g(static_cast<std::size_t>(n_), std::vector<Elem>(static_cast<std::size_t>(n_)));
  for (Elem x = 0; x < n_; ++x)
    for (Elem y = 0; y < n_; ++y) g[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = val_[idx(x, y)];
  return LoopTable::from_rows(g);
}

// ---- propagation -----------------------------------------------------------

class Propagator {
 public:
  Propagator(PartialTable& t, const Constraints& c) : t_(t), c_(c), n_(t.order()) {
    for (const auto& id : c_.identities) {
      compiled_.push_back({compile_term(*id.lhs, id.vars), compile_term(*id.rhs, id.vars),
                           static_cast<int>(id.vars.size())});
    }
  }

  bool run() {
    if (t_.conflict_) return false;
    for (;;) {
      while (head_ < t_.queue_.size()) {
        const auto p = t_.queue_[head_++];
        if (!process(p)) return finish(false);
      }
      const auto before = t_.assigned_;
      for (const auto& id : compiled_)
        if (!ground_instances(id)) return finish(false);
      if (t_.assigned_ == before) break;
    }
    return finish(true);
  }

 private:
  struct View {
    PartialTable& t;
    bool tr;
    Elem val(Elem a, Elem b) const { return tr ? t.value(b, a) : t.value(a, b); }
    // b with a o b = v
    Elem rowpos(Elem a, Elem v) const { return tr ? t.col_pos(a, v) : t.row_pos(a, v); }
    // a with a o b = v
    Elem colpos(Elem b, Elem v) const { return tr ? t.row_pos(b, v) : t.col_pos(b, v); }
    bool assign(Elem a, Elem b, Elem v) const { return tr ? t.assign(b, a, v) : t.assign(a, b, v); }
  };

  struct CompiledIdentity {
    CompiledTerm lhs, rhs;
    int arity;
  };

  bool finish(bool ok) {
    t_.queue_.clear();
    head_ = 0;
    return ok;
  }

  bool process(const PartialTable::Pending& p) {
    for (Elem y = 0; y < n_; ++y)
      if (y != p.y && t_.value(p.x, y) < 0 && !t_.remove(p.x, y, p.v)) return false;
    for (Elem x = 0; x < n_; ++x)
      if (x != p.x && t_.value(x, p.y) < 0 && !t_.remove(x, p.y, p.v)) return false;
    for (auto rest = p.old_domain & ~bit(p.v); rest; rest &= rest - 1) {
      const auto u = static_cast<Elem>(std::countr_zero(rest));
      if (!t_.hidden_in_row(p.x, u) || !t_.hidden_in_col(p.y, u)) return false;
    }
    if (c_.rcc && !cc_triggers(View{t_, false}, p.x, p.y, p.v)) return false;
    if (c_.lcc && !cc_triggers(View{t_, true}, p.y, p.x, p.v)) return false;
    if (c_.pa && !pa_triggers(p.x, p.y, p.v)) return false;
    return true;
  }

  // Instance (x,y,z) of x o (y o z) = ((x o y) / x) o (x o z).
  bool rcc_instance(const View& v, Elem x, Elem y, Elem z) {
    const Elem a = v.val(y, z), e = v.val(x, y), c = v.val(x, z);
    if (a < 0 || e < 0 || c < 0) return true;
    const Elem b = v.val(x, a);
    const Elem f = v.colpos(x, e);
    if (f >= 0) {
      const Elem d = v.val(f, c);
      if (b >= 0 && d >= 0) return b == d || t_.fail(x, a);
      if (b >= 0) return v.assign(f, c, b);
      if (d >= 0) return v.assign(x, a, d);
      return true;
    }
    if (b >= 0) {
      const Elem f2 = v.colpos(c, b);
      if (f2 >= 0) return v.assign(f2, x, e);
    }
    return true;
  }

  // The cell (p,q) = r of the view takes each of the six roles in turn.
  bool cc_triggers(const View& v, Elem p, Elem q, Elem r) {
    for (Elem i = 0; i < n_; ++i) {
      if (!rcc_instance(v, i, p, q)) return false;  // (y,z)
      if (!rcc_instance(v, p, q, i)) return false;  // (x,y)
      if (!rcc_instance(v, p, i, q)) return false;  // (x,z)
      const Elem z = v.rowpos(i, q);                // (x,a) with a = q
      if (z >= 0 && !rcc_instance(v, p, i, z)) return false;
    }
    if (const Elem y = v.rowpos(q, r); y >= 0)  // (f,x) with x = q
      for (Elem z = 0; z < n_; ++z)
        if (!rcc_instance(v, q, y, z)) return false;
    for (Elem x = 0; x < n_; ++x) {  // (f,c) with f = p, c = q
      const Elem z = v.rowpos(x, q);
      if (z < 0) continue;
      if (const Elem e = v.val(p, x); e >= 0)
        if (const Elem y = v.rowpos(x, e); y >= 0 && !rcc_instance(v, x, y, z)) return false;
      if (const Elem a = v.rowpos(x, r); a >= 0)
        if (const Elem y = v.colpos(z, a); y >= 0 && !rcc_instance(v, x, y, z)) return false;
    }
    return true;
  }

  bool equalize(Elem i, Elem j) {
    const Elem a = t_.value(i, j), b = t_.value(j, i);
    if (a >= 0 && b >= 0) return a == b || t_.fail(i, j);
    if (a >= 0) return t_.assign(j, i, a);
    if (b >= 0) return t_.assign(i, j, b);
    return true;
  }

  // In a power-associative loop x*y = 1 iff y*x = 1, and x*(x*x) = (x*x)*x.
  bool pa_triggers(Elem p, Elem q, Elem r) {
    if (r == 0) {
      if (!t_.assign(q, p, 0)) return false;
    } else if (!t_.remove(q, p, 0)) {
      return false;
    }
    if (p == q && !equalize(p, r)) return false;
    if (t_.value(p, p) == q || t_.value(q, q) == p) return equalize(p, q);
    return true;
  }

  // Partial evaluation; *root holds the operands of the last instruction.
  Elem eval(const CompiledTerm& ct, const std::vector<Elem>& asg, Elem* op1, Elem* op2) {
    Elem stack[64];
    int sp = 0;
    const std::size_t last = ct.code.size() - 1;
    for (std::size_t i = 0; i < ct.code.size(); ++i) {
      const auto& ins = ct.code[i];
      using Op = CompiledTerm::Op;
      if (ins.op == Op::Var) {
        stack[sp++] = asg[static_cast<std::size_t>(ins.var)];
        continue;
      }
      if (ins.op == Op::One) {
        stack[sp++] = 0;
        continue;
      }
      if (ins.op == Op::LInv || ins.op == Op::RInv) {
        const Elem a = stack[sp - 1];
        if (i == last) *op1 = a;
        stack[sp - 1] = a < 0 ? -1 : (ins.op == Op::LInv ? t_.col_pos(a, 0) : t_.row_pos(a, 0));
        continue;
      }
      const Elem b = stack[--sp];
      const Elem a = stack[sp - 1];
      if (i == last) {
        *op1 = a;
        *op2 = b;
      }
      Elem r = -1;
      if (a >= 0 && b >= 0) {
        if (ins.op == Op::Mul) r = t_.value(a, b);
        else if (ins.op == Op::LDiv) r = t_.row_pos(a, b);
        else r = t_.col_pos(b, a);
      }
      stack[sp - 1] = r;
    }
    return stack[0];
  }

  // The root of `ct` must evaluate to `target`; deduce its cell if the
  // operands are known.
  bool deduce(const CompiledTerm& ct, Elem u, Elem w, Elem target) {
    using Op = CompiledTerm::Op;
    switch (ct.code.back().op) {
      case Op::Mul: return u < 0 || w < 0 || t_.assign(u, w, target);
      case Op::LDiv: return u < 0 || w < 0 || t_.assign(u, target, w);
      case Op::RDiv: return u < 0 || w < 0 || t_.assign(target, w, u);
      case Op::LInv: return u < 0 || t_.assign(target, u, 0);
      case Op::RInv: return u < 0 || t_.assign(u, target, 0);
      default: return true;
    }
  }

  bool ground_instances(const CompiledIdentity& id) {
    std::vector<Elem> asg(static_cast<std::size_t>(id.arity), 0);
    for (;;) {
      Elem l1 = -1, l2 = -1, r1 = -1, r2 = -1;
      const Elem l = eval(id.lhs, asg, &l1, &l2);
      const Elem r = eval(id.rhs, asg, &r1, &r2);
      if (l >= 0 && r >= 0) {
        if (l != r) return t_.fail(0, 0);
      } else if (l >= 0) {
        if (!deduce(id.rhs, r1, r2, l)) return false;
      } else if (r >= 0) {
        if (!deduce(id.lhs, l1, l2, r)) return false;
      }
      int k = id.arity - 1;
      while (k >= 0 && ++asg[static_cast<std::size_t>(k)] == n_) asg[static_cast<std::size_t>(k--)] = 0;
      if (k < 0) return true;
    }
  }

  PartialTable& t_;
  const Constraints& c_;
  const int n_;
  std::size_t head_ = 0;
  std::vector<CompiledIdentity> compiled_;
};

std::optional<Cell> propagate(PartialTable& t, const Constraints& c, SearchStats* stats) {
  const auto before = t.assignments();
  Propagator p(t, c);
  const bool ok = p.run();
  if (stats) stats->propagations += t.assignments() - before;
  if (ok) return std::nullopt;
  return t.conflict() ? *t.conflict() : Cell{0, 0};
}

// ---- search ----------------------------------------------------------------

std::vector<std::vector<Elem>> canonical_first_rows(int n) {
  std::vector<std::vector<Elem>> rows;
  if (n < 2) return rows;
  // Partitions of m into parts >= lo, ascending.
  std::vector<int> parts;
  auto emit = [&](int k) {
    std::vector<Elem> row(static_cast<std::size_t>(n));
    auto cycle = [&](int start, int len) {
      for (int i = 0; i < len; ++i) row[static_cast<std::size_t>(start + i)] = start + (i + 1) % len;
    };
    cycle(0, k);
    int start = k;
    for (int len : parts) {
      cycle(start, len);
      start += len;
    }
    rows.push_back(std::move(row));
  };
  std::function<void(int, int, int)> gen = [&](int k, int remaining, int lo) {
    if (remaining == 0) {
      emit(k);
      return;
    }
    for (int len = lo; len <= remaining; ++len) {
      if (remaining - len != 0 && remaining - len < len) continue;
      parts.push_back(len);
      gen(k, remaining - len, len);
      parts.pop_back();
    }
  };
  for (int k = 2; k <= n; ++k) gen(k, n - k, 2);
  return rows;
}

bool satisfies(const LoopTable& q, const SearchSpec& spec) {
  for (auto p : spec.require)
    if (!check_property(q, p).first) return false;
  for (auto p : spec.forbid)
    if (check_property(q, p).first) return false;
  for (const auto& id : spec.identities)
    if (!check_identity(q, id).holds) return false;
  if (spec.exponent) {
    for (Elem x = 0; x < q.order(); ++x) {
      if (!is_pa_element(q, x)) return false;
      if (*spec.exponent % element_order(q, x) != 0) return false;
    }
  }
  return true;
}

namespace {

std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Canonical first rows, those with fewer distinct cycle lengths first.
std::vector<std::vector<Elem>> root_rows(int n) {
  auto rows = canonical_first_rows(n);
  auto distinct = [](const std::vector<Elem>& row) {
    std::vector<bool> seen(row.size(), false);
    std::vector<int> lengths;
    for (std::size_t s = 0; s < row.size(); ++s) {
      if (seen[s]) continue;
      int len = 0;
      for (auto x = s; !seen[x]; x = static_cast<std::size_t>(row[x])) {
        seen[x] = true;
        ++len;
      }
      if (std::find(lengths.begin(), lengths.end(), len) == lengths.end()) lengths.push_back(len);
    }
    return lengths.size();
  };
  std::stable_sort(rows.begin(), rows.end(),
                   [&](const auto& a, const auto& b) { return distinct(a) < distinct(b); });
  return rows;
}

class Searcher {
 public:
  Searcher(const SearchSpec& spec, const std::function<void(const LoopTable&)>& on_model)
      : spec_(spec), constraints_(constraints_for(spec)), on_model_(on_model),
        start_(std::chrono::steady_clock::now()) {}

  SearchResult run() {
    const int n = spec_.order;
    PartialTable base(n);
    if (spec_.lex_min_row && n >= 2) {
      for (const auto& row : root_rows(n)) {
        if (stop_) break;
        PartialTable t = base;
        bool ok = true;
        for (Elem y = 1; y < n && ok; ++y) ok = t.assign(1, y, row[static_cast<std::size_t>(y)]);
        if (ok) dfs(std::move(t));
      }
    } else {
      dfs(std::move(base));
    }
    result_.stats.models = result_.models.size();
    result_.stats.wall_seconds = elapsed();
    if (timed_out_) result_.status = SearchStatus::TimedOut;
    else if (stop_) result_.status = SearchStatus::LimitReached;
    else if (result_.models.empty()) result_.status = SearchStatus::Unsatisfiable;
    else result_.status = SearchStatus::Exhausted;
    if (spec_.iso_reduce) result_.models = iso_reduce(result_.models);
    return std::move(result_);
  }

 private:
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  void dfs(PartialTable t) {
    if (stop_) return;
    ++result_.stats.nodes;
    if (spec_.timeout_seconds > 0 && (result_.stats.nodes & 255) == 0 && elapsed() > spec_.timeout_seconds) {
      stop_ = timed_out_ = true;
      return;
    }
    if (propagate(t, constraints_, &result_.stats)) return;
    const int n = t.order();
    if (t.complete()) {
      auto q = t.to_table();
      if (!satisfies(q, spec_)) {
        ++result_.stats.rejected;
        return;
      }
      if (on_model_) on_model_(q);
      result_.models.push_back(std::move(q));
      if (spec_.limit != 0 && result_.models.size() >= spec_.limit) stop_ = true;
      return;
    }
    Elem bx = -1, by = -1;
    int best = 65;
    for (Elem x = 1; x < n && best > 2; ++x)
      for (Elem y = 1; y < n; ++y)
        if (t.value(x, y) < 0) {
          const int c = std::popcount(t.domain(x, y));
          if (c < best) {
            best = c;
            bx = x;
            by = y;
            if (c == 2) break;
          }
        }
    std::vector<Elem> values;
    for (auto d = t.domain(bx, by); d; d &= d - 1) values.push_back(static_cast<Elem>(std::countr_zero(d)));
    if (spec_.seed != 0) {
      const std::uint64_t salt = mix(spec_.seed ^ mix(static_cast<std::uint64_t>(bx * 64 + by)));
      std::sort(values.begin(), values.end(), [&](Elem a, Elem b) {
        const auto ha = mix(salt + static_cast<std::uint64_t>(a)), hb = mix(salt + static_cast<std::uint64_t>(b));
        return ha != hb ? ha < hb : a < b;
      });
    }
    for (std::size_t i = 0; i < values.size() && !stop_; ++i) {
      if (i + 1 == values.size()) {
        if (t.assign(bx, by, values[i])) dfs(std::move(t));
        return;
      }
      PartialTable child = t;
      if (child.assign(bx, by, values[i])) dfs(std::move(child));
    }
  }

  const SearchSpec& spec_;
  Constraints constraints_;
  const std::function<void(const LoopTable&)>& on_model_;
  std::chrono::steady_clock::time_point start_;
  SearchResult result_;
  bool stop_ = false;
  bool timed_out_ = false;
};

}  // namespace

SearchResult find_models(const SearchSpec& spec, const std::function<void(const LoopTable&)>& on_model) {
  if (spec.order < 1 || spec.order > kSearchHardLimit) throw OrderTooLarge(spec.order, kSearchHardLimit);
  const bool constrained = !spec.require.empty() || !spec.forbid.empty() || !spec.identities.empty() || spec.exponent;
  if (constrained && spec.order > spec.order_bound) throw OrderTooLarge(spec.order, spec.order_bound);
  return Searcher(spec, on_model).run();
}

// ---- isomorphism reduction -----------------------------------------------------

namespace {

struct Invariant {
  std::vector<std::array<int, 6>> profiles;
  int nucleus_size;
  int center_size;
  auto operator<=>(const Invariant&) const = default;
};

Invariant invariant_of(const LoopTable& q) {
  Invariant inv{element_profiles(q), nucleus(q).size(), center(q).size()};
  std::sort(inv.profiles.begin(), inv.profiles.end());
  return inv;
}

}  // namespace

std::vector<LoopTable> iso_reduce(const std::vector<LoopTable>& models) {
  struct Class {
    Invariant inv;
    LoopTable first;
    LoopTable best;
  };
  std::vector<Class> classes;
  for (const auto& m : models) {
    auto inv = invariant_of(m);
    bool placed = false;
    for (auto& c : classes) {
      if (c.inv != inv || !are_isomorphic(c.first, m)) continue;
      if (m < c.best) c.best = m;
      placed = true;
      break;
    }
    if (!placed) classes.push_back({std::move(inv), m, m});
  }
  std::vector<LoopTable> out;
  for (auto& c : classes) out.push_back(std::move(c.best));
  return out;
}

std::string write_search_stream(const SearchResult& r, const SearchSpec& spec) {
  std::string s;
  for (std::size_t i = 0; i < r.models.size(); ++i) {
    if (i) s += '\n';
    s += write_tbl(r.models[i]);
  }
  if (!r.models.empty()) s += '\n';
  char wall[32];
  std::snprintf(wall, sizeof wall, "%.3f", r.stats.wall_seconds);
  s += "# models: " + std::to_string(r.models.size()) + "\n";
  s += "# models_found: " + std::to_string(r.stats.models) + "\n";
  s += "# nodes: " + std::to_string(r.stats.nodes) + "\n";
  s += "# order: " + std::to_string(spec.order) + "\n";
  s += "# propagations: " + std::to_string(r.stats.propagations) + "\n";
  s += "# rejected: " + std::to_string(r.stats.rejected) + "\n";
  s += "# status: " + std::string(status_name(r.status)) + "\n";
  s += "# wall_seconds: " + std::string(wall) + "\n";
  return s;
}

}  // namespace ccloop
