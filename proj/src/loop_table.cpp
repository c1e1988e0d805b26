#include "ccloop/loop_table.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace ccloop {

namespace {

template <typename Int>
LoopTable validate(const std::vector<std::vector<Int>>& grid, auto make) {
  const auto n = grid.size();
  if (n == 0) throw LoopError("empty table");
  for (std::size_t i = 0; i < n; ++i)
    if (grid[i].size() != n)
      throw LoopError("row " + std::to_string(i) + " has " + std::to_string(grid[i].size()) +
                      " entries, expected " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto v = static_cast<long long>(grid[i][j]);
      if (v < 0 || v >= static_cast<long long>(n))
        throw OutOfRange(static_cast<int>(i), static_cast<int>(j), v);
    }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> row_seen(n, false), col_seen(n, false);
    for (std::size_t j = 0; j < n; ++j) {
      const auto r = static_cast<std::size_t>(grid[i][j]);
      if (row_seen[r]) throw NotLatinSquare(true, static_cast<int>(i), static_cast<long long>(r));
      row_seen[r] = true;
      const auto c = static_cast<std::size_t>(grid[j][i]);
      if (col_seen[c]) throw NotLatinSquare(false, static_cast<int>(i), static_cast<long long>(c));
      col_seen[c] = true;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (static_cast<std::size_t>(grid[0][i]) != i || static_cast<std::size_t>(grid[i][0]) != i)
      throw NoIdentity(static_cast<int>(i));
  std::vector<Elem> flat;
  flat.reserve(n * n);
  for (const auto& row : grid)
    for (auto v : row) flat.push_back(static_cast<Elem>(v));
  return make(static_cast<int>(n), std::move(flat));
}

}  // namespace

LoopTable::LoopTable(int n, std::vector<Elem> mul)
    : n_(n), mul_(std::move(mul)), ldiv_(mul_.size()), rdiv_(mul_.size()) {
  for (Elem x = 0; x < n_; ++x)
    for (Elem y = 0; y < n_; ++y) {
      const Elem p = mul_[idx(x, y)];
      ldiv_[idx(x, p)] = y;
      rdiv_[idx(p, y)] = x;
    }
}

LoopTable LoopTable::from_rows(const std::vector<std::vector<long long>>& grid) {
  return validate(grid, [](int n, std::vector<Elem> flat) { return LoopTable(n, std::move(flat)); });
}

LoopTable LoopTable::from_rows(const std::vector<std::vector<Elem>>& grid) {
  return validate(grid, [](int n, std::vector<Elem> flat) { return LoopTable(n, std::move(flat)); });
}

std::vector<std::vector<Elem>> LoopTable::rows() const {
  std::vector<std::vector<Elem>> out(static_cast<std::size_t>(n_));
  for (Elem x = 0; x < n_; ++x) {
    auto r = row(x);
    out[static_cast<std::size_t>(x)].assign(r.begin(), r.end());
  }
  return out;
}

std::vector<std::vector<Elem>> normalize_identity(const std::vector<std::vector<Elem>>& grid) {
  const auto n = static_cast<Elem>(grid.size());
  Elem e = -1;
  for (Elem c = 0; c < n && e < 0; ++c) {
    bool ok = true;
    for (Elem y = 0; y < n && ok; ++y)
      ok = grid[static_cast<std::size_t>(c)][static_cast<std::size_t>(y)] == y &&
           grid[static_cast<std::size_t>(y)][static_cast<std::size_t>(c)] == y;
    if (ok) e = c;
  }
  if (e < 0) throw NoIdentity(-1);
  auto swap_label = [e](Elem v) { return v == e ? 0 : (v == 0 ? e : v); };
  std::vector<std::vector<Elem>> out(grid.size(), std::vector<Elem>(grid.size()));
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      out[static_cast<std::size_t>(swap_label(x))][static_cast<std::size_t>(swap_label(y))] =
          swap_label(grid[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]);
  return out;
}

LoopTable relabel(const LoopTable& q, const Perm& sigma) {
  ensure(sigma.size() == q.order() && sigma(0) == 0, "relabeling must fix the identity");
  const auto n = static_cast<std::size_t>(q.order());
  std::vector<std::vector<Elem>> g(n, std::vector<Elem>(n));
  for (Elem x = 0; x < q.order(); ++x)
    for (Elem y = 0; y < q.order(); ++y)
      g[static_cast<std::size_t>(sigma(x))][static_cast<std::size_t>(sigma(y))] = sigma(q.mul(x, y));
  return LoopTable::from_rows(g);
}

// ---- .tbl ------------------------------------------------------------------

namespace {

class TblReader {
 public:
  explicit TblReader(std::string_view text) : text_(text) {}

  // Returns false at end of input (only comments and blanks left).
  bool at_end() {
    skip_ignorable_lines();
    return pos_ >= text_.size();
  }

  LoopTable read_one() {
    skip_ignorable_lines();
    const auto header = next_line_numbers();
    if (header.values.size() != 1)
      throw ParseError(header.line, 1, "expected the order n alone on the header line");
    const long long n = header.values[0];
    if (n <= 0) throw ParseError(header.line, header.columns[0], "order must be positive");
    std::vector<std::vector<long long>> grid;
    for (long long i = 0; i < n; ++i) {
      skip_ignorable_lines();
      if (pos_ >= text_.size())
        throw ParseError(line_, 1, "unexpected end of input: expected " + std::to_string(n) +
                                       " rows, got " + std::to_string(i));
      auto row = next_line_numbers();
      if (static_cast<long long>(row.values.size()) != n)
        throw ParseError(row.line, row.values.size() < static_cast<std::size_t>(n)
                                       ? row.end_column
                                       : row.columns[static_cast<std::size_t>(n)],
                         "expected " + std::to_string(n) + " entries, got " +
                             std::to_string(row.values.size()));
      grid.push_back(std::move(row.values));
    }
    try {
      return LoopTable::from_rows(grid);
    } catch (const LoopError& e) {
      throw ParseError(header.line, 1, std::string("invalid loop table: ") + e.what());
    }
  }

 private:
  struct Line {
    std::vector<long long> values;
    std::vector<std::size_t> columns;
    std::size_t line = 0;
    std::size_t end_column = 1;
  };

  void skip_ignorable_lines() {
    while (pos_ < text_.size()) {
      auto end = text_.find('\n', pos_);
      if (end == std::string_view::npos) end = text_.size();
      auto content = text_.substr(pos_, end - pos_);
      auto first = content.find_first_not_of(" \t\r");
      if (first != std::string_view::npos && content[first] != '#') return;
      pos_ = end == text_.size() ? end : end + 1;
      ++line_;
    }
  }

  Line next_line_numbers() {
    auto end = text_.find('\n', pos_);
    if (end == std::string_view::npos) end = text_.size();
    auto content = text_.substr(pos_, end - pos_);
    Line out;
    out.line = line_;
    std::size_t i = 0;
    while (i < content.size()) {
      const char c = content[i];
      if (c == ' ' || c == '\t' || c == '\r') {
        ++i;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw ParseError(line_, i + 1, std::string("unexpected character '") + c + "'");
      const auto start = i;
      long long v = 0;
      while (i < content.size() && std::isdigit(static_cast<unsigned char>(content[i]))) {
        v = v * 10 + (content[i] - '0');
        if (v > 1'000'000'000LL) throw ParseError(line_, start + 1, "number too large");
        ++i;
      }
      out.values.push_back(v);
      out.columns.push_back(start + 1);
    }
    out.end_column = content.size() + 1;
    pos_ = end == text_.size() ? end : end + 1;
    ++line_;
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

}  // namespace

LoopTable parse_tbl(std::string_view text) {
  TblReader reader(text);
  if (reader.at_end()) throw ParseError(1, 1, "empty input: expected the order n");
  auto q = reader.read_one();
  if (!reader.at_end()) throw ParseError(static_cast<std::size_t>(q.order()) + 2, 1, "trailing content after table");
  return q;
}

std::vector<LoopTable> parse_tbl_stream(std::string_view text) {
  TblReader reader(text);
  std::vector<LoopTable> out;
  while (!reader.at_end()) out.push_back(reader.read_one());
  return out;
}

std::string write_tbl(const LoopTable& q) {
  std::string s = std::to_string(q.order()) + "\n";
  for (Elem x = 0; x < q.order(); ++x) {
    auto r = q.row(x);
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (j != 0) s += ' ';
      s += std::to_string(r[j]);
    }
    s += '\n';
  }
  return s;
}

LoopTable load_tbl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoopError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_tbl(buf.str());
}

void save_tbl(const LoopTable& q, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LoopError("cannot write " + path);
  out << write_tbl(q);
}

// ---- calculus ----------------------------------------------------------------

Perm left_translation(const LoopTable& q, Elem x) {
  auto r = q.row(x);
  return Perm(std::vector<Elem>(r.begin(), r.end()));
}

Perm right_translation(const LoopTable& q, Elem x) {
  std::vector<Elem> v(static_cast<std::size_t>(q.order()));
  for (Elem y = 0; y < q.order(); ++y) v[static_cast<std::size_t>(y)] = q.mul(y, x);
  return Perm(std::move(v));
}

Translations translations(const LoopTable& q, Elem x) {
  return {left_translation(q, x), right_translation(q, x)};
}

Elem rho(const LoopTable& q, Elem y) { return q.ldiv(y, 0); }
Elem lambda(const LoopTable& q, Elem y) { return q.rdiv(0, y); }

InverseMaps inverse_maps(const LoopTable& q) {
  const auto n = static_cast<std::size_t>(q.order());
  std::vector<Elem> l(n), r(n);
  for (Elem y = 0; y < q.order(); ++y) {
    l[static_cast<std::size_t>(y)] = lambda(q, y);
    r[static_cast<std::size_t>(y)] = rho(q, y);
  }
  return {Perm(std::move(l)), Perm(std::move(r))};
}

Perm d_map(const LoopTable& q, Elem x) {
  std::vector<Elem> v(static_cast<std::size_t>(q.order()));
  for (Elem y = 0; y < q.order(); ++y) v[static_cast<std::size_t>(y)] = q.ldiv(y, x);
  return Perm(std::move(v));
}

FgMaps fg_maps(const LoopTable& q, Elem x) {
  const auto n = static_cast<std::size_t>(q.order());
  std::vector<Elem> f(n), g(n);
  for (Elem y = 0; y < q.order(); ++y) {
    f[static_cast<std::size_t>(y)] = q.rdiv(q.mul(x, y), x);
    g[static_cast<std::size_t>(y)] = q.ldiv(x, q.mul(y, x));
  }
  return {Perm(std::move(f)), Perm(std::move(g))};
}

Perm e_map(const LoopTable& q, Elem x) {
  return right_translation(q, x) * right_translation(q, rho(q, x));
}

namespace {

// Right-bracketed powers x, x*x, (x*x)*x, ... until the identity recurs,
// cross-checked against left-bracketed x*(x*x) ...; powers[k] = x^k.
std::vector<Elem> cyclic_powers(const LoopTable& q, Elem x) {
  std::vector<Elem> powers{0};
  Elem right = 0, left = 0;
  do {
    right = q.mul(right, x);
    left = q.mul(x, left);
    if (right != left) throw NotPowerAssociative(x);
    powers.push_back(right);
  } while (right != 0);
  powers.pop_back();
  return powers;
}

}  // namespace

Elem power(const LoopTable& q, Elem x, long long k) {
  const auto powers = cyclic_powers(q, x);
  const auto m = static_cast<long long>(powers.size());
  const auto r = ((k % m) + m) % m;
  return powers[static_cast<std::size_t>(r)];
}

int element_order(const LoopTable& q, Elem x) {
  return static_cast<int>(cyclic_powers(q, x).size());
}

}  // namespace ccloop
