#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ccloop/elem_set.hpp"
#include "ccloop/errors.hpp"
#include "ccloop/perm.hpp"

namespace ccloop {

// A finite loop given by its Cayley table. Element 0 is the two-sided
// identity. Instances are only produced by validation and are immutable.
class LoopTable {
 public:
  // Validates a raw grid: it must be square, every entry must lie in
  // 0..n-1, every row and column must be a permutation, and 0 must be a
  // two-sided identity. Throws NotLatinSquare, NoIdentity, OutOfRange or
  // LoopError (shape).
  static LoopTable from_rows(const std::vector<std::vector<long long>>& grid);
  static LoopTable from_rows(const std::vector<std::vector<Elem>>& grid);

  int order() const { return n_; }

  Elem mul(Elem x, Elem y) const { return mul_[idx(x, y)]; }
  // x \ y: the unique z with x*z = y.
  Elem ldiv(Elem x, Elem y) const { return ldiv_[idx(x, y)]; }
  // x / y: the unique z with z*y = x.
  Elem rdiv(Elem x, Elem y) const { return rdiv_[idx(x, y)]; }

  std::span<const Elem> row(Elem x) const {
    return std::span<const Elem>(mul_).subspan(idx(x, 0), static_cast<std::size_t>(n_));
  }
  std::vector<std::vector<Elem>> rows() const;

  friend bool operator==(const LoopTable& a, const LoopTable& b) { return a.mul_ == b.mul_; }
  friend auto operator<=>(const LoopTable& a, const LoopTable& b) { return a.mul_ <=> b.mul_; }

 private:
  LoopTable(int n, std::vector<Elem> mul);
  std::size_t idx(Elem x, Elem y) const {
    return static_cast<std::size_t>(x) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(y);
  }

  int n_ = 0;
  std::vector<Elem> mul_, ldiv_, rdiv_;
};

// Relabels a quasigroup table that has some two-sided identity e so that e
// becomes 0 (e and 0 swap labels). Throws NoIdentity when there is none.
std::vector<std::vector<Elem>> normalize_identity(const std::vector<std::vector<Elem>>& grid);

// Applies a relabeling: result.mul(sigma(x), sigma(y)) == sigma(q.mul(x,y)).
// sigma must fix 0.
LoopTable relabel(const LoopTable& q, const Perm& sigma);

// ---- .tbl text format ----------------------------------------------------
//
//   # comment lines start with '#'
//   n
//   n lines of n whitespace-separated decimal integers
//
// Blank lines are ignored by the reader. The writer emits single spaces and a
// newline after every row, so write_tbl(parse_tbl(write_tbl(q))) is stable.

LoopTable parse_tbl(std::string_view text);
// Several tables, each a complete .tbl block; blank lines and comments
// between blocks are skipped.
std::vector<LoopTable> parse_tbl_stream(std::string_view text);
std::string write_tbl(const LoopTable& q);
LoopTable load_tbl(const std::string& path);
void save_tbl(const LoopTable& q, const std::string& path);

// ---- operational calculus ------------------------------------------------

struct Translations {
  Perm left;   // L_x : y -> x*y
  Perm right;  // R_x : y -> y*x
};
Translations translations(const LoopTable& q, Elem x);
Perm left_translation(const LoopTable& q, Elem x);
Perm right_translation(const LoopTable& q, Elem x);

struct InverseMaps {
  Perm lambda;  // y -> 1/y
  Perm rho;     // y -> y\1
};
InverseMaps inverse_maps(const LoopTable& q);
Elem rho(const LoopTable& q, Elem y);
Elem lambda(const LoopTable& q, Elem y);

// D_x : y -> y\x
Perm d_map(const LoopTable& q, Elem x);

// F_x : y -> (x*y)/x and G_x : y -> x\(y*x); f(x,y) = F_x(y), g(x,y) = G_x(y).
struct FgMaps {
  Perm f;
  Perm g;
};
FgMaps fg_maps(const LoopTable& q, Elem x);

// E_x = R_x R_{x^rho}: y -> (y*x)*x^rho.
Perm e_map(const LoopTable& q, Elem x);

// x^k in the cyclic group generated by x. Powers are built by right- and
// left-bracketed repeated multiplication; if the two bracketings ever
// disagree, throws NotPowerAssociative.
Elem power(const LoopTable& q, Elem x, long long k);

// Order of x in <x> (x must be power-associative, see power()).
int element_order(const LoopTable& q, Elem x);

}  // namespace ccloop
