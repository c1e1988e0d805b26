#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ccloop {

// Elements of a loop of order n are the integers 0..n-1; 0 is the identity.
using Elem = std::int32_t;

// A permutation of {0..n-1}.
//
// Permutations act on the right: for p * q, p is applied first and q second,
// so (p * q)(x) == q(p(x)). This is the operator notation used for
// translations throughout (R_x R_y means "R_x, then R_y").
class Perm {
 public:
  Perm() = default;

  // Throws LoopError if `images` is not a bijection on 0..size-1.
  explicit Perm(std::vector<Elem> images);

  static Perm identity(int n);

  int size() const { return static_cast<int>(images_.size()); }
  Elem operator()(Elem x) const { return images_[static_cast<std::size_t>(x)]; }
  std::span<const Elem> images() const { return images_; }

  // this first, then `next`.
  Perm then(const Perm& next) const;
  Perm inverse() const;
  // k may be negative.
  Perm pow(long long k) const;
  bool is_identity() const;
  // Smallest k > 0 with p^k = I.
  long long order() const;

  friend Perm operator*(const Perm& first, const Perm& second) { return first.then(second); }
  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm& a, const Perm& b) { return a.images_ <=> b.images_; }

  std::string to_string() const;

 private:
  struct Unchecked {};
  Perm(std::vector<Elem> images, Unchecked) : images_(std::move(images)) {}

  std::vector<Elem> images_;
};

}  // namespace ccloop
