#include "ccloop/perm.hpp"

#include <numeric>

#include "ccloop/errors.hpp"

namespace ccloop {

Perm::Perm(std::vector<Elem> images) : images_(std::move(images)) {
  const auto n = images_.size();
  std::vector<bool> seen(n, false);
  for (Elem v : images_) {
    if (v < 0 || static_cast<std::size_t>(v) >= n || seen[static_cast<std::size_t>(v)])
      throw LoopError("not a permutation: " + to_string());
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Perm Perm::identity(int n) {
  std::vector<Elem> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return Perm(std::move(v), Unchecked{});
}

Perm Perm::then(const Perm& next) const {
  ensure(size() == next.size(), "composing permutations of different degree");
  std::vector<Elem> v(images_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = next(images_[i]);
  return Perm(std::move(v), Unchecked{});
}

Perm Perm::inverse() const {
  std::vector<Elem> v(images_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[static_cast<std::size_t>(images_[i])] = static_cast<Elem>(i);
  return Perm(std::move(v), Unchecked{});
}

Perm Perm::pow(long long k) const {
  Perm base = k < 0 ? inverse() : *this;
  unsigned long long e = k < 0 ? static_cast<unsigned long long>(-k) : static_cast<unsigned long long>(k);
  Perm result = identity(size());
  while (e != 0) {
    if (e & 1ULL) result = result.then(base);
    base = base.then(base);
    e >>= 1;
  }
  return result;
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<Elem>(i)) return false;
  return true;
}

long long Perm::order() const {
  std::vector<bool> seen(images_.size(), false);
  long long result = 1;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    long long len = 0;
    for (auto j = i; !seen[j]; j = static_cast<std::size_t>(images_[j])) {
      seen[j] = true;
      ++len;
    }
    result = std::lcm(result, len);
  }
  return result;
}

std::string Perm::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i != 0) s += ' ';
    s += std::to_string(images_[i]);
  }
  return s + "]";
}

}  // namespace ccloop
