#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "ccloop/perm.hpp"

namespace ccloop {

// Subset of the carrier {0..n-1}, stored as a packed bit vector.
class ElemSet {
 public:
  ElemSet() = default;
  explicit ElemSet(int n) : n_(n), words_(static_cast<std::size_t>((n + 63) / 64), 0) {}
  ElemSet(int n, std::initializer_list<Elem> members) : ElemSet(n) {
    for (Elem e : members) insert(e);
  }
  static ElemSet of(int n, const std::vector<Elem>& members) {
    ElemSet s(n);
    for (Elem e : members) s.insert(e);
    return s;
  }
  static ElemSet full(int n) {
    ElemSet s(n);
    for (Elem e = 0; e < n; ++e) s.insert(e);
    return s;
  }

  int universe() const { return n_; }
  bool contains(Elem e) const { return (words_[word(e)] >> bit(e)) & 1ULL; }
  void insert(Elem e) { words_[word(e)] |= 1ULL << bit(e); }
  void erase(Elem e) { words_[word(e)] &= ~(1ULL << bit(e)); }

  int size() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  bool empty() const { return size() == 0; }
  bool is_full() const { return size() == n_; }

  bool is_subset_of(const ElemSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }

  ElemSet operator&(const ElemSet& o) const {
    ElemSet r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
    return r;
  }
  ElemSet operator|(const ElemSet& o) const {
    ElemSet r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] |= o.words_[i];
    return r;
  }

  // Members in ascending order.
  std::vector<Elem> members() const {
    std::vector<Elem> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      auto bits = words_[w];
      while (bits) {
        out.push_back(static_cast<Elem>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits))));
        bits &= bits - 1;
      }
    }
    return out;
  }
  Elem min() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w]) return static_cast<Elem>(w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w])));
    return -1;
  }

  // "{0,1,2}"
  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (Elem e : members()) {
      if (!first) s += ',';
      s += std::to_string(e);
      first = false;
    }
    return s + "}";
  }

  friend bool operator==(const ElemSet&, const ElemSet&) = default;
  friend auto operator<=>(const ElemSet& a, const ElemSet& b) {
    return a.members() <=> b.members();
  }

  std::size_t hash() const {
    std::size_t h = static_cast<std::size_t>(n_);
    for (auto w : words_) h = h * 0x9E3779B97F4A7C15ULL ^ std::hash<std::uint64_t>{}(w);
    return h;
  }

 private:
  static std::size_t word(Elem e) { return static_cast<std::size_t>(e) / 64; }
  static unsigned bit(Elem e) { return static_cast<unsigned>(e) % 64; }

  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElemSetHash {
  std::size_t operator()(const ElemSet& s) const { return s.hash(); }
};

}  // namespace ccloop
