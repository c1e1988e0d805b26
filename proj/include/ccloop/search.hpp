#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ccloop/identities.hpp"
#include "ccloop/loop_table.hpp"

namespace ccloop {

inline constexpr int kSearchOrderBound = 32;
inline constexpr int kSearchHardLimit = 64;

struct SearchSpec {
  int order = 1;
  std::vector<Property> require;
  std::vector<Property> forbid;
  std::vector<Identity> identities;
  std::vector<std::string> identity_sources;  // as written, for reports
  std::optional<int> exponent;                // every x has x^k = 1
  std::size_t limit = 1;                      // 0 means no limit
  bool iso_reduce = false;
  std::uint64_t seed = 0;                     // 0 keeps ascending value order
  bool lex_min_row = true;                    // canonical first free row
  double timeout_seconds = 0;                 // 0 means no timeout
  int order_bound = kSearchOrderBound;        // guard for constrained searches
};

// Adds one vocabulary token to the spec: a property name ("cc", "pa", ...),
// "nonassociative" (forbids "group"), or "exponent-k". Throws LoopError on an
// unknown token.
void add_requirement(SearchSpec& spec, std::string_view token);
void add_forbidden(SearchSpec& spec, std::string_view token);

// key = value lines: order, require, forbid, identity (repeatable), limit,
// iso_reduce, seed, symmetry (lexrow|none), timeout. '#' starts a comment.
SearchSpec parse_search_spec(std::string_view text);
std::string write_search_spec(const SearchSpec& spec);

enum class SearchStatus { Exhausted, LimitReached, Unsatisfiable, TimedOut };
std::string_view status_name(SearchStatus s);

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t propagations = 0;
  std::uint64_t models = 0;
  std::uint64_t rejected = 0;  // complete tables failing a final check
  double wall_seconds = 0;
};

struct SearchResult {
  std::vector<LoopTable> models;
  SearchStats stats;
  SearchStatus status = SearchStatus::Unsatisfiable;
};

// Constraint flags the propagator understands natively; everything else is
// handled through ground identity instances and the final check.
struct Constraints {
  bool rcc = false;
  bool lcc = false;
  bool pa = false;
  std::vector<Identity> identities;
};
Constraints constraints_for(const SearchSpec& spec);

struct Cell {
  Elem row = 0;
  Elem col = 0;
  bool operator==(const Cell&) const = default;
};

// Latin square under construction with the identity row and column fixed.
// Domains are bitmasks over 0..n-1.
class PartialTable {
 public:
  explicit PartialTable(int n);

  int order() const { return n_; }
  Elem value(Elem x, Elem y) const { return val_[idx(x, y)]; }
  std::uint64_t domain(Elem x, Elem y) const { return dom_[idx(x, y)]; }
  // Column holding v in row x, or -1.
  Elem row_pos(Elem x, Elem v) const { return row_pos_[idx(x, v)]; }
  // Row holding v in column y, or -1.
  Elem col_pos(Elem y, Elem v) const { return col_pos_[idx(y, v)]; }
  int open_cells() const { return open_; }
  bool complete() const { return open_ == 0; }
  const std::optional<Cell>& conflict() const { return conflict_; }
  // Total number of assignments made so far.
  std::uint64_t assignments() const { return assigned_; }

  // Records x*y = v and queues it for propagation. Returns false and records
  // a conflict if v is not available for that cell.
  bool assign(Elem x, Elem y, Elem v);
  // Drops v from an open cell's domain (with naked and hidden singles).
  bool remove(Elem x, Elem y, Elem v);

  LoopTable to_table() const;

 private:
  friend class Propagator;
  struct Pending {
    Elem x, y, v;
    std::uint64_t old_domain;
  };

  std::size_t idx(Elem a, Elem b) const {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(b);
  }
  bool fail(Elem x, Elem y);
  bool hidden_in_row(Elem x, Elem v);
  bool hidden_in_col(Elem y, Elem v);

  int n_;
  int open_;
  std::vector<Elem> val_;
  std::vector<std::uint64_t> dom_;
  std::vector<Elem> row_pos_, col_pos_;
  std::vector<Pending> queue_;
  std::optional<Cell> conflict_;
  std::uint64_t assigned_ = 0;
};

// Runs all queued assignments to a fixpoint: row/column all-different,
// incremental RCC/LCC instances, the implied power-associativity constraints
// and ground instances of the listed identities. Returns the conflicting cell
// if the partial table cannot be completed consistently.
std::optional<Cell> propagate(PartialTable& t, const Constraints& c, SearchStats* stats = nullptr);

// Canonical first rows for the lexicographic-minimal symmetry breaking: one
// fixed-point-free permutation per cycle type, with the cycle of 0 (through
// 1, 2, ...) first and the remaining cycles in ascending length.
std::vector<std::vector<Elem>> canonical_first_rows(int n);

// Depth-first Latin square completion. `on_model` (optional) sees each model
// as it is found, before reduction.
SearchResult find_models(const SearchSpec& spec,
                         const std::function<void(const LoopTable&)>& on_model = {});

// Full final check of a complete table against the spec.
bool satisfies(const LoopTable& q, const SearchSpec& spec);

// One representative per isomorphism class (the lexicographically least
// member seen), in order of first appearance.
std::vector<LoopTable> iso_reduce(const std::vector<LoopTable>& models);

// .tbl blocks separated by blank lines, then a '#'-commented summary.
std::string write_search_stream(const SearchResult& r, const SearchSpec& spec);

}  // namespace ccloop
