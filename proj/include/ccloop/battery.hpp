#pragma once

#include <string>
#include <vector>

#include "ccloop/loop_table.hpp"

namespace ccloop {

struct Fixture {
  std::string name;
  LoopTable table;
};

enum class Outcome { Pass, Fail, Skipped };

struct LemmaCheck {
  std::string lemma;
  std::string fixture;
  Outcome outcome = Outcome::Pass;
  std::string detail;  // witness on failure, reason when skipped
};

struct BatteryReport {
  std::vector<LemmaCheck> checks;

  bool ok() const;
  int count(Outcome o) const;
  void append(const BatteryReport& other);
};

// T16, T27, the octonion loop, small groups and a non-CC loop.
std::vector<Fixture> standard_fixtures();

// Every per-loop invariant, each gated on its hypotheses (CC, power
// associativity, WIP, prime-power order, ...). Checks whose hypotheses fail
// are reported as Skipped.
BatteryReport run_loop_battery(const Fixture& f);

// Claims tied to the two shipped tables (element orders, nuclei, subloops,
// sharpness witnesses).
BatteryReport run_fixture_claims();

// Semidirect products, holomorphs and internal decompositions.
BatteryReport run_construct_battery();

// Search soundness, tiny-order completeness and determinism.
BatteryReport run_search_battery();

// Everything above over standard_fixtures().
BatteryReport run_full_battery();

// One line per check: "<outcome> <lemma> [<fixture>] <detail>", plus totals.
std::string format_report(const BatteryReport& r);

}  // namespace ccloop
