#pragma once

#include <string>
#include <vector>

#include "roadrules/rules.hpp"

namespace roadrules {

/// Two rules of one context whose triggers are jointly satisfiable and whose
/// `must` actions contradict each other (not_ convention or a declared
/// exclusion pair). The witness situation makes both rules applicable.
struct Conflict {
  std::string rule_a;
  std::string rule_b;
  Atom atom_a;
  Atom atom_b;
  Situation witness;

  bool operator==(const Conflict&) const = default;
};

/// Rule pair with identical triggers and identical action sets.
struct DuplicatePair {
  std::string rule_a;
  std::string rule_b;

  bool operator==(const DuplicatePair&) const = default;
};

struct ConsistencyReport {
  std::vector<Conflict> conflicts;
  std::vector<DuplicatePair> duplicates;

  bool clean() const { return conflicts.empty(); }
};

/// Offline corpus check. The advice engine itself never judges conflicts;
/// this is the separate release gate. Atoms a and b contradict when
/// b == "not_" + a (or vice versa) or {a, b} is a declared exclusion.
/// Joint satisfiability uses the union of the two triggers as witness.
/// Symmetric in rule order; never reports a rule against itself.
ConsistencyReport check_consistency(const RuleBase& rb);

/// Human-readable report, one line per finding.
std::string format_report(const ConsistencyReport& report);

}  // namespace roadrules
