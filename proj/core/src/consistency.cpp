#include "roadrules/consistency.hpp"

#include <sstream>

namespace roadrules {

namespace {

bool negation_pair(const Atom& a, const Atom& b, const RuleBase& rb) {
  const std::string& an = a.name();
  const std::string& bn = b.name();
  if (bn == "not_" + an || an == "not_" + bn) return true;
  auto pair = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  return rb.exclusions().count(pair) != 0;
}

Situation joint_witness(const Rule& a, const Rule& b) {
  AtomSet beliefs = a.beliefs();
  beliefs.insert(b.beliefs().begin(), b.beliefs().end());
  AtomSet intentions = a.intentions();
  intentions.insert(b.intentions().begin(), b.intentions().end());
  return Situation(a.context(), std::move(beliefs), std::move(intentions));
}

}  // namespace

ConsistencyReport check_consistency(const RuleBase& rb) {
  ConsistencyReport report;
  const auto& rules = rb.rules();

  for (std::size_t i = 0; i < rules.size(); ++i) {
    for (std::size_t j = i + 1; j < rules.size(); ++j) {
      const Rule& a = rules[i];
      const Rule& b = rules[j];
      if (a.context() != b.context()) continue;

      if (a.trigger() == b.trigger() && a.action_pairs() == b.action_pairs()) {
        report.duplicates.push_back(DuplicatePair{a.name(), b.name()});
      }

      // Belief and intention atoms are unconstrained by any world model, so
      // two triggers of one context are always jointly satisfiable and their
      // union is the witness.
      for (const ActionPair& pa : a.action_pairs()) {
        if (pa.label != Label::must) continue;
        for (const ActionPair& pb : b.action_pairs()) {
          if (pb.label != Label::must) continue;
          if (negation_pair(pa.action, pb.action, rb)) {
            report.conflicts.push_back(Conflict{a.name(), b.name(), pa.action,
                                                pb.action,
                                                joint_witness(a, b)});
          }
        }
      }
    }
  }
  return report;
}

std::string format_report(const ConsistencyReport& report) {
  std::ostringstream out;
  for (const Conflict& c : report.conflicts) {
    out << "conflict " << c.rule_a << " (" << "must-" << c.atom_a.name()
        << ") vs " << c.rule_b << " (must-" << c.atom_b.name()
        << ") witness context=" << c.witness.context().name() << " beliefs=";
    bool first = true;
    for (const Atom& atom : c.witness.beliefs()) {
      out << (first ? "" : ",") << atom.name();
      first = false;
    }
    out << " intentions=";
    first = true;
    for (const Atom& atom : c.witness.intentions()) {
      out << (first ? "" : ",") << atom.name();
      first = false;
    }
    out << '\n';
  }
  for (const DuplicatePair& d : report.duplicates) {
    out << "duplicate " << d.rule_a << " == " << d.rule_b << '\n';
  }
  if (report.conflicts.empty() && report.duplicates.empty()) {
    out << "no findings\n";
  }
  return out.str();
}

}  // namespace roadrules
