#include "roadrules/harness/trace.hpp"

#include <sstream>

namespace roadrules::harness {

namespace {

void put_atoms(std::ostream& out, const AtomSet& atoms) {
  bool first = true;
  for (const Atom& atom : atoms) {
    out << (first ? "" : ",") << atom.name();
    first = false;
  }
}

void put_atoms(std::ostream& out, const std::vector<Atom>& atoms) {
  bool first = true;
  for (const Atom& atom : atoms) {
    out << (first ? "" : ",") << atom.name();
    first = false;
  }
}

void put_pairs(std::ostream& out, const std::vector<ActionPair>& pairs) {
  bool first = true;
  for (const ActionPair& pair : pairs) {
    out << (first ? "" : ",") << to_string(pair);
    first = false;
  }
}

}  // namespace

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::goal_reached: return "goal_reached";
    case Outcome::step_limit: return "step_limit";
    case Outcome::collision_fault: return "collision_fault";
  }
  return "?";
}

std::string emit_trace(const ScenarioTrace& trace) {
  std::ostringstream out;
  out << "trace v" << trace.header.schema_version << '\n';
  out << "header scenario=" << trace.header.scenario
      << " agent=" << trace.header.agent << " seed=" << trace.header.seed
      << " corpus=" << trace.header.corpus_digest << '\n';

  for (const StepRecord& rec : trace.steps) {
    out << "step n=" << rec.step;
    out << " context=" << rec.situation.context().name();
    out << " beliefs=";
    put_atoms(out, rec.situation.beliefs());
    out << " intentions=";
    put_atoms(out, rec.situation.intentions());
    out << " unknown=";
    put_atoms(out, rec.unknown_atoms);
    out << " directives=";
    put_pairs(out, rec.directives);
    out << " accepted=";
    put_pairs(out, rec.accepted);
    out << " command=" << to_string(rec.command);
    out << " pos=" << rec.position.x << ':' << rec.position.y;
    out << " speed=" << rec.speed;
    out << " lane=" << rec.lane;
    out << " heading=" << to_string(rec.heading);
    out << " violations=";
    bool first = true;
    for (const Violation& v : rec.violations) {
      out << (first ? "" : ",") << to_string(v.pair) << '[';
      bool inner_first = true;
      for (const std::string& rule : v.rule_names) {
        out << (inner_first ? "" : "|") << rule;
        inner_first = false;
      }
      out << ']';
      first = false;
    }
    out << '\n';
  }

  out << "outcome " << to_string(trace.outcome)
      << " steps=" << trace.steps.size() << '\n';
  return out.str();
}

}  // namespace roadrules::harness
