#pragma once

#include <string>
#include <vector>

#include "roadrules/engine.hpp"
#include "roadrules/sim/world.hpp"

namespace roadrules::harness {

/// A directive the executed command did not satisfy, with the rules that
/// produced it. Severity is the directive's own label.
struct Violation {
  int step = 0;
  ActionPair pair;
  std::vector<std::string> rule_names;
  Label severity = Label::must;

  bool operator==(const Violation&) const = default;
};

/// Everything a certifier needs about one step: what the vehicle reported,
/// what the rules returned, what it obeyed, what it did, and what the
/// monitor flagged.
struct StepRecord {
  int step = 0;
  Situation situation;
  std::vector<Atom> unknown_atoms;
  std::vector<ActionPair> directives;
  std::vector<ActionPair> accepted;
  sim::VehicleCommand command;
  sim::Position position;  // after the step
  int speed = 0;
  int lane = 0;
  sim::Heading heading = sim::Heading::east;
  std::vector<Violation> violations;
};

enum class Outcome { goal_reached, step_limit, collision_fault };

std::string_view to_string(Outcome outcome);

struct TraceHeader {
  int schema_version = 1;
  std::string scenario;
  std::string agent;
  unsigned seed = 0;
  std::string corpus_digest;
};

struct ScenarioTrace {
  TraceHeader header;
  std::vector<StepRecord> steps;
  Outcome outcome = Outcome::step_limit;
};

/// Line-delimited key-value records, one per step, bit-exact for identical
/// inputs. The first line carries the schema version, the second the run
/// header, then one `step` line per record and a final `outcome` line.
std::string emit_trace(const ScenarioTrace& trace);

}  // namespace roadrules::harness
