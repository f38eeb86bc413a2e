#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "roadrules/agents/plan.hpp"
#include "roadrules/engine.hpp"
#include "roadrules/sim/world.hpp"

namespace roadrules::agents {

/// Raised when a corpus action atom has no registered interpretation:
/// corpus/interpreter drift must fail loudly, not silently permit.
class UnknownActionError : public std::logic_error {
 public:
  explicit UnknownActionError(const Atom& atom);

  const std::string& atom() const { return atom_; }

 private:
  std::string atom_;
};

/// Everything a constraint may consult when judging a command.
struct DecisionContext {
  const sim::Observation& obs;
  const sim::VehicleState& self;
  const Plan& plan;
};

/// Simulator-level meaning of one directive: required lamp post-states plus
/// an admissibility predicate over commands. Abstract directives
/// (consideration_others, ...) carry neither.
struct Constraint {
  ActionPair source;
  std::vector<sim::LampChange> lamps;
  std::function<bool(const sim::VehicleCommand&, const DecisionContext&)>
      admits;  // empty = admits everything
};

/// Maps directives to constraints. Throws UnknownActionError for an action
/// atom without a registered interpretation.
std::vector<Constraint> interpret_directives(
    const std::vector<ActionPair>& pairs, const DecisionContext& ctx);

/// admits() plus the lamp post-state check against the command.
bool satisfies(const Constraint& constraint, const sim::VehicleCommand& cmd,
               const DecisionContext& ctx);

/// Action atoms with a registered interpretation, sorted.
std::vector<Atom> registered_actions();

/// One-step admissibility of a move against the observed vehicles, assuming
/// each may advance anywhere between zero and its current speed. Used by
/// the command chooser and by safety-conditioned constraints.
bool move_safe_against_observed(const sim::World::MovePlan& move,
                                const DecisionContext& ctx);

}  // namespace roadrules::agents
