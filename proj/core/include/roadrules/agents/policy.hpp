#pragma once

#include <optional>
#include <set>
#include <string_view>

#include "roadrules/agents/directives.hpp"
#include "roadrules/agents/perception.hpp"

namespace roadrules::agents {

/// Reactive obeys every directive; morally_bankrupt obeys only `must`;
/// proactive is reactive plus a one-step lookahead query on the predicted
/// next state.
enum class PolicyKind { reactive, morally_bankrupt, proactive };

std::string_view to_string(PolicyKind kind);
std::optional<PolicyKind> parse_policy(std::string_view text);

/// Labels a policy obeys. Never empty.
struct DirectiveFilter {
  std::set<Label> accepted;

  bool accepts(Label label) const { return accepted.count(label) != 0; }
};

DirectiveFilter filter_for(PolicyKind kind);

/// Evidence of one decision: what the vehicle reported, what came back,
/// what it chose to obey, and what it did.
struct DecisionRecord {
  Situation situation;
  std::vector<ActionPair> directives;  // full advice, unfiltered
  std::vector<Atom> unknown_atoms;
  std::vector<ActionPair> accepted;    // after the policy's filter
  sim::VehicleCommand command;
};

struct Decision {
  sim::VehicleCommand command;
  DecisionRecord record;
};

/// Queries the rules, filters by the policy, interprets the accepted
/// directives, and picks the admissible command that greedily minimises the
/// remaining distance to goal (ties: lane-keep over change, then smaller
/// speed change). The proactive policy additionally queries the predicted
/// next state and re-chooses if that adds constraints.
Decision decide(PolicyKind policy, const Situation& s, const RuleBase& rb,
                const sim::Observation& obs, const sim::VehicleState& self,
                const Plan& plan, const PerceptionMap& pm);

Decision decide(PolicyKind policy, const Situation& s, const RuleBase& rb,
                const sim::Observation& obs, const sim::VehicleState& self,
                const Plan& plan);

}  // namespace roadrules::agents
