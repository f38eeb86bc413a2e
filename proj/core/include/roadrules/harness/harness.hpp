#pragma once

#include <string>
#include <vector>

#include "roadrules/agents/policy.hpp"
#include "roadrules/harness/trace.hpp"

namespace roadrules::harness {

/// Runs one scenario under one agent policy: steps the world until goal,
/// step limit, or collision fault. Each step an independent monitor
/// re-derives the directives from the reported situation and checks the
/// executed command against every one of them — it never consults the
/// agent's accepted subset.
ScenarioTrace run_test(agents::PolicyKind policy, std::string_view scenario,
                       unsigned seed, const RuleBase& rb);

struct ScenarioResult {
  std::string scenario;
  bool pass = false;
  std::vector<std::string> reasons;  // empty when passing
};

struct Verdict {
  std::vector<ScenarioResult> scenarios;
  bool pass = false;  // all scenarios passed
};

/// Driving-test verdict over one agent's traces. A scenario fails on any
/// violation of either severity or on a non-goal outcome. Requires the
/// traces to cover all shipped scenarios for a single agent; throws
/// std::invalid_argument otherwise.
Verdict judge(const std::vector<ScenarioTrace>& traces);

/// Fixed-width table plus one machine-readable summary line.
std::string format_verdict(const Verdict& verdict);

}  // namespace roadrules::harness
