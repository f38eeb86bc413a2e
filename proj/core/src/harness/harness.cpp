#include "roadrules/harness/harness.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>

#include "roadrules/corpus.hpp"
#include "roadrules/sim/scenario.hpp"

namespace roadrules::harness {

namespace {

constexpr int kObservationRadius = 4;

std::vector<Violation> monitor_step(int step_no, const Situation& reported,
                                    const sim::VehicleCommand& executed,
                                    const RuleBase& rb,
                                    const agents::DecisionContext& ctx) {
  std::vector<Violation> violations;
  // The monitor re-derives everything from the reported situation; the
  // agent's own accepted subset plays no part in checking.
  std::vector<ActionPair> directives = recommended(reported, rb);
  for (const agents::Constraint& constraint :
       agents::interpret_directives(directives, ctx)) {
    if (agents::satisfies(constraint, executed, ctx)) continue;
    Violation v{step_no, constraint.source, {}, constraint.source.label};
    for (const Rule* rule : rules_recommending(reported, rb, constraint.source)) {
      v.rule_names.push_back(rule->name());
    }
    violations.push_back(std::move(v));
  }
  return violations;
}

}  // namespace

ScenarioTrace run_test(agents::PolicyKind policy, std::string_view scenario,
                       unsigned seed, const RuleBase& rb) {
  sim::Scenario sc = sim::load_scenario(scenario, seed);
  sim::World world = sc.world;
  agents::Plan plan = agents::make_plan(sc);
  const agents::PerceptionMap& pm = agents::default_perception();

  ScenarioTrace trace;
  trace.header.scenario = sc.name;
  trace.header.agent = std::string(to_string(policy));
  trace.header.seed = seed;
  trace.header.corpus_digest = corpus_digest(rb);
  trace.outcome = Outcome::step_limit;

  for (int step_no = 1; step_no <= sc.step_limit; ++step_no) {
    sim::Observation obs = world.observe(sc.subject_id, kObservationRadius);
    sim::VehicleState self = world.vehicle(sc.subject_id);

    Situation situation = agents::perceive(pm, obs, self, plan);
    agents::Decision decision =
        agents::decide(policy, situation, rb, obs, self, plan, pm);

    std::map<std::string, sim::VehicleCommand> commands =
        sim::traffic_commands(sc, world);
    commands.emplace(sc.subject_id, decision.command);
    world.step(commands);

    agents::DecisionContext ctx{obs, self, plan};
    std::vector<Violation> violations =
        monitor_step(step_no, situation, decision.command, rb, ctx);

    const sim::VehicleState& after = world.vehicle(sc.subject_id);
    trace.steps.push_back(StepRecord{step_no,
                                     std::move(situation),
                                     decision.record.unknown_atoms,
                                     decision.record.directives,
                                     decision.record.accepted,
                                     decision.command,
                                     after.position,
                                     after.speed,
                                     world.map().at(after.position).lane_index,
                                     after.heading,
                                     std::move(violations)});

    if (world.fault()) {
      trace.outcome = Outcome::collision_fault;
      break;
    }
    if (sim::goal_reached(sc, world)) {
      trace.outcome = Outcome::goal_reached;
      break;
    }
  }
  return trace;
}

Verdict judge(const std::vector<ScenarioTrace>& traces) {
  std::set<std::string> agents_seen;
  std::set<std::string> scenarios_seen;
  for (const ScenarioTrace& trace : traces) {
    agents_seen.insert(trace.header.agent);
    scenarios_seen.insert(trace.header.scenario);
  }
  if (agents_seen.size() != 1) {
    throw std::invalid_argument("judge needs traces from exactly one agent");
  }
  for (const std::string& name : sim::scenario_names()) {
    if (scenarios_seen.count(name) == 0) {
      throw std::invalid_argument("judge needs a trace for scenario '" + name +
                                  "'");
    }
  }

  Verdict verdict;
  verdict.pass = true;
  for (const ScenarioTrace& trace : traces) {
    ScenarioResult result;
    result.scenario = trace.header.scenario;
    result.pass = true;

    for (const StepRecord& rec : trace.steps) {
      for (const Violation& v : rec.violations) {
        result.pass = false;
        std::ostringstream reason;
        reason << "step " << v.step << ": violated " << to_string(v.pair)
               << " (";
        bool first = true;
        for (const std::string& rule : v.rule_names) {
          reason << (first ? "" : ", ") << rule;
          first = false;
        }
        reason << ")";
        result.reasons.push_back(reason.str());
      }
    }
    if (trace.outcome != Outcome::goal_reached) {
      result.pass = false;
      result.reasons.push_back(std::string("outcome ") +
                               std::string(to_string(trace.outcome)));
    }
    verdict.pass = verdict.pass && result.pass;
    verdict.scenarios.push_back(std::move(result));
  }
  return verdict;
}

std::string format_verdict(const Verdict& verdict) {
  std::ostringstream out;
  out << std::left << std::setw(16) << "scenario" << std::setw(8) << "result"
      << "reasons" << '\n';
  for (const ScenarioResult& result : verdict.scenarios) {
    out << std::left << std::setw(16) << result.scenario << std::setw(8)
        << (result.pass ? "pass" : "fail");
    if (result.reasons.empty()) {
      out << "-";
    } else {
      bool first = true;
      for (const std::string& reason : result.reasons) {
        out << (first ? "" : "; ") << reason;
        first = false;
      }
    }
    out << '\n';
  }
  out << std::left << std::setw(16) << "overall" << std::setw(8)
      << (verdict.pass ? "pass" : "fail") << '\n';

  out << "verdict overall=" << (verdict.pass ? "pass" : "fail");
  for (const ScenarioResult& result : verdict.scenarios) {
    out << ' ' << result.scenario << '=' << (result.pass ? "pass" : "fail");
  }
  out << '\n';
  return out.str();
}

}  // namespace roadrules::harness
