#include "roadrules/agents/policy.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <tuple>

namespace roadrules::agents {

namespace {

using sim::Lateral;
using sim::Longitudinal;
using sim::VehicleCommand;
using MovePlan = sim::World::MovePlan;

struct Candidate {
  VehicleCommand cmd;
  MovePlan mp;
  int index = 0;
};

std::vector<Candidate> safe_candidates(const DecisionContext& ctx) {
  static constexpr std::array<Lateral, 5> kLaterals = {
      Lateral::keep, Lateral::change_left, Lateral::change_right,
      Lateral::turn_left, Lateral::turn_right};
  static constexpr std::array<Longitudinal, 4> kLongitudinals = {
      Longitudinal::accelerate, Longitudinal::hold, Longitudinal::decelerate,
      Longitudinal::stop};

  std::vector<Candidate> out;
  int index = 0;
  for (Lateral lat : kLaterals) {
    for (Longitudinal lon : kLongitudinals) {
      VehicleCommand cmd{lon, lat, {}};
      MovePlan mp = sim::World::plan_move(ctx.plan.map(), ctx.self, cmd);
      ++index;
      if (lat != Lateral::keep && !mp.lateral_applied) continue;
      if (!move_safe_against_observed(mp, ctx)) continue;
      out.push_back(Candidate{std::move(cmd), std::move(mp), index});
    }
  }
  return out;
}

/// Greedy key: remaining distance, lane-keep before lateral moves, smaller
/// speed change, then enumeration order.
std::tuple<int, int, int, int> score(const Candidate& c,
                                     const DecisionContext& ctx) {
  int dist = ctx.plan.distance_to_goal(c.mp.final);
  int lat_rank = c.cmd.lateral == Lateral::keep ? 0 : 1;
  int speed_delta = std::abs(c.mp.speed - ctx.self.speed);
  return {dist, lat_rank, speed_delta, c.index};
}

std::vector<sim::LampChange> lamp_changes_for(
    const std::vector<Constraint>& constraints, const sim::Lamps& current) {
  // `must` requirements override `should`; within one strength the first
  // constraint in directive order wins.
  std::map<sim::LampKind, std::pair<bool, Label>> required;
  for (const Constraint& c : constraints) {
    for (const sim::LampChange& change : c.lamps) {
      auto it = required.find(change.lamp);
      if (it == required.end()) {
        required.emplace(change.lamp, std::make_pair(change.on, c.source.label));
      } else if (it->second.second == Label::should &&
                 c.source.label == Label::must) {
        it->second = {change.on, Label::must};
      }
    }
  }

  auto current_value = [&current](sim::LampKind lamp) {
    switch (lamp) {
      case sim::LampKind::headlights: return current.headlights;
      case sim::LampKind::fog_lights: return current.fog_lights;
      case sim::LampKind::indicator_left: return current.indicator_left;
      case sim::LampKind::indicator_right: return current.indicator_right;
    }
    return false;
  };

  std::vector<sim::LampChange> changes;
  for (sim::LampKind lamp :
       {sim::LampKind::headlights, sim::LampKind::fog_lights,
        sim::LampKind::indicator_left, sim::LampKind::indicator_right}) {
    std::optional<bool> target;
    auto it = required.find(lamp);
    if (it != required.end()) {
      target = it->second.first;
    } else if ((lamp == sim::LampKind::indicator_left ||
                lamp == sim::LampKind::indicator_right) &&
               current_value(lamp)) {
      target = false;  // indicators self-cancel once nothing requires them
    }
    if (target && *target != current_value(lamp)) {
      changes.push_back(sim::LampChange{lamp, *target});
    }
  }
  return changes;
}

VehicleCommand choose_command(const std::vector<Constraint>& constraints,
                              const DecisionContext& ctx) {
  std::vector<Candidate> candidates = safe_candidates(ctx);

  const Candidate* best = nullptr;
  auto better = [&](const Candidate& a, const Candidate* b) {
    return b == nullptr || score(a, ctx) < score(*b, ctx);
  };
  for (const Candidate& c : candidates) {
    bool admitted = std::all_of(
        constraints.begin(), constraints.end(), [&](const Constraint& k) {
          return !k.admits || k.admits(c.cmd, ctx);
        });
    if (admitted && better(c, best)) best = &c;
  }
  if (best == nullptr) {
    // Constraints ruled out every safe command; fall back to the safest
    // greedy move and let the monitor record what was violated.
    for (const Candidate& c : candidates) {
      if (better(c, best)) best = &c;
    }
  }

  VehicleCommand cmd =
      best ? best->cmd
           : VehicleCommand{Longitudinal::stop, Lateral::keep, {}};
  cmd.lamp_changes = lamp_changes_for(constraints, ctx.self.lamps);
  return cmd;
}

std::vector<ActionPair> filter_pairs(const std::vector<ActionPair>& pairs,
                                     const DirectiveFilter& filter) {
  std::vector<ActionPair> out;
  for (const ActionPair& pair : pairs) {
    if (filter.accepts(pair.label)) out.push_back(pair);
  }
  return out;
}

/// The world one step ahead as far as this vehicle can tell: itself moved
/// by `cmd`, every visible vehicle advanced at its current speed, light
/// phases unchanged, knowledge still limited to what is currently observed.
std::pair<sim::Observation, sim::VehicleState> predict_next(
    const DecisionContext& ctx, const VehicleCommand& cmd) {
  const sim::GridMap& map = ctx.plan.map();

  MovePlan mp = sim::World::plan_move(map, ctx.self, cmd);
  sim::VehicleState self = ctx.self;
  self.position = mp.final;
  self.heading = mp.heading;
  self.speed = mp.speed;
  self.lamps = sim::World::apply_lamp_changes(self.lamps, cmd.lamp_changes);

  sim::Observation obs;
  obs.step = ctx.obs.step + 1;
  obs.radius = ctx.obs.radius;
  obs.center = self.position;
  for (const sim::ObservedCell& cell : ctx.obs.cells) {
    if (map.chebyshev(cell.position, self.position) <= obs.radius) {
      obs.cells.push_back(cell);
    }
  }
  for (const sim::VehicleState& v : ctx.obs.vehicles) {
    if (v.id == ctx.self.id) continue;
    sim::VehicleState moved = v;
    moved.position = map.step_from(v.position, v.heading, v.speed);
    if (map.chebyshev(moved.position, self.position) <= obs.radius) {
      obs.vehicles.push_back(std::move(moved));
    }
  }
  obs.vehicles.push_back(self);
  std::sort(obs.vehicles.begin(), obs.vehicles.end(),
            [](const sim::VehicleState& a, const sim::VehicleState& b) {
              return a.id < b.id;
            });
  for (const sim::ObservedLight& light : ctx.obs.lights) {
    if (map.chebyshev(light.position, self.position) <= obs.radius) {
      obs.lights.push_back(light);
    }
  }
  return {std::move(obs), std::move(self)};
}

}  // namespace

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::reactive: return "reactive";
    case PolicyKind::morally_bankrupt: return "morally_bankrupt";
    case PolicyKind::proactive: return "proactive";
  }
  return "?";
}

std::optional<PolicyKind> parse_policy(std::string_view text) {
  if (text == "reactive") return PolicyKind::reactive;
  if (text == "morally_bankrupt") return PolicyKind::morally_bankrupt;
  if (text == "proactive") return PolicyKind::proactive;
  return std::nullopt;
}

DirectiveFilter filter_for(PolicyKind kind) {
  if (kind == PolicyKind::morally_bankrupt) return {{Label::must}};
  return {{Label::must, Label::should}};
}

Decision decide(PolicyKind policy, const Situation& s, const RuleBase& rb,
                const sim::Observation& obs, const sim::VehicleState& self,
                const Plan& plan, const PerceptionMap& pm) {
  DecisionContext ctx{obs, self, plan};
  Advice advice = advise(s, rb);
  DirectiveFilter filter = filter_for(policy);
  std::vector<ActionPair> accepted = filter_pairs(advice.directives, filter);
  std::vector<Constraint> constraints = interpret_directives(accepted, ctx);
  VehicleCommand cmd = choose_command(constraints, ctx);

  if (policy == PolicyKind::proactive) {
    auto [next_obs, next_self] = predict_next(ctx, cmd);
    Situation predicted = perceive(pm, next_obs, next_self, plan);
    std::vector<ActionPair> next_accepted =
        filter_pairs(recommended(predicted, rb), filter);
    std::vector<ActionPair> extra;
    for (const ActionPair& pair : next_accepted) {
      if (std::find(accepted.begin(), accepted.end(), pair) == accepted.end()) {
        extra.push_back(pair);
      }
    }
    if (!extra.empty()) {
      std::vector<Constraint> widened = constraints;
      for (const Constraint& c : interpret_directives(extra, ctx)) {
        widened.push_back(c);
      }
      cmd = choose_command(widened, ctx);
    }
  }

  DecisionRecord record{s, advice.directives, advice.unknown_atoms,
                        std::move(accepted), cmd};
  return Decision{std::move(cmd), std::move(record)};
}

Decision decide(PolicyKind policy, const Situation& s, const RuleBase& rb,
                const sim::Observation& obs, const sim::VehicleState& self,
                const Plan& plan) {
  return decide(policy, s, rb, obs, self, plan, default_perception());
}

}  // namespace roadrules::agents
