#include "roadrules/agents/directives.hpp"

#include <algorithm>
#include <map>

namespace roadrules::agents {

namespace {

using sim::Heading;
using sim::Lateral;
using sim::Position;
using sim::VehicleCommand;
using MovePlan = sim::World::MovePlan;

constexpr int kGapThreshold = 4;  // cells: oncoming this close blocks a turn

MovePlan planned(const VehicleCommand& cmd, const DecisionContext& ctx) {
  return sim::World::plan_move(ctx.plan.map(), ctx.self, cmd);
}

int forward_progress(const MovePlan& mp, const DecisionContext& ctx) {
  return ctx.plan.map().forward_offset(ctx.self.position, mp.final,
                                       ctx.self.heading);
}

/// Nearest stop line for our heading in our lane, as a forward distance.
std::optional<int> stop_line_distance(const DecisionContext& ctx) {
  const sim::GridMap& map = ctx.plan.map();
  std::optional<int> nearest;
  for (const sim::StopLine& sl : map.stop_lines()) {
    if (sl.approach != ctx.self.heading) continue;
    bool same_row = (ctx.self.heading == Heading::east ||
                     ctx.self.heading == Heading::west)
                        ? sl.position.y == ctx.self.position.y
                        : sl.position.x == ctx.self.position.x;
    if (!same_row) continue;
    int d = map.forward_offset(ctx.self.position, sl.position,
                               ctx.self.heading);
    if (d >= 0 && (!nearest || d < *nearest)) nearest = d;
  }
  return nearest;
}

bool admits_stop_at_line(const VehicleCommand& cmd, const DecisionContext& ctx) {
  auto line = stop_line_distance(ctx);
  if (!line) return true;  // no line ahead of us: nothing to hold
  return forward_progress(planned(cmd, ctx), ctx) <= *line;
}

bool admits_proceed_when_clear(const VehicleCommand& cmd,
                               const DecisionContext& ctx) {
  const sim::GridMap& map = ctx.plan.map();
  Position ahead = map.step_from(ctx.self.position, ctx.self.heading);
  bool clear = map.enterable(ahead, ctx.self.heading);
  for (const sim::VehicleState& v : ctx.obs.vehicles) {
    if (v.id != ctx.self.id && v.position == ahead) clear = false;
  }
  if (!clear) return true;
  return forward_progress(planned(cmd, ctx), ctx) >= 1;
}

bool left_change_safe(const DecisionContext& ctx) {
  const sim::GridMap& map = ctx.plan.map();
  Position left =
      map.step_from(ctx.self.position, sim::rotate_left(ctx.self.heading));
  const sim::Cell& cell = map.at(left);
  if (!cell.drivable || !cell.lane_direction ||
      *cell.lane_direction != ctx.self.heading) {
    return false;
  }
  VehicleCommand probe{sim::Longitudinal::hold, Lateral::change_left, {}};
  MovePlan mp = planned(probe, ctx);
  return mp.lateral_applied && move_safe_against_observed(mp, ctx);
}

bool admits_return_to_left(const VehicleCommand& cmd,
                           const DecisionContext& ctx) {
  if (!left_change_safe(ctx)) return true;
  return cmd.lateral == Lateral::change_left;
}

bool oncoming_within_gap(const DecisionContext& ctx) {
  const sim::GridMap& map = ctx.plan.map();
  Position crossing =
      map.step_from(ctx.self.position, sim::rotate_right(ctx.self.heading));
  Heading oncoming = sim::opposite(ctx.self.heading);
  for (const sim::VehicleState& v : ctx.obs.vehicles) {
    if (v.id == ctx.self.id || v.heading != oncoming) continue;
    bool same_row = (oncoming == Heading::east || oncoming == Heading::west)
                        ? v.position.y == crossing.y
                        : v.position.x == crossing.x;
    if (!same_row) continue;
    int d = map.forward_offset(v.position, crossing, v.heading);
    if (d >= 0 && d <= kGapThreshold) return true;
  }
  return false;
}

bool admits_give_way(const VehicleCommand& cmd, const DecisionContext& ctx) {
  if (cmd.lateral != Lateral::turn_right) return true;
  return !oncoming_within_gap(ctx);
}

bool admits_overtake_when_safe(const VehicleCommand& cmd,
                               const DecisionContext& ctx) {
  if (cmd.lateral != Lateral::change_right) return true;
  const sim::GridMap& map = ctx.plan.map();
  Position target =
      map.step_from(ctx.self.position, sim::rotate_right(ctx.self.heading));
  // Clear box in the overtaking lane: one cell behind through two ahead.
  for (const sim::VehicleState& v : ctx.obs.vehicles) {
    if (v.id == ctx.self.id) continue;
    bool same_row = (ctx.self.heading == Heading::east ||
                     ctx.self.heading == Heading::west)
                        ? v.position.y == target.y
                        : v.position.x == target.x;
    if (!same_row) continue;
    int d = map.forward_offset(target, v.position, ctx.self.heading);
    if (d >= -1 && d <= 2) return false;
  }
  return true;
}

bool admits_full_stop(const VehicleCommand& cmd, const DecisionContext& ctx) {
  MovePlan mp = planned(cmd, ctx);
  return mp.speed == 0 && mp.final == ctx.self.position;
}

bool admits_reduce_speed(const VehicleCommand& cmd, const DecisionContext& ctx) {
  if (ctx.self.speed == 0) return true;
  return planned(cmd, ctx).speed < ctx.self.speed;
}

bool admits_steady_speed(const VehicleCommand& cmd, const DecisionContext& ctx) {
  return planned(cmd, ctx).speed == ctx.self.speed;
}

bool admits_no_faster(const VehicleCommand& cmd, const DecisionContext& ctx) {
  return planned(cmd, ctx).speed <= ctx.self.speed;
}

bool admits_slow(const VehicleCommand& cmd, const DecisionContext& ctx) {
  return planned(cmd, ctx).speed <= 1;
}

struct Interpretation {
  std::vector<sim::LampChange> lamps;
  bool (*admits)(const VehicleCommand&, const DecisionContext&) = nullptr;
};

const std::map<std::string, Interpretation>& registry() {
  using sim::LampChange;
  using sim::LampKind;
  static const std::map<std::string, Interpretation> table = {
      // Movement semantics.
      {"stop_at_white_line", {{}, admits_stop_at_line}},
      {"stop_at_stop_line", {{}, admits_stop_at_line}},
      {"proceed_when_clear", {{}, admits_proceed_when_clear}},
      {"return_to_left_lane", {{}, admits_return_to_left}},
      {"give_way_oncoming", {{}, admits_give_way}},
      {"overtake_only_when_safe", {{}, admits_overtake_when_safe}},
      {"not_drive", {{}, admits_full_stop}},
      {"stop_at_signal", {{}, admits_full_stop}},
      {"reduce_speed", {{}, admits_reduce_speed}},
      {"maintain_steady_speed", {{}, admits_steady_speed}},
      {"increase_following_gap", {{}, admits_no_faster}},
      {"slow_approaching_junction", {{}, admits_slow}},
      // Lamp semantics.
      {"fog_lights_on", {{LampChange{LampKind::fog_lights, true}}, nullptr}},
      {"fog_lights_off", {{LampChange{LampKind::fog_lights, false}}, nullptr}},
      {"headlights_on", {{LampChange{LampKind::headlights, true}}, nullptr}},
      {"indicate_right", {{LampChange{LampKind::indicator_right, true}}, nullptr}},
      {"indicate_left", {{LampChange{LampKind::indicator_left, true}}, nullptr}},
      // Abstract directives: no simulator-level constraint. The corpus
      // keeps their interpretation outside the driving test.
      {"consideration_others", {}},
      {"drive_care_attention", {}},
      {"not_drive_dangerously", {}},
      {"seat_belts_on", {}},
      {"child_restraint_on", {}},
      {"sidelights_on", {}},
      {"dip_headlights", {}},
      {"give_way_pedestrian", {}},
      {"allow_emergency_vehicle_pass", {}},
      {"hazard_lights_on", {}},
      {"move_off_carriageway", {}},
  };
  return table;
}

}  // namespace

UnknownActionError::UnknownActionError(const Atom& atom)
    : std::logic_error("no registered interpretation for action atom '" +
                       atom.name() + "'"),
      atom_(atom.name()) {}

std::vector<Constraint> interpret_directives(
    const std::vector<ActionPair>& pairs, const DecisionContext& ctx) {
  (void)ctx;
  std::vector<Constraint> constraints;
  constraints.reserve(pairs.size());
  for (const ActionPair& pair : pairs) {
    auto it = registry().find(pair.action.name());
    if (it == registry().end()) throw UnknownActionError(pair.action);
    Constraint c{pair, it->second.lamps, {}};
    if (it->second.admits != nullptr) c.admits = it->second.admits;
    constraints.push_back(std::move(c));
  }
  return constraints;
}

bool satisfies(const Constraint& constraint, const sim::VehicleCommand& cmd,
               const DecisionContext& ctx) {
  if (constraint.admits && !constraint.admits(cmd, ctx)) return false;
  if (!constraint.lamps.empty()) {
    sim::Lamps post =
        sim::World::apply_lamp_changes(ctx.self.lamps, cmd.lamp_changes);
    for (const sim::LampChange& required : constraint.lamps) {
      bool actual = false;
      switch (required.lamp) {
        case sim::LampKind::headlights: actual = post.headlights; break;
        case sim::LampKind::fog_lights: actual = post.fog_lights; break;
        case sim::LampKind::indicator_left: actual = post.indicator_left; break;
        case sim::LampKind::indicator_right: actual = post.indicator_right; break;
      }
      if (actual != required.on) return false;
    }
  }
  return true;
}

std::vector<Atom> registered_actions() {
  std::vector<Atom> out;
  for (const auto& [name, unused] : registry()) {
    (void)unused;
    out.emplace_back(name);
  }
  return out;
}

bool move_safe_against_observed(const sim::World::MovePlan& move,
                                const DecisionContext& ctx) {
  const sim::GridMap& map = ctx.plan.map();
  auto entered = [](const std::vector<Position>& swept, Position p) {
    return std::find(swept.begin(), swept.end(), p) != swept.end();
  };
  for (const sim::VehicleState& v : ctx.obs.vehicles) {
    if (v.id == ctx.self.id) continue;
    // The other vehicle may advance anywhere from zero up to its speed.
    for (int s = 0; s <= v.speed; ++s) {
      sim::World::MovePlan other;
      other.heading = v.heading;
      other.final = v.position;
      for (int i = 0; i < s; ++i) {
        Position next = map.step_from(other.final, v.heading);
        if (!map.enterable(next, v.heading)) break;
        other.swept.push_back(next);
        other.final = next;
      }
      if (move.final == other.final) return false;
      if (entered(move.swept, other.final)) return false;
      if (entered(other.swept, move.final)) return false;
      if (entered(move.swept, v.position) &&
          entered(other.swept, ctx.self.position)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace roadrules::agents
