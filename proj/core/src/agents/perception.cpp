#include "roadrules/agents/perception.hpp"

#include <algorithm>

namespace roadrules::agents {

namespace {

using sim::Heading;
using sim::Position;

constexpr int kNearby = 4;  // cells; matches the default observation radius

bool same_row(const sim::GridMap& map, Position a, Position b, Heading h) {
  (void)map;
  return (h == Heading::east || h == Heading::west) ? a.y == b.y : a.x == b.x;
}

/// Nearest same-lane vehicle ahead that is slower than our top speed.
bool slow_vehicle_ahead(const PerceptionInput& in) {
  const sim::GridMap& map = in.plan.map();
  for (const sim::VehicleState& v : in.obs.vehicles) {
    if (v.id == in.self.id || v.heading != in.self.heading) continue;
    if (!same_row(map, v.position, in.self.position, in.self.heading)) continue;
    int d = map.forward_offset(in.self.position, v.position, in.self.heading);
    if (d >= 1 && d <= kNearby && v.max_speed < in.self.max_speed) return true;
  }
  return false;
}

/// Slower same-direction vehicle in the lane to our left, relative offset
/// `lo..hi`. Used mid-overtake and after the pass.
bool left_lane_vehicle(const PerceptionInput& in, int lo, int hi) {
  const sim::GridMap& map = in.plan.map();
  if (map.at(in.self.position).lane_index < 1) return false;
  Position left =
      map.step_from(in.self.position, sim::rotate_left(in.self.heading));
  for (const sim::VehicleState& v : in.obs.vehicles) {
    if (v.id == in.self.id || v.heading != in.self.heading) continue;
    if (!same_row(map, v.position, left, in.self.heading)) continue;
    if (v.max_speed >= in.self.max_speed) continue;
    int d = map.forward_offset(in.self.position, v.position, in.self.heading);
    if (d >= lo && d <= hi) return true;
  }
  return false;
}

/// Phase of the light governing the next stop line on our route, if the
/// fixture is inside the observation window.
std::optional<sim::LightPhase> visible_light_ahead(const PerceptionInput& in) {
  auto line = in.plan.stop_line_ahead(in.self.position, in.self.heading);
  if (!line || !line->has_light) return std::nullopt;
  for (const sim::ObservedLight& light : in.obs.lights) {
    if (std::find(light.controls.begin(), light.controls.end(), line->cell) !=
        light.controls.end()) {
      return light.phase;
    }
  }
  return std::nullopt;
}

Extractor fixed(const char* name) {
  Atom atom{name};
  return [atom](const PerceptionInput&) { return std::optional<Atom>(atom); };
}

Extractor when(const char* name, bool (*pred)(const PerceptionInput&)) {
  Atom atom{name};
  return [atom, pred](const PerceptionInput& in) {
    return pred(in) ? std::optional<Atom>(atom) : std::nullopt;
  };
}

PerceptionMap build_default() {
  PerceptionMap pm;

  // Beliefs. The vehicle is honest and closed-world: it reports exactly
  // what it can see plus its own state.
  pm.belief_extractors.push_back(fixed("driving"));
  pm.belief_extractors.push_back(fixed("visibility_clear"));
  pm.belief_extractors.push_back(when("fog_lights_on", [](const PerceptionInput& in) {
    return in.self.lamps.fog_lights;
  }));
  pm.belief_extractors.push_back(when("headlights_on", [](const PerceptionInput& in) {
    return in.self.lamps.headlights;
  }));
  pm.belief_extractors.push_back([](const PerceptionInput& in) -> std::optional<Atom> {
    auto phase = visible_light_ahead(in);
    if (!phase) return std::nullopt;
    switch (*phase) {
      case sim::LightPhase::red: return Atom("lightRed");
      case sim::LightPhase::red_amber: return Atom("lightRedAmber");
      case sim::LightPhase::green: return Atom("lightGreen");
      case sim::LightPhase::amber: return Atom("lightAmber");
    }
    return std::nullopt;
  });
  pm.belief_extractors.push_back(when("slowVehicleAhead", slow_vehicle_ahead));
  pm.belief_extractors.push_back(when("oncomingTraffic", [](const PerceptionInput& in) {
    for (const sim::VehicleState& v : in.obs.vehicles) {
      if (v.id != in.self.id && v.heading == sim::opposite(in.self.heading)) {
        return true;
      }
    }
    return false;
  }));
  pm.belief_extractors.push_back(when("inRightLane", [](const PerceptionInput& in) {
    return in.plan.map().at(in.self.position).lane_index >= 1;
  }));
  pm.belief_extractors.push_back(when("overtakeComplete", [](const PerceptionInput& in) {
    return left_lane_vehicle(in, -kNearby, -1);
  }));

  // Intentions, derived from the route still ahead.
  pm.intention_extractors.push_back(when("approachingTrafficLight", [](const PerceptionInput& in) {
    auto line = in.plan.stop_line_ahead(in.self.position, in.self.heading);
    return line.has_value() && line->has_light;
  }));
  pm.intention_extractors.push_back(when("intendOvertake", [](const PerceptionInput& in) {
    return slow_vehicle_ahead(in) || left_lane_vehicle(in, 0, kNearby);
  }));
  pm.intention_extractors.push_back(when("intendTurnRight", [](const PerceptionInput& in) {
    auto turn = in.plan.next_turn(in.self.position, in.self.heading);
    return turn.has_value() && turn->right;
  }));

  return pm;
}

}  // namespace

const PerceptionMap& default_perception() {
  static const PerceptionMap pm = build_default();
  return pm;
}

Situation perceive(const PerceptionMap& pm, const sim::Observation& obs,
                   const sim::VehicleState& self, const Plan& plan) {
  PerceptionInput in{obs, self, plan};
  AtomSet beliefs;
  for (const Extractor& extract : pm.belief_extractors) {
    if (auto atom = extract(in)) beliefs.insert(*atom);
  }
  AtomSet intentions;
  for (const Extractor& extract : pm.intention_extractors) {
    if (auto atom = extract(in)) intentions.insert(*atom);
  }
  return Situation(ContextId("standard"), std::move(beliefs),
                   std::move(intentions));
}

}  // namespace roadrules::agents
