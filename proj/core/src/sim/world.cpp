#include "roadrules/sim/world.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace roadrules::sim {

std::string_view to_string(LampKind lamp) {
  switch (lamp) {
    case LampKind::headlights: return "headlights";
    case LampKind::fog_lights: return "fog_lights";
    case LampKind::indicator_left: return "indicator_left";
    case LampKind::indicator_right: return "indicator_right";
  }
  return "?";
}

std::string_view to_string(Longitudinal l) {
  switch (l) {
    case Longitudinal::accelerate: return "accelerate";
    case Longitudinal::hold: return "hold";
    case Longitudinal::decelerate: return "decelerate";
    case Longitudinal::stop: return "stop";
  }
  return "?";
}

std::string_view to_string(Lateral l) {
  switch (l) {
    case Lateral::keep: return "keep";
    case Lateral::change_left: return "change_left";
    case Lateral::change_right: return "change_right";
    case Lateral::turn_left: return "turn_left";
    case Lateral::turn_right: return "turn_right";
  }
  return "?";
}

std::string to_string(const VehicleCommand& cmd) {
  std::string out(to_string(cmd.longitudinal));
  out += '/';
  out += to_string(cmd.lateral);
  if (!cmd.lamp_changes.empty()) {
    out += '[';
    bool first = true;
    for (const LampChange& change : cmd.lamp_changes) {
      if (!first) out += ',';
      out += to_string(change.lamp);
      out += change.on ? ":on" : ":off";
      first = false;
    }
    out += ']';
  }
  return out;
}

const VehicleState* Observation::vehicle(const std::string& id) const {
  for (const VehicleState& v : vehicles) {
    if (v.id == id) return &v;
  }
  return nullptr;
}

const Cell* Observation::cell(Position p) const {
  for (const ObservedCell& c : cells) {
    if (c.position == p) return &c.cell;
  }
  return nullptr;
}

World::World(GridMap map, std::vector<TrafficLight> lights,
             std::vector<VehicleState> vehicles)
    : map_(std::move(map)),
      lights_(std::move(lights)),
      vehicles_(std::move(vehicles)) {
  std::sort(vehicles_.begin(), vehicles_.end(),
            [](const VehicleState& a, const VehicleState& b) {
              return a.id < b.id;
            });
  for (std::size_t i = 1; i < vehicles_.size(); ++i) {
    if (vehicles_[i].id == vehicles_[i - 1].id) {
      throw std::invalid_argument("duplicate vehicle id: " + vehicles_[i].id);
    }
  }
  for (VehicleState& v : vehicles_) {
    v.position = map_.wrap(v.position);
  }
}

const TrafficLight* World::light(const std::string& id) const {
  for (const TrafficLight& l : lights_) {
    if (l.id() == id) return &l;
  }
  return nullptr;
}

const VehicleState& World::vehicle(const std::string& id) const {
  for (const VehicleState& v : vehicles_) {
    if (v.id == id) return v;
  }
  throw std::invalid_argument("unknown vehicle: " + id);
}

Lamps World::apply_lamp_changes(Lamps lamps,
                                const std::vector<LampChange>& changes) {
  for (const LampChange& change : changes) {
    switch (change.lamp) {
      case LampKind::headlights: lamps.headlights = change.on; break;
      case LampKind::fog_lights: lamps.fog_lights = change.on; break;
      case LampKind::indicator_left: lamps.indicator_left = change.on; break;
      case LampKind::indicator_right: lamps.indicator_right = change.on; break;
    }
  }
  return lamps;
}

World::MovePlan World::plan_move(const GridMap& map, const VehicleState& v,
                                 const VehicleCommand& cmd) {
  MovePlan plan;
  plan.heading = v.heading;

  int speed = v.speed;
  switch (cmd.longitudinal) {
    case Longitudinal::accelerate: speed = std::min(speed + 1, v.max_speed); break;
    case Longitudinal::hold: break;
    case Longitudinal::decelerate: speed = std::max(speed - 1, 0); break;
    case Longitudinal::stop: speed = 0; break;
  }

  Position pos = v.position;
  if (cmd.lateral == Lateral::turn_left || cmd.lateral == Lateral::turn_right) {
    Heading target = cmd.lateral == Lateral::turn_right
                         ? rotate_right(v.heading)
                         : rotate_left(v.heading);
    // A turn needs an enterable cell in the new direction and caps speed.
    if (map.enterable(map.step_from(pos, target), target)) {
      plan.heading = target;
      speed = std::min(speed, 1);
      plan.lateral_applied = true;
    }
  } else if (cmd.lateral == Lateral::change_left ||
             cmd.lateral == Lateral::change_right) {
    Heading side = cmd.lateral == Lateral::change_left
                       ? rotate_left(v.heading)
                       : rotate_right(v.heading);
    Position target = map.step_from(pos, side);
    const Cell& cell = map.at(target);
    if (cell.drivable && cell.lane_direction &&
        *cell.lane_direction == v.heading) {
      pos = target;
      plan.swept.push_back(pos);
      plan.lateral_applied = true;
    }
  }

  // Forward motion clamps at the road edge so vehicles never leave the
  // drivable surface.
  int moved = 0;
  while (moved < speed) {
    Position next = map.step_from(pos, plan.heading);
    if (!map.enterable(next, plan.heading)) break;
    pos = next;
    plan.swept.push_back(pos);
    ++moved;
  }
  plan.speed = moved;
  plan.final = pos;
  return plan;
}

void World::step(const std::map<std::string, VehicleCommand>& commands) {
  if (fault_) return;  // frozen after a collision fault

  if (commands.size() != vehicles_.size()) {
    throw std::invalid_argument("commands must cover exactly the live vehicles");
  }
  for (const auto& [id, cmd] : commands) {
    (void)cmd;
    bool known = std::any_of(
        vehicles_.begin(), vehicles_.end(),
        [&id = id](const VehicleState& v) { return v.id == id; });
    if (!known) throw std::invalid_argument("command for unknown vehicle: " + id);
  }

  const int step_no = step_ + 1;

  // All plans are computed against the pre-step snapshot; vehicles_ stays
  // untouched until commit.
  struct Entry {
    const VehicleState* state;
    const VehicleCommand* command;
    MovePlan plan;
    bool cancelled = false;
  };
  std::vector<Entry> entries;
  entries.reserve(vehicles_.size());
  for (const VehicleState& v : vehicles_) {
    const VehicleCommand& cmd = commands.at(v.id);
    entries.push_back(Entry{&v, &cmd, plan_move(map_, v, cmd)});
  }

  // Simultaneous claims by two movers on one final cell cancel both moves;
  // a stationary vehicle's own cell is not a claim (driving into it is a
  // collision, handled below).
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].plan.swept.empty()) continue;
    std::vector<std::size_t> claimants{i};
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      if (!entries[j].plan.swept.empty() &&
          entries[j].plan.final == entries[i].plan.final) {
        claimants.push_back(j);
      }
    }
    if (claimants.size() < 2 || entries[i].cancelled) continue;
    ContentionEvent event{step_no, entries[i].plan.final, {}};
    for (std::size_t k : claimants) {
      entries[k].cancelled = true;
      event.vehicle_ids.push_back(entries[k].state->id);
    }
    contentions_.push_back(std::move(event));
  }
  for (Entry& e : entries) {
    if (e.cancelled) {
      e.plan.final = e.state->position;
      e.plan.swept.clear();
      e.plan.speed = 0;
      e.plan.heading = e.state->heading;
    }
  }

  // Entering a cell whose occupant ends the step there is a collision, as
  // is swapping cells head-on. The world freezes with the evidence.
  for (const Entry& e : entries) {
    for (const Position& cell : e.plan.swept) {
      for (const Entry& other : entries) {
        if (other.state->id == e.state->id) continue;
        if (other.plan.final == cell && cell != e.plan.final) {
          fault_ = CollisionFault{step_no, cell, e.state->id, other.state->id};
        } else if (other.plan.final == cell && cell == e.plan.final) {
          // Same final cell would have been contention-cancelled above;
          // reaching here means `other` did not move: driven into.
          fault_ = CollisionFault{step_no, cell, e.state->id, other.state->id};
        }
        if (fault_) { step_ = step_no; return; }
      }
    }
    // Head-on crossing: each vehicle enters the other's start cell within
    // one step, so their paths met between cells.
    auto entered = [](const std::vector<Position>& swept, Position p) {
      return std::find(swept.begin(), swept.end(), p) != swept.end();
    };
    for (const Entry& other : entries) {
      if (other.state->id == e.state->id) continue;
      if (entered(e.plan.swept, other.state->position) &&
          entered(other.plan.swept, e.state->position)) {
        fault_ = CollisionFault{step_no, other.state->position, e.state->id,
                                other.state->id};
        step_ = step_no;
        return;
      }
    }
  }

  // Commit.
  swept_.clear();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Entry& e = entries[i];
    VehicleState& v = vehicles_[i];
    v.position = e.plan.final;
    v.heading = e.plan.heading;
    v.speed = e.plan.speed;
    v.lamps = apply_lamp_changes(v.lamps, e.command->lamp_changes);
    swept_[v.id] = e.plan.swept;
  }
  for (TrafficLight& light : lights_) light.tick();
  step_ = step_no;
}

Observation World::observe(const std::string& vehicle_id, int radius) const {
  const VehicleState& self = vehicle(vehicle_id);

  Observation obs;
  obs.step = step_;
  obs.radius = radius;
  obs.center = self.position;

  std::set<Position> window;
  for (int dx = -radius; dx <= radius; ++dx) {
    for (int dy = -radius; dy <= radius; ++dy) {
      window.insert(map_.wrap({self.position.x + dx, self.position.y + dy}));
    }
  }
  for (const Position& p : window) {
    obs.cells.push_back(ObservedCell{p, map_.at(p)});
  }
  for (const VehicleState& v : vehicles_) {
    if (map_.chebyshev(v.position, self.position) <= radius) {
      obs.vehicles.push_back(v);
    }
  }
  for (const TrafficLight& light : lights_) {
    if (window.count(map_.wrap(light.fixture())) != 0) {
      obs.lights.push_back(ObservedLight{light.id(), map_.wrap(light.fixture()),
                                         light.phase(), light.controls()});
    }
  }
  std::sort(obs.lights.begin(), obs.lights.end(),
            [](const ObservedLight& a, const ObservedLight& b) {
              return a.id < b.id;
            });
  return obs;
}

const std::vector<Position>& World::last_swept(const std::string& id) const {
  static const std::vector<Position> empty;
  auto it = swept_.find(id);
  return it == swept_.end() ? empty : it->second;
}

}  // namespace roadrules::sim
