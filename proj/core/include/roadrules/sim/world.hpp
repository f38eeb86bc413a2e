#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "roadrules/sim/grid.hpp"

namespace roadrules::sim {

enum class VehicleKind { subject, traffic };

struct Lamps {
  bool headlights = false;
  bool fog_lights = false;
  bool indicator_left = false;
  bool indicator_right = false;

  bool operator==(const Lamps&) const = default;
};

enum class LampKind { headlights, fog_lights, indicator_left, indicator_right };

std::string_view to_string(LampKind lamp);

/// Idempotent lamp assignment: applying it twice equals applying it once.
struct LampChange {
  LampKind lamp;
  bool on;

  auto operator<=>(const LampChange&) const = default;
};

struct VehicleState {
  std::string id;
  Position position;
  Heading heading = Heading::east;
  int speed = 0;
  int max_speed = 1;
  Lamps lamps;
  VehicleKind kind = VehicleKind::traffic;
};

enum class Longitudinal { accelerate, hold, decelerate, stop };
enum class Lateral { keep, change_left, change_right, turn_left, turn_right };

std::string_view to_string(Longitudinal l);
std::string_view to_string(Lateral l);

struct VehicleCommand {
  Longitudinal longitudinal = Longitudinal::hold;
  Lateral lateral = Lateral::keep;
  std::vector<LampChange> lamp_changes;

  bool operator==(const VehicleCommand&) const = default;
};

/// Compact stable text form, e.g. "decelerate/keep" or
/// "hold/change_left[indicator_left:on]".
std::string to_string(const VehicleCommand& cmd);

struct ObservedCell {
  Position position;
  Cell cell;
};

struct ObservedLight {
  std::string id;
  Position position;
  LightPhase phase;
  std::vector<Position> controls;  // stop-line cells this light governs
};

/// Everything a vehicle can see: the radius-R Chebyshev window around it,
/// with toroidal wrap. Holds nothing outside the radius.
struct Observation {
  int step = 0;
  int radius = 0;
  Position center;
  std::vector<ObservedCell> cells;      // sorted by (x, y)
  std::vector<VehicleState> vehicles;   // sorted by id, includes observer
  std::vector<ObservedLight> lights;    // sorted by id

  const VehicleState* vehicle(const std::string& id) const;
  const Cell* cell(Position p) const;
};

struct ContentionEvent {
  int step;
  Position cell;
  std::vector<std::string> vehicle_ids;
};

struct CollisionFault {
  int step;
  Position cell;
  std::string moving_vehicle;
  std::string other_vehicle;
};

/// Deterministic lock-step world. All commands of a step are resolved
/// against the pre-step snapshot; two moves claiming one cell both cancel
/// (contention), entering a cell whose occupant stays is a collision fault
/// that freezes the world.
class World {
 public:
  World(GridMap map, std::vector<TrafficLight> lights,
        std::vector<VehicleState> vehicles);

  const GridMap& map() const { return map_; }
  const std::vector<TrafficLight>& lights() const { return lights_; }
  const TrafficLight* light(const std::string& id) const;
  const std::vector<VehicleState>& vehicles() const { return vehicles_; }

  /// Throws std::invalid_argument for an unknown id.
  const VehicleState& vehicle(const std::string& id) const;

  int step_count() const { return step_; }

  /// Executes one simultaneous step. `commands` must cover exactly the live
  /// vehicle set; anything else throws std::invalid_argument.
  void step(const std::map<std::string, VehicleCommand>& commands);

  /// The radius-R window around the vehicle. Throws on unknown id.
  Observation observe(const std::string& vehicle_id, int radius) const;

  const std::vector<ContentionEvent>& contentions() const {
    return contentions_;
  }
  const std::optional<CollisionFault>& fault() const { return fault_; }

  /// Cells the vehicle entered during the last step, in traversal order.
  const std::vector<Position>& last_swept(const std::string& id) const;

  /// Kinematics shared with agents' one-step lookahead: resulting heading,
  /// speed, final cell and swept cells for a command, before any
  /// interaction with other vehicles. Invalid lateral moves degrade to
  /// keep; turns cap speed at 1 and require an enterable target cell.
  struct MovePlan {
    Heading heading;
    int speed = 0;
    Position final;
    std::vector<Position> swept;  // cells entered, start cell excluded
    bool lateral_applied = false;
  };
  static MovePlan plan_move(const GridMap& map, const VehicleState& v,
                            const VehicleCommand& cmd);

  static Lamps apply_lamp_changes(Lamps lamps,
                                  const std::vector<LampChange>& changes);

 private:
  GridMap map_;
  std::vector<TrafficLight> lights_;
  std::vector<VehicleState> vehicles_;  // sorted by id
  int step_ = 0;
  std::vector<ContentionEvent> contentions_;
  std::optional<CollisionFault> fault_;
  std::map<std::string, std::vector<Position>> swept_;
};

}  // namespace roadrules::sim
