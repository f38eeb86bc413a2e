#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "roadrules/sim/world.hpp"

namespace roadrules::sim {

class MapError : public std::runtime_error {
 public:
  MapError(int line, const std::string& reason);

  int line() const { return line_; }

 private:
  int line_;
};

/// Scripted traffic vehicle: cruises at constant speed in its lane, keeps a
/// one-cell gap behind vehicles ahead, and stops at red lights.
struct TrafficScript {
  std::string id;
  int cruise_speed = 1;
};

struct GoalSpec {
  enum class Kind { line, cell };

  Kind kind = Kind::cell;
  /// line: the coordinate to cross along the subject's initial heading axis
  /// (stored in target.x). cell: the exact cell to enter.
  Position target;
};

/// A loaded scenario: initial world plus goal, step budget, and the traffic
/// scripts that drive the non-subject vehicles.
struct Scenario {
  std::string name;
  unsigned seed = 0;
  int step_limit = 200;
  World world;
  GoalSpec goal;
  std::map<std::string, TrafficScript> scripts;
  std::string subject_id;
  Heading subject_heading = Heading::east;
};

std::vector<std::string> scenario_names();

/// Raw map text of an embedded scenario. Throws std::invalid_argument for
/// an unknown name.
std::string_view scenario_map_text(std::string_view name);

/// Loads one of the embedded scenarios (traffic_light, overtake,
/// right_turn). The seed deterministically offsets the seed-shifted start
/// positions declared in the map. Throws std::invalid_argument for an
/// unknown name.
Scenario load_scenario(std::string_view name, unsigned seed);

/// Parses the ASCII map format (see README). Throws MapError on malformed
/// input.
Scenario load_scenario_text(std::string_view text, std::string name,
                            unsigned seed);

/// Commands for every scripted traffic vehicle for the next step.
std::map<std::string, VehicleCommand> traffic_commands(const Scenario& sc,
                                                       const World& world);

/// True once the subject's last step reached the goal (line crossed or goal
/// cell entered).
bool goal_reached(const Scenario& sc, const World& world);

/// One ASCII frame of the current world, for the CLI's debug dump.
std::string render_frame(const Scenario& sc, const World& world);

}  // namespace roadrules::sim
