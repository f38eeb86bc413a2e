#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace roadrules::sim {

/// Travel direction on the grid. North is -y, east is +x.
enum class Heading { north, east, south, west };

Heading rotate_right(Heading h);
Heading rotate_left(Heading h);
Heading opposite(Heading h);
std::string_view to_string(Heading h);
std::optional<Heading> parse_heading(std::string_view text);

struct Position {
  int x = 0;
  int y = 0;

  auto operator<=>(const Position&) const = default;
};

/// UK four-phase light sequence: red -> red_amber -> green -> amber -> red.
enum class LightPhase { red, red_amber, green, amber };

std::string_view to_string(LightPhase phase);

struct PhaseDurations {
  int red = 8;
  int red_amber = 2;
  int green = 8;
  int amber = 2;
};

class TrafficLight {
 public:
  /// Durations must all be >= 1.
  TrafficLight(std::string id, PhaseDurations durations,
               LightPhase initial = LightPhase::red, int elapsed = 0);

  const std::string& id() const { return id_; }
  LightPhase phase() const { return phase_; }
  Position fixture() const { return fixture_; }
  void set_fixture(Position p) { fixture_ = p; }

  /// Stop-line cells this light governs.
  const std::vector<Position>& controls() const { return controls_; }
  void add_control(Position p) { controls_.push_back(p); }

  /// Advances one simulation step.
  void tick();

 private:
  std::string id_;
  PhaseDurations durations_;
  LightPhase phase_;
  int elapsed_;
  Position fixture_;
  std::vector<Position> controls_;
};

struct Cell {
  bool drivable = false;
  std::optional<Heading> lane_direction;  // present iff drivable
  int lane_index = 0;    // 0 = leftmost lane in travel direction
  bool junction = false; // crossable in any direction while turning
  std::optional<std::string> light_id;    // fixture standing on this cell
  std::optional<Heading> stop_line;       // approach direction it governs
};

/// Stop line as (position, approach direction).
struct StopLine {
  Position position;
  Heading approach;

  auto operator<=>(const StopLine&) const = default;
};

/// Toroidal cell grid: coordinates wrap modulo width/height.
class GridMap {
 public:
  GridMap(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }

  Position wrap(Position p) const;
  const Cell& at(Position p) const;
  Cell& at(Position p);

  /// Position `cells` steps along `h`, wrapped.
  Position step_from(Position p, Heading h, int cells = 1) const;

  /// Toroidal Chebyshev distance.
  int chebyshev(Position a, Position b) const;

  /// Signed offset from `from` to `to` along the axis of `h`, positive
  /// ahead, in (-len/2, len/2]. The cross axis is ignored.
  int forward_offset(Position from, Position to, Heading h) const;

  const std::vector<StopLine>& stop_lines() const { return stop_lines_; }
  void add_stop_line(StopLine line);

  /// True when a vehicle heading `h` may enter `p`: the lane runs in `h`
  /// or the cell is a junction.
  bool enterable(Position p, Heading h) const;

 private:
  int width_;
  int height_;
  std::vector<Cell> cells_;
  std::vector<StopLine> stop_lines_;
};

}  // namespace roadrules::sim
