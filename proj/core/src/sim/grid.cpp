#include "roadrules/sim/grid.hpp"

#include <cstdlib>
#include <stdexcept>

namespace roadrules::sim {

Heading rotate_right(Heading h) {
  switch (h) {
    case Heading::north: return Heading::east;
    case Heading::east: return Heading::south;
    case Heading::south: return Heading::west;
    case Heading::west: return Heading::north;
  }
  return Heading::north;
}

Heading rotate_left(Heading h) { return rotate_right(rotate_right(rotate_right(h))); }

Heading opposite(Heading h) { return rotate_right(rotate_right(h)); }

std::string_view to_string(Heading h) {
  switch (h) {
    case Heading::north: return "N";
    case Heading::east: return "E";
    case Heading::south: return "S";
    case Heading::west: return "W";
  }
  return "?";
}

std::optional<Heading> parse_heading(std::string_view text) {
  if (text == "N") return Heading::north;
  if (text == "E") return Heading::east;
  if (text == "S") return Heading::south;
  if (text == "W") return Heading::west;
  return std::nullopt;
}

std::string_view to_string(LightPhase phase) {
  switch (phase) {
    case LightPhase::red: return "red";
    case LightPhase::red_amber: return "red_amber";
    case LightPhase::green: return "green";
    case LightPhase::amber: return "amber";
  }
  return "?";
}

namespace {

int duration_of(const PhaseDurations& d, LightPhase p) {
  switch (p) {
    case LightPhase::red: return d.red;
    case LightPhase::red_amber: return d.red_amber;
    case LightPhase::green: return d.green;
    case LightPhase::amber: return d.amber;
  }
  return 1;
}

LightPhase next_phase(LightPhase p) {
  switch (p) {
    case LightPhase::red: return LightPhase::red_amber;
    case LightPhase::red_amber: return LightPhase::green;
    case LightPhase::green: return LightPhase::amber;
    case LightPhase::amber: return LightPhase::red;
  }
  return LightPhase::red;
}

}  // namespace

TrafficLight::TrafficLight(std::string id, PhaseDurations durations,
                           LightPhase initial, int elapsed)
    : id_(std::move(id)),
      durations_(durations),
      phase_(initial),
      elapsed_(elapsed) {
  if (durations_.red < 1 || durations_.red_amber < 1 || durations_.green < 1 ||
      durations_.amber < 1) {
    throw std::invalid_argument("light '" + id_ +
                                "': phase durations must be >= 1");
  }
  if (elapsed_ < 0 || elapsed_ >= duration_of(durations_, phase_)) {
    throw std::invalid_argument("light '" + id_ + "': elapsed out of range");
  }
}

void TrafficLight::tick() {
  if (++elapsed_ >= duration_of(durations_, phase_)) {
    phase_ = next_phase(phase_);
    elapsed_ = 0;
  }
}

GridMap::GridMap(int width, int height) : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("grid dimensions must be positive");
  }
  cells_.resize(static_cast<std::size_t>(width) * height);
}

Position GridMap::wrap(Position p) const {
  int x = p.x % width_;
  int y = p.y % height_;
  if (x < 0) x += width_;
  if (y < 0) y += height_;
  return {x, y};
}

const Cell& GridMap::at(Position p) const {
  Position w = wrap(p);
  return cells_[static_cast<std::size_t>(w.y) * width_ + w.x];
}

Cell& GridMap::at(Position p) {
  Position w = wrap(p);
  return cells_[static_cast<std::size_t>(w.y) * width_ + w.x];
}

Position GridMap::step_from(Position p, Heading h, int cells) const {
  switch (h) {
    case Heading::north: return wrap({p.x, p.y - cells});
    case Heading::east: return wrap({p.x + cells, p.y});
    case Heading::south: return wrap({p.x, p.y + cells});
    case Heading::west: return wrap({p.x - cells, p.y});
  }
  return wrap(p);
}

int GridMap::chebyshev(Position a, Position b) const {
  a = wrap(a);
  b = wrap(b);
  int dx = std::abs(a.x - b.x);
  int dy = std::abs(a.y - b.y);
  dx = std::min(dx, width_ - dx);
  dy = std::min(dy, height_ - dy);
  return std::max(dx, dy);
}

int GridMap::forward_offset(Position from, Position to, Heading h) const {
  from = wrap(from);
  to = wrap(to);
  int len = (h == Heading::east || h == Heading::west) ? width_ : height_;
  int delta = 0;
  switch (h) {
    case Heading::east: delta = to.x - from.x; break;
    case Heading::west: delta = from.x - to.x; break;
    case Heading::south: delta = to.y - from.y; break;
    case Heading::north: delta = from.y - to.y; break;
  }
  delta %= len;
  if (delta < 0) delta += len;
  if (delta > len / 2) delta -= len;  // behind is closer than ahead
  return delta;
}

void GridMap::add_stop_line(StopLine line) {
  line.position = wrap(line.position);
  if (!at(line.position).drivable) {
    throw std::invalid_argument("stop line on non-drivable cell");
  }
  at(line.position).stop_line = line.approach;
  stop_lines_.push_back(line);
}

bool GridMap::enterable(Position p, Heading h) const {
  const Cell& cell = at(p);
  if (!cell.drivable) return false;
  return cell.junction || (cell.lane_direction && *cell.lane_direction == h);
}

}  // namespace roadrules::sim
