#include "roadrules/sim/scenario.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "embedded_data.hpp"

namespace roadrules::sim {

namespace {

std::string_view trim(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
    text.remove_prefix(1);
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) {
    text.remove_suffix(1);
  }
  return text;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t pos = text.find('\n', start);
    if (pos == std::string_view::npos) {
      out.push_back(text.substr(start));
      break;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> words(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < text.size() && text[i] != ' ' && text[i] != '\t') ++i;
    if (i > start) out.push_back(text.substr(start, i - start));
  }
  return out;
}

int parse_int(std::string_view text, int line) {
  int sign = 1;
  std::size_t i = 0;
  if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
    sign = text[0] == '-' ? -1 : 1;
    i = 1;
  }
  if (i >= text.size()) throw MapError(line, "expected integer");
  int value = 0;
  for (; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw MapError(line, "bad integer: '" + std::string(text) + "'");
    }
    value = value * 10 + (text[i] - '0');
  }
  return sign * value;
}

struct KeyValues {
  std::map<std::string, std::string> values;

  std::optional<std::string> get(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) return std::nullopt;
    return it->second;
  }
};

KeyValues parse_key_values(const std::vector<std::string_view>& tokens,
                           std::size_t first, int line) {
  KeyValues kv;
  for (std::size_t i = first; i < tokens.size(); ++i) {
    std::size_t eq = tokens[i].find('=');
    if (eq == std::string_view::npos) {
      throw MapError(line, "expected key=value, got '" +
                               std::string(tokens[i]) + "'");
    }
    kv.values.emplace(std::string(tokens[i].substr(0, eq)),
                      std::string(tokens[i].substr(eq + 1)));
  }
  return kv;
}

struct VehicleDecl {
  std::string id;
  int speed = 1;       // cruise speed for traffic, max speed for the subject
  int seedshift = 0;   // +N forward / -N backward by seed % N
  int line = 0;
};

struct LightDecl {
  std::string id;
  PhaseDurations durations;
  LightPhase phase = LightPhase::red;
  int elapsed = 0;
  int line = 0;
};

LightPhase parse_phase(std::string_view text, int line) {
  if (text == "red") return LightPhase::red;
  if (text == "red_amber") return LightPhase::red_amber;
  if (text == "green") return LightPhase::green;
  if (text == "amber") return LightPhase::amber;
  throw MapError(line, "unknown light phase: '" + std::string(text) + "'");
}

std::optional<Heading> lane_char(char c) {
  switch (c) {
    case '>': return Heading::east;
    case '<': return Heading::west;
    case '^': return Heading::north;
    case 'v': return Heading::south;
    default: return std::nullopt;
  }
}

Position shifted_start(const GridMap& map, Position start, Heading heading,
                       int seedshift, unsigned seed) {
  if (seedshift == 0) return start;
  int offset = static_cast<int>(seed % static_cast<unsigned>(
                                           std::abs(seedshift)));
  return map.step_from(start, heading, seedshift > 0 ? offset : -offset);
}

}  // namespace

MapError::MapError(int line, const std::string& reason)
    : std::runtime_error("map line " + std::to_string(line) + ": " + reason),
      line_(line) {}

std::vector<std::string> scenario_names() {
  return {"traffic_light", "overtake", "right_turn"};
}

std::string_view scenario_map_text(std::string_view name) {
  if (name == "traffic_light") return roadrules::detail::kTrafficLightMap;
  if (name == "overtake") return roadrules::detail::kOvertakeMap;
  if (name == "right_turn") return roadrules::detail::kRightTurnMap;
  throw std::invalid_argument("unknown scenario: '" + std::string(name) + "'");
}

Scenario load_scenario(std::string_view name, unsigned seed) {
  return load_scenario_text(scenario_map_text(name), std::string(name), seed);
}

Scenario load_scenario_text(std::string_view text, std::string name,
                            unsigned seed) {
  std::optional<int> width;
  std::optional<int> height;
  int step_limit = 200;
  std::optional<VehicleDecl> subject_decl;
  std::vector<VehicleDecl> traffic_decls;
  std::vector<LightDecl> light_decls;
  std::optional<GoalSpec> goal;

  std::vector<std::string> grid_rows;
  std::vector<bool> second_lane_rows;
  std::vector<std::string> mark_rows;
  int grid_header_line = 0;
  int marks_header_line = 0;

  enum class Section { header, grid, marks } section = Section::header;

  auto lines = split_lines(text);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const int line_no = static_cast<int>(li) + 1;
    std::string_view raw = lines[li];
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

    if (section == Section::grid || section == Section::marks) {
      auto& rows = section == Section::grid ? grid_rows : mark_rows;
      if (static_cast<int>(rows.size()) < height.value_or(0)) {
        std::string row(raw);
        if (section == Section::grid) {
          bool second = false;
          // Optional " 2" suffix marks the row's cells as lane_index 1.
          if (row.size() >= 2 && row.substr(row.size() - 2) == " 2") {
            second = true;
            row.resize(row.size() - 2);
          }
          if (static_cast<int>(row.size()) != *width) {
            throw MapError(line_no, "grid row has " +
                                        std::to_string(row.size()) +
                                        " cells, expected " +
                                        std::to_string(*width));
          }
          second_lane_rows.push_back(second);
        } else if (static_cast<int>(row.size()) > *width) {
          throw MapError(line_no, "marks row longer than grid width");
        }
        rows.push_back(std::move(row));
        continue;
      }
      section = Section::header;  // fall through to keyword handling
    }

    std::size_t hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string_view line = trim(raw);
    if (line.empty()) continue;

    auto tok = words(line);
    std::string_view keyword = tok[0];

    if (keyword == "size") {
      if (tok.size() != 3) throw MapError(line_no, "size expects W H");
      width = parse_int(tok[1], line_no);
      height = parse_int(tok[2], line_no);
      if (*width < 1 || *height < 1) {
        throw MapError(line_no, "dimensions must be positive");
      }
    } else if (keyword == "steplimit") {
      if (tok.size() != 2) throw MapError(line_no, "steplimit expects N");
      step_limit = parse_int(tok[1], line_no);
    } else if (keyword == "light") {
      if (tok.size() < 2) throw MapError(line_no, "light needs an id");
      LightDecl decl;
      decl.id = std::string(tok[1]);
      decl.line = line_no;
      KeyValues kv = parse_key_values(tok, 2, line_no);
      if (auto v = kv.get("red")) decl.durations.red = parse_int(*v, line_no);
      if (auto v = kv.get("redamber")) decl.durations.red_amber = parse_int(*v, line_no);
      if (auto v = kv.get("green")) decl.durations.green = parse_int(*v, line_no);
      if (auto v = kv.get("amber")) decl.durations.amber = parse_int(*v, line_no);
      if (auto v = kv.get("phase")) decl.phase = parse_phase(*v, line_no);
      if (auto v = kv.get("elapsed")) decl.elapsed = parse_int(*v, line_no);
      light_decls.push_back(std::move(decl));
    } else if (keyword == "subject") {
      VehicleDecl decl;
      decl.id = "subject";
      decl.speed = 2;
      decl.line = line_no;
      KeyValues kv = parse_key_values(tok, 1, line_no);
      if (auto v = kv.get("maxspeed")) decl.speed = parse_int(*v, line_no);
      if (auto v = kv.get("seedshift")) decl.seedshift = parse_int(*v, line_no);
      subject_decl = std::move(decl);
    } else if (keyword == "traffic") {
      if (tok.size() < 2) throw MapError(line_no, "traffic needs an id");
      VehicleDecl decl;
      decl.id = std::string(tok[1]);
      decl.line = line_no;
      KeyValues kv = parse_key_values(tok, 2, line_no);
      if (auto v = kv.get("speed")) decl.speed = parse_int(*v, line_no);
      if (auto v = kv.get("seedshift")) decl.seedshift = parse_int(*v, line_no);
      traffic_decls.push_back(std::move(decl));
    } else if (keyword == "goal") {
      if (tok.size() == 3 && tok[1] == "line") {
        goal = GoalSpec{GoalSpec::Kind::line, {parse_int(tok[2], line_no), 0}};
      } else if (tok.size() == 4 && tok[1] == "cell") {
        goal = GoalSpec{GoalSpec::Kind::cell,
                        {parse_int(tok[2], line_no), parse_int(tok[3], line_no)}};
      } else {
        throw MapError(line_no, "goal expects 'line <x>' or 'cell <x> <y>'");
      }
    } else if (keyword == "grid:") {
      if (!width || !height) throw MapError(line_no, "size must precede grid:");
      grid_header_line = line_no;
      section = Section::grid;
    } else if (keyword == "marks:") {
      if (!width || !height) throw MapError(line_no, "size must precede marks:");
      marks_header_line = line_no;
      section = Section::marks;
    } else {
      throw MapError(line_no, "unknown keyword: '" + std::string(keyword) + "'");
    }
  }

  if (!width || !height) throw MapError(1, "missing size declaration");
  if (static_cast<int>(grid_rows.size()) != *height) {
    throw MapError(grid_header_line, "grid has " +
                                         std::to_string(grid_rows.size()) +
                                         " rows, expected " +
                                         std::to_string(*height));
  }
  if (!goal) throw MapError(1, "missing goal declaration");
  if (!subject_decl) throw MapError(1, "missing subject declaration");

  GridMap map(*width, *height);
  for (int y = 0; y < *height; ++y) {
    for (int x = 0; x < *width; ++x) {
      char c = grid_rows[y][x];
      Cell& cell = map.at({x, y});
      if (c == '.') continue;
      auto dir = lane_char(c);
      if (!dir) {
        throw MapError(grid_header_line + 1 + y,
                       std::string("unknown grid glyph: '") + c + "'");
      }
      cell.drivable = true;
      cell.lane_direction = *dir;
      cell.lane_index = second_lane_rows[y] ? 1 : 0;
    }
  }

  // Overlay marks. T and C glyphs bind to light/traffic declarations in
  // row-major reading order.
  std::vector<TrafficLight> lights;
  std::vector<VehicleState> vehicles;
  std::optional<Position> subject_pos;
  std::size_t next_light = 0;
  std::size_t next_traffic = 0;

  for (int y = 0; y < static_cast<int>(mark_rows.size()); ++y) {
    const std::string& row = mark_rows[y];
    for (int x = 0; x < static_cast<int>(row.size()); ++x) {
      char c = row[x];
      if (c == '.') continue;
      const int line_no = marks_header_line + 1 + y;
      Position pos{x, y};
      Cell& cell = map.at(pos);
      if (c == 'S') {
        if (subject_pos) throw MapError(line_no, "duplicate subject start");
        if (!cell.drivable) throw MapError(line_no, "subject start off road");
        subject_pos = pos;
      } else if (c == 'C') {
        if (next_traffic >= traffic_decls.size()) {
          throw MapError(line_no, "more C marks than traffic declarations");
        }
        if (!cell.drivable) throw MapError(line_no, "traffic start off road");
        const VehicleDecl& decl = traffic_decls[next_traffic++];
        VehicleState v;
        v.id = decl.id;
        v.heading = *cell.lane_direction;
        v.position = shifted_start(map, pos, v.heading, decl.seedshift, seed);
        v.speed = decl.speed;
        v.max_speed = decl.speed;
        v.kind = VehicleKind::traffic;
        vehicles.push_back(std::move(v));
      } else if (c == 'T') {
        if (next_light >= light_decls.size()) {
          throw MapError(line_no, "more T marks than light declarations");
        }
        const LightDecl& decl = light_decls[next_light++];
        TrafficLight light(decl.id, decl.durations, decl.phase, decl.elapsed);
        light.set_fixture(pos);
        cell.light_id = decl.id;
        lights.push_back(std::move(light));
      } else if (c == 'L') {
        if (!cell.drivable || !cell.lane_direction) {
          throw MapError(line_no, "stop line off road");
        }
        map.add_stop_line(StopLine{pos, *cell.lane_direction});
      } else if (c == 'J') {
        if (!cell.drivable) throw MapError(line_no, "junction mark off road");
        cell.junction = true;
      } else {
        throw MapError(line_no, std::string("unknown mark glyph: '") + c + "'");
      }
    }
  }

  if (!subject_pos) throw MapError(1, "missing subject start mark");
  if (next_traffic != traffic_decls.size()) {
    throw MapError(traffic_decls[next_traffic].line,
                   "traffic declaration without a C mark");
  }
  if (next_light != light_decls.size()) {
    throw MapError(light_decls[next_light].line,
                   "light declaration without a T mark");
  }

  // A light governs the stop lines within one cell of its fixture.
  for (TrafficLight& light : lights) {
    for (const StopLine& sl : map.stop_lines()) {
      if (map.chebyshev(light.fixture(), sl.position) <= 1) {
        light.add_control(sl.position);
      }
    }
  }

  const Cell& subject_cell = map.at(*subject_pos);
  VehicleState subject;
  subject.id = "subject";
  subject.heading = *subject_cell.lane_direction;
  subject.position = shifted_start(map, *subject_pos, subject.heading,
                                   subject_decl->seedshift, seed);
  subject.speed = 0;
  subject.max_speed = subject_decl->speed;
  subject.kind = VehicleKind::subject;

  Scenario sc{std::move(name),
              seed,
              step_limit,
              World(std::move(map), std::move(lights),
                    [&] {
                      vehicles.push_back(subject);
                      return std::move(vehicles);
                    }()),
              *goal,
              {},
              subject.id,
              subject.heading};
  for (const VehicleDecl& decl : traffic_decls) {
    sc.scripts.emplace(decl.id, TrafficScript{decl.id, decl.speed});
  }
  return sc;
}

std::map<std::string, VehicleCommand> traffic_commands(const Scenario& sc,
                                                       const World& world) {
  std::map<std::string, VehicleCommand> commands;
  for (const auto& [id, script] : sc.scripts) {
    const VehicleState& v = world.vehicle(id);
    const GridMap& map = world.map();

    // Room to move: gap behind the nearest vehicle ahead in this lane.
    int allowed = script.cruise_speed;
    for (const VehicleState& other : world.vehicles()) {
      if (other.id == v.id) continue;
      bool same_row = (v.heading == Heading::east || v.heading == Heading::west)
                          ? other.position.y == v.position.y
                          : other.position.x == v.position.x;
      if (!same_row) continue;
      int d = map.forward_offset(v.position, other.position, v.heading);
      if (d > 0) allowed = std::min(allowed, d - 1);
    }

    // Stop at a red (or amber) light's line: never pass the line cell.
    for (const StopLine& sl : map.stop_lines()) {
      if (sl.approach != v.heading) continue;
      bool same_row = (v.heading == Heading::east || v.heading == Heading::west)
                          ? sl.position.y == v.position.y
                          : sl.position.x == v.position.x;
      if (!same_row) continue;
      int d = map.forward_offset(v.position, sl.position, v.heading);
      if (d < 0) continue;
      for (const TrafficLight& light : world.lights()) {
        bool controls = std::find(light.controls().begin(),
                                  light.controls().end(),
                                  sl.position) != light.controls().end();
        if (controls && light.phase() != LightPhase::green) {
          allowed = std::min(allowed, d);
        }
      }
    }

    int target = std::min({script.cruise_speed, allowed, v.speed + 1});
    target = std::max(target, 0);

    VehicleCommand cmd;
    if (target > v.speed) {
      cmd.longitudinal = Longitudinal::accelerate;
    } else if (target == v.speed) {
      cmd.longitudinal = Longitudinal::hold;
    } else if (target == v.speed - 1) {
      cmd.longitudinal = Longitudinal::decelerate;
    } else {
      cmd.longitudinal = Longitudinal::stop;
    }
    commands.emplace(id, std::move(cmd));
  }
  return commands;
}

bool goal_reached(const Scenario& sc, const World& world) {
  const VehicleState& subject = world.vehicle(sc.subject_id);
  std::vector<Position> cells = world.last_swept(sc.subject_id);
  cells.push_back(subject.position);

  if (sc.goal.kind == GoalSpec::Kind::cell) {
    Position target = world.map().wrap(sc.goal.target);
    return std::find(cells.begin(), cells.end(), target) != cells.end();
  }
  const bool horizontal = sc.subject_heading == Heading::east ||
                          sc.subject_heading == Heading::west;
  for (const Position& p : cells) {
    if ((horizontal ? p.x : p.y) == sc.goal.target.x) return true;
  }
  return false;
}

std::string render_frame(const Scenario& sc, const World& world) {
  const GridMap& map = world.map();
  std::vector<std::string> rows;
  for (int y = 0; y < map.height(); ++y) {
    std::string row;
    for (int x = 0; x < map.width(); ++x) {
      const Cell& cell = map.at({x, y});
      char c = '.';
      if (cell.drivable && cell.lane_direction) {
        switch (*cell.lane_direction) {
          case Heading::north: c = '^'; break;
          case Heading::east: c = '>'; break;
          case Heading::south: c = 'v'; break;
          case Heading::west: c = '<'; break;
        }
      }
      if (cell.stop_line) c = '|';
      if (cell.light_id) {
        const TrafficLight* light = world.light(*cell.light_id);
        c = light ? to_string(light->phase())[0] : 'T';
      }
      row += c;
    }
    rows.push_back(std::move(row));
  }
  for (const VehicleState& v : world.vehicles()) {
    rows[v.position.y][v.position.x] =
        v.kind == VehicleKind::subject ? 'S' : 'c';
  }
  std::ostringstream out;
  out << sc.name << " step " << world.step_count() << '\n';
  for (const std::string& row : rows) out << row << '\n';
  return out.str();
}

}  // namespace roadrules::sim
