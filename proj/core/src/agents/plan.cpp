#include "roadrules/agents/plan.hpp"

#include <deque>
#include <limits>

namespace roadrules::agents {

namespace {

constexpr int kUnreachable = std::numeric_limits<int>::max() / 4;

constexpr sim::Heading kHeadings[] = {sim::Heading::north, sim::Heading::east,
                                      sim::Heading::south, sim::Heading::west};

int cell_index(const sim::GridMap& map, sim::Position p) {
  p = map.wrap(p);
  return p.y * map.width() + p.x;
}

}  // namespace

Plan::Plan(std::shared_ptr<const sim::GridMap> map, sim::GoalSpec goal,
           sim::Heading initial_heading)
    : map_(std::move(map)), goal_(goal), initial_heading_(initial_heading) {
  if (goal_.kind != sim::GoalSpec::Kind::cell) return;

  // Reverse BFS from the goal cell over the directed lane graph.
  distance_.assign(static_cast<std::size_t>(map_->width()) * map_->height(),
                   kUnreachable);
  sim::Position goal_pos = map_->wrap(goal_.target);
  distance_[cell_index(*map_, goal_pos)] = 0;
  std::deque<sim::Position> frontier{goal_pos};
  while (!frontier.empty()) {
    sim::Position q = frontier.front();
    frontier.pop_front();
    int next_dist = distance_[cell_index(*map_, q)] + 1;
    // Predecessors: cells p with an edge p -> q.
    for (sim::Heading h : kHeadings) {
      sim::Position p = map_->step_from(q, sim::opposite(h));
      if (!map_->at(p).drivable) continue;
      if (!map_->enterable(q, h)) continue;
      int& d = distance_[cell_index(*map_, p)];
      if (next_dist < d) {
        d = next_dist;
        frontier.push_back(p);
      }
    }
  }
}

int Plan::distance_to_goal(sim::Position pos) const {
  if (goal_.kind == sim::GoalSpec::Kind::cell) {
    return distance_[cell_index(*map_, pos)];
  }
  // Line goal: pure forward ring distance along the initial heading axis.
  pos = map_->wrap(pos);
  const bool horizontal = initial_heading_ == sim::Heading::east ||
                          initial_heading_ == sim::Heading::west;
  int len = horizontal ? map_->width() : map_->height();
  int coord = horizontal ? pos.x : pos.y;
  int sign = (initial_heading_ == sim::Heading::east ||
              initial_heading_ == sim::Heading::south)
                 ? 1
                 : -1;
  int delta = (goal_.target.x - coord) * sign;
  delta %= len;
  if (delta < 0) delta += len;
  return delta;
}

std::vector<sim::Position> Plan::route_from(sim::Position pos,
                                            sim::Heading heading) const {
  std::vector<sim::Position> route;
  pos = map_->wrap(pos);

  if (goal_.kind == sim::GoalSpec::Kind::line) {
    int remaining = distance_to_goal(pos);
    for (int i = 0; i < remaining; ++i) {
      pos = map_->step_from(pos, heading);
      route.push_back(pos);
    }
    return route;
  }

  // Greedy descent over the BFS field; ties break in N, E, S, W order.
  int guard = map_->width() * map_->height();
  while (distance_to_goal(pos) > 0 && guard-- > 0) {
    sim::Position best = pos;
    int best_dist = kUnreachable;
    for (sim::Heading h : kHeadings) {
      sim::Position q = map_->step_from(pos, h);
      if (!map_->enterable(q, h)) continue;
      int d = distance_to_goal(q);
      if (d < best_dist) {
        best_dist = d;
        best = q;
      }
    }
    if (best_dist >= distance_to_goal(pos)) break;  // no progress possible
    pos = best;
    route.push_back(pos);
  }
  return route;
}

std::optional<Plan::TurnAhead> Plan::next_turn(sim::Position pos,
                                               sim::Heading heading) const {
  sim::Position at = map_->wrap(pos);
  sim::Heading h = heading;
  for (const sim::Position& next : route_from(pos, heading)) {
    sim::Heading step_heading = h;
    for (sim::Heading cand : kHeadings) {
      if (map_->step_from(at, cand) == next) {
        step_heading = cand;
        break;
      }
    }
    if (step_heading != h) {
      return TurnAhead{at, step_heading == sim::rotate_right(h)};
    }
    at = next;
    h = step_heading;
  }
  return std::nullopt;
}

std::optional<Plan::StopLineAhead> Plan::stop_line_ahead(
    sim::Position pos, sim::Heading heading) const {
  auto line_here = [&](sim::Position p, int distance)
      -> std::optional<StopLineAhead> {
    const sim::Cell& cell = map_->at(p);
    if (!cell.stop_line || *cell.stop_line != heading) return std::nullopt;
    StopLineAhead ahead{map_->wrap(p), distance, false};
    for (int dx = -1; dx <= 1 && !ahead.has_light; ++dx) {
      for (int dy = -1; dy <= 1; ++dy) {
        if (map_->at({p.x + dx, p.y + dy}).light_id) {
          ahead.has_light = true;
          break;
        }
      }
    }
    return ahead;
  };

  if (auto on_it = line_here(pos, 0)) return on_it;
  int distance = 0;
  for (const sim::Position& next : route_from(pos, heading)) {
    ++distance;
    if (auto found = line_here(next, distance)) return found;
  }
  return std::nullopt;
}

Plan make_plan(const sim::Scenario& scenario) {
  return Plan(std::make_shared<sim::GridMap>(scenario.world.map()),
              scenario.goal, scenario.subject_heading);
}

}  // namespace roadrules::agents
