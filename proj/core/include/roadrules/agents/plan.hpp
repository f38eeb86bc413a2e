#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "roadrules/sim/scenario.hpp"

namespace roadrules::agents {

/// Static route knowledge the subject carries through a run: the road map,
/// the goal, and a distance-to-goal metric. Dynamic facts (vehicles, light
/// phases) come only from per-step Observations.
class Plan {
 public:
  Plan(std::shared_ptr<const sim::GridMap> map, sim::GoalSpec goal,
       sim::Heading initial_heading);

  const sim::GridMap& map() const { return *map_; }
  const sim::GoalSpec& goal() const { return goal_; }
  sim::Heading initial_heading() const { return initial_heading_; }

  /// Cells remaining to the goal from `pos`; large when unreachable.
  int distance_to_goal(sim::Position pos) const;

  /// Cells from `pos` (exclusive) to the goal (inclusive), following lane
  /// directions and junction turns.
  std::vector<sim::Position> route_from(sim::Position pos,
                                        sim::Heading heading) const;

  struct TurnAhead {
    sim::Position at;   // cell where the heading changes
    bool right = false;
  };
  std::optional<TurnAhead> next_turn(sim::Position pos,
                                     sim::Heading heading) const;

  struct StopLineAhead {
    sim::Position cell;
    int distance = 0;        // 0 when standing on the line cell
    bool has_light = false;  // a light fixture stands within one cell
  };
  /// Nearest stop line for our approach on the route ahead, including the
  /// cell currently occupied.
  std::optional<StopLineAhead> stop_line_ahead(sim::Position pos,
                                               sim::Heading heading) const;

 private:
  std::shared_ptr<const sim::GridMap> map_;
  sim::GoalSpec goal_;
  sim::Heading initial_heading_;
  std::vector<int> distance_;  // per-cell BFS field for cell goals
};

Plan make_plan(const sim::Scenario& scenario);

}  // namespace roadrules::agents
