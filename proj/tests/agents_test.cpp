#include <gtest/gtest.h>

#include "roadrules/agents/policy.hpp"
#include "roadrules/corpus.hpp"
#include "roadrules/rulefile.hpp"
#include "support/oracle.hpp"

namespace roadrules::agents {
namespace {

using sim::Heading;
using sim::Lateral;
using sim::Longitudinal;
using sim::Position;

struct Stage {
  sim::Scenario scenario;
  sim::World world;
  Plan plan;

  explicit Stage(const char* name, unsigned seed = 3)
      : scenario(sim::load_scenario(name, seed)),
        world(scenario.world),
        plan(make_plan(scenario)) {}

  /// Replaces a vehicle's state in a copy of the scenario world.
  void place(const std::string& id, Position pos, int speed,
             std::optional<Heading> heading = std::nullopt) {
    std::vector<sim::VehicleState> vehicles;
    for (sim::VehicleState v : world.vehicles()) {
      if (v.id == id) {
        v.position = pos;
        v.speed = speed;
        if (heading) v.heading = *heading;
      }
      vehicles.push_back(std::move(v));
    }
    world = sim::World(world.map(), world.lights(), std::move(vehicles));
  }

  sim::Observation observe() const { return world.observe("subject", 4); }

  sim::VehicleState self() const { return world.vehicle("subject"); }

  Situation perceive() const {
    return agents::perceive(default_perception(), observe(), self(), plan);
  }
};

bool has_atom(const AtomSet& set, const char* name) {
  return set.count(Atom(name)) != 0;
}

TEST(Perceive, RedLightAheadProducesStopQueryShape) {
  Stage stage("traffic_light");
  stage.place("subject", {12, 1}, 2);
  Situation s = stage.perceive();
  EXPECT_TRUE(has_atom(s.beliefs(), "driving"));
  EXPECT_TRUE(has_atom(s.beliefs(), "lightRed"));
  EXPECT_TRUE(has_atom(s.intentions(), "approachingTrafficLight"));
}

TEST(Perceive, LightOutsideObservationRadiusEmitsNoPhaseAtom) {
  Stage stage("traffic_light");
  stage.place("subject", {2, 1}, 0);
  Situation s = stage.perceive();
  for (const char* atom :
       {"lightRed", "lightRedAmber", "lightGreen", "lightAmber"}) {
    EXPECT_FALSE(has_atom(s.beliefs(), atom)) << atom;
  }
  // The route still crosses the light, so the intention stands.
  EXPECT_TRUE(has_atom(s.intentions(), "approachingTrafficLight"));
}

TEST(Perceive, CrossedLineDropsTheIntention) {
  Stage stage("traffic_light");
  stage.place("subject", {16, 1}, 2);
  Situation s = stage.perceive();
  EXPECT_FALSE(has_atom(s.intentions(), "approachingTrafficLight"));
  EXPECT_FALSE(has_atom(s.beliefs(), "lightRed"));
}

TEST(Perceive, OvertakeGeometryAfterThePass) {
  Stage stage("overtake");
  stage.place("subject", {16, 2}, 2);  // overtaking lane, past the slow car
  stage.place("c1", {15, 1}, 1);
  Situation s = stage.perceive();
  EXPECT_TRUE(has_atom(s.beliefs(), "inRightLane"));
  EXPECT_TRUE(has_atom(s.beliefs(), "overtakeComplete"));
  EXPECT_FALSE(has_atom(s.intentions(), "intendOvertake"));
}

TEST(Perceive, SlowVehicleAheadTriggersOvertakeIntention) {
  Stage stage("overtake");
  stage.place("subject", {9, 1}, 2);
  stage.place("c1", {11, 1}, 1);
  Situation s = stage.perceive();
  EXPECT_TRUE(has_atom(s.beliefs(), "slowVehicleAhead"));
  EXPECT_TRUE(has_atom(s.intentions(), "intendOvertake"));
  EXPECT_FALSE(has_atom(s.beliefs(), "inRightLane"));
}

TEST(Perceive, OncomingTrafficAndRightTurnIntention) {
  Stage stage("right_turn");
  stage.place("subject", {12, 1}, 1);
  stage.place("c1", {14, 2}, 1);
  Situation s = stage.perceive();
  EXPECT_TRUE(has_atom(s.beliefs(), "oncomingTraffic"));
  EXPECT_TRUE(has_atom(s.intentions(), "intendTurnRight"));
}

TEST(Perceive, EmitsOnlyCorpusVocabularyAtoms) {
  RuleBase rb = load_named_corpus("uk_highway_sample");
  for (const char* scenario : {"traffic_light", "overtake", "right_turn"}) {
    Stage stage(scenario);
    Situation s = stage.perceive();
    for (const Atom& atom : s.beliefs()) {
      EXPECT_TRUE(rb.vocabulary().count(atom) == 1) << atom.name();
    }
    for (const Atom& atom : s.intentions()) {
      EXPECT_TRUE(rb.vocabulary().count(atom) == 1) << atom.name();
    }
  }
}

TEST(Perceive, DeterministicForIdenticalInputs) {
  Stage stage("right_turn");
  EXPECT_EQ(stage.perceive(), stage.perceive());
}

TEST(InterpretDirectives, FogLightsOffForcesTheLampDown) {
  Stage stage("traffic_light");
  std::vector<sim::VehicleState> vehicles{stage.self()};
  vehicles[0].lamps.fog_lights = true;
  stage.world =
      sim::World(stage.world.map(), stage.world.lights(), std::move(vehicles));

  sim::Observation obs = stage.observe();
  sim::VehicleState self = stage.self();
  DecisionContext ctx{obs, self, stage.plan};
  auto constraints = interpret_directives(
      {{Label::must, Atom("fog_lights_off")}}, ctx);
  ASSERT_EQ(constraints.size(), 1u);

  sim::VehicleCommand plain{Longitudinal::hold, Lateral::keep, {}};
  EXPECT_FALSE(satisfies(constraints[0], plain, ctx));
  sim::VehicleCommand fixed{
      Longitudinal::hold,
      Lateral::keep,
      {sim::LampChange{sim::LampKind::fog_lights, false}}};
  EXPECT_TRUE(satisfies(constraints[0], fixed, ctx));

  // decide() must turn them off on its own.
  RuleBase rb = load_named_corpus("uk_highway_sample");
  Situation s = stage.perceive();
  EXPECT_TRUE(has_atom(s.beliefs(), "fog_lights_on"));
  Decision d = decide(PolicyKind::reactive, s, rb, obs, self, stage.plan);
  bool turns_off = false;
  for (const sim::LampChange& change : d.command.lamp_changes) {
    turns_off = turns_off || (change.lamp == sim::LampKind::fog_lights &&
                              !change.on);
  }
  EXPECT_TRUE(turns_off);
}

TEST(InterpretDirectives, EmptyListMeansNoConstraints) {
  Stage stage("traffic_light");
  sim::Observation obs = stage.observe();
  sim::VehicleState self = stage.self();
  DecisionContext ctx{obs, self, stage.plan};
  EXPECT_TRUE(interpret_directives({}, ctx).empty());
}

TEST(InterpretDirectives, StopAtLineOneCellShortAtSpeedTwo) {
  Stage stage("traffic_light");
  stage.place("subject", {13, 1}, 2);
  sim::Observation obs = stage.observe();
  sim::VehicleState self = stage.self();
  DecisionContext ctx{obs, self, stage.plan};
  auto constraints = interpret_directives(
      {{Label::must, Atom("stop_at_white_line")}}, ctx);
  ASSERT_EQ(constraints.size(), 1u);
  const Constraint& c = constraints[0];

  auto cmd = [](Longitudinal lon) {
    return sim::VehicleCommand{lon, Lateral::keep, {}};
  };
  EXPECT_FALSE(satisfies(c, cmd(Longitudinal::accelerate), ctx));
  EXPECT_FALSE(satisfies(c, cmd(Longitudinal::hold), ctx));
  EXPECT_TRUE(satisfies(c, cmd(Longitudinal::decelerate), ctx));
  EXPECT_TRUE(satisfies(c, cmd(Longitudinal::stop), ctx));
}

TEST(InterpretDirectives, UnregisteredActionAtomFailsLoudly) {
  Stage stage("traffic_light");
  sim::Observation obs = stage.observe();
  sim::VehicleState self = stage.self();
  DecisionContext ctx{obs, self, stage.plan};
  try {
    interpret_directives({{Label::must, Atom("paint_racing_stripes")}}, ctx);
    FAIL() << "expected UnknownActionError";
  } catch (const UnknownActionError& e) {
    EXPECT_EQ(e.atom(), "paint_racing_stripes");
  }
}

TEST(InterpretDirectives, RegistryCoversEveryShippedActionAtom) {
  RuleBase rb = load_named_corpus("uk_highway_sample");
  std::vector<Atom> registered = registered_actions();
  for (const Rule& r : rb.rules()) {
    for (const ActionPair& pair : r.action_pairs()) {
      EXPECT_NE(std::find(registered.begin(), registered.end(), pair.action),
                registered.end())
          << r.name() << ": " << pair.action.name();
    }
  }
}

TEST(InterpretDirectives, AbstractAtomsProduceTheEmptyConstraint) {
  Stage stage("traffic_light");
  sim::Observation obs = stage.observe();
  sim::VehicleState self = stage.self();
  DecisionContext ctx{obs, self, stage.plan};
  for (const char* atom : {"consideration_others", "drive_care_attention",
                           "not_drive_dangerously"}) {
    auto constraints =
        interpret_directives({{Label::must, Atom(atom)}}, ctx);
    ASSERT_EQ(constraints.size(), 1u) << atom;
    EXPECT_TRUE(constraints[0].lamps.empty()) << atom;
    EXPECT_FALSE(static_cast<bool>(constraints[0].admits)) << atom;
    for (Longitudinal lon : {Longitudinal::accelerate, Longitudinal::stop}) {
      EXPECT_TRUE(satisfies(constraints[0],
                            sim::VehicleCommand{lon, Lateral::keep, {}}, ctx));
    }
  }
}

TEST(Policy, FiltersMatchTheAgentDefinitions) {
  EXPECT_TRUE(filter_for(PolicyKind::reactive).accepts(Label::must));
  EXPECT_TRUE(filter_for(PolicyKind::reactive).accepts(Label::should));
  EXPECT_TRUE(filter_for(PolicyKind::morally_bankrupt).accepts(Label::must));
  EXPECT_FALSE(filter_for(PolicyKind::morally_bankrupt).accepts(Label::should));
  EXPECT_TRUE(filter_for(PolicyKind::proactive).accepts(Label::should));
  EXPECT_FALSE(filter_for(PolicyKind::reactive).accepted.empty());
}

TEST(Decide, ReactiveStopsShortOfTheRedLight) {
  Stage stage("traffic_light");
  stage.place("subject", {13, 1}, 2);
  RuleBase rb = load_named_corpus("uk_highway_sample");
  sim::Observation obs = stage.observe();
  sim::VehicleState self = stage.self();
  Situation s = stage.perceive();
  Decision d = decide(PolicyKind::reactive, s, rb, obs, self, stage.plan);
  // Anything faster would cross the line on red.
  EXPECT_TRUE(d.command.longitudinal == Longitudinal::decelerate ||
              d.command.longitudinal == Longitudinal::stop);
  bool has_stop_directive = false;
  for (const ActionPair& pair : d.record.accepted) {
    has_stop_directive =
        has_stop_directive || pair.action.name() == "stop_at_white_line";
  }
  EXPECT_TRUE(has_stop_directive);
}

TEST(Decide, BankruptIgnoresTheShouldDirective) {
  Stage stage("overtake");
  stage.place("subject", {16, 2}, 2);
  stage.place("c1", {14, 1}, 1);
  RuleBase rb = load_named_corpus("uk_highway_sample");
  sim::Observation obs = stage.observe();
  sim::VehicleState self = stage.self();
  Situation s = stage.perceive();

  Decision reactive =
      decide(PolicyKind::reactive, s, rb, obs, self, stage.plan);
  EXPECT_EQ(reactive.command.lateral, Lateral::change_left);

  Decision bankrupt =
      decide(PolicyKind::morally_bankrupt, s, rb, obs, self, stage.plan);
  EXPECT_EQ(bankrupt.command.lateral, Lateral::keep);
  for (const ActionPair& pair : bankrupt.record.accepted) {
    EXPECT_EQ(pair.label, Label::must);
  }
  // Both saw the same directive list.
  EXPECT_EQ(reactive.record.directives, bankrupt.record.directives);
}

TEST(Decide, UnconstrainedAgentIsTimeGreedy) {
  Stage stage("traffic_light");
  stage.place("subject", {20, 1}, 1);  // past the light, clear road
  RuleBase rb = load_named_corpus("uk_highway_sample");
  sim::Observation obs = stage.observe();
  sim::VehicleState self = stage.self();
  Situation s = stage.perceive();
  Decision d = decide(PolicyKind::reactive, s, rb, obs, self, stage.plan);
  EXPECT_EQ(d.command.longitudinal, Longitudinal::accelerate);
  EXPECT_EQ(d.command.lateral, Lateral::keep);
}

TEST(Decide, ProactiveMatchesReactiveStateByState) {
  RuleBase rb = load_named_corpus("uk_highway_sample");
  for (const char* scenario : {"traffic_light", "overtake", "right_turn"}) {
    Stage stage(scenario);
    sim::Observation obs = stage.observe();
    sim::VehicleState self = stage.self();
    Situation s = stage.perceive();
    Decision reactive =
        decide(PolicyKind::reactive, s, rb, obs, self, stage.plan);
    Decision proactive =
        decide(PolicyKind::proactive, s, rb, obs, self, stage.plan);
    EXPECT_EQ(reactive.command, proactive.command) << scenario;
  }
}

TEST(Decide, ProactiveReChoosesWhenThePredictionAddsConstraints) {
  // Synthetic rule: entering the overtaking lane caps the speed change.
  // The reactive agent changes lane and accelerates in one move; the
  // proactive agent sees the predicted inRightLane directive and holds its
  // speed through the lane change.
  RuleBase::Builder builder;
  builder.declare_context(ContextId("standard"));
  builder.add_rule(
      Rule("lane_discipline",
           Situation(ContextId("standard"), {Atom("inRightLane")}, {}),
           {ActionPair{Label::must, Atom("maintain_steady_speed")}}));
  RuleBase rb = std::move(builder).build();

  Stage stage("overtake");
  stage.place("subject", {9, 1}, 1);
  stage.place("c1", {11, 1}, 1);
  sim::Observation obs = stage.observe();
  sim::VehicleState self = stage.self();
  Situation s = stage.perceive();

  Decision reactive = decide(PolicyKind::reactive, s, rb, obs, self, stage.plan);
  EXPECT_EQ(reactive.command.lateral, Lateral::change_right);
  EXPECT_EQ(reactive.command.longitudinal, Longitudinal::accelerate);

  Decision proactive =
      decide(PolicyKind::proactive, s, rb, obs, self, stage.plan);
  EXPECT_NE(proactive.command, reactive.command);
  sim::World::MovePlan mp = sim::World::plan_move(
      stage.plan.map(), self, proactive.command);
  EXPECT_EQ(mp.speed, self.speed);  // the predicted directive held
}

TEST(Decide, FallsBackToSafeGreedyWhenConstraintsContradict) {
  // A corpus demanding both a full stop and forward progress admits no
  // command; decide() still returns a safe one for the monitor to judge.
  RuleBase rb = parse_rulefile(
      "contexts standard\n"
      "rule stopper standard | driving | | must not_drive\n"
      "rule mover standard | driving | | must proceed_when_clear\n");
  Stage stage("traffic_light");
  stage.place("subject", {20, 1}, 1);
  sim::Observation obs = stage.observe();
  sim::VehicleState self = stage.self();
  Situation s = stage.perceive();
  Decision d = decide(PolicyKind::reactive, s, rb, obs, self, stage.plan);
  DecisionContext ctx{obs, self, stage.plan};
  bool violates_one = false;
  for (const Constraint& c : interpret_directives(d.record.accepted, ctx)) {
    violates_one = violates_one || !satisfies(c, d.command, ctx);
  }
  EXPECT_TRUE(violates_one);
}

TEST(Decide, GiveWayBlocksTheTurnOnlyWithinTheGap) {
  Stage stage("right_turn");
  RuleBase rb = load_named_corpus("uk_highway_sample");

  stage.place("subject", {12, 1}, 1);
  stage.place("c1", {15, 2}, 1);  // three cells from the crossing: inside gap
  stage.place("c2", {26, 2}, 1);
  stage.place("f1", {5, 1}, 1);
  {
    sim::Observation obs = stage.observe();
    sim::VehicleState self = stage.self();
    Situation s = stage.perceive();
    Decision d = decide(PolicyKind::reactive, s, rb, obs, self, stage.plan);
    EXPECT_NE(d.command.lateral, Lateral::turn_right);
    Decision bankrupt =
        decide(PolicyKind::morally_bankrupt, s, rb, obs, self, stage.plan);
    EXPECT_EQ(bankrupt.command.lateral, Lateral::turn_right);
  }

  stage.place("c1", {9, 2}, 1);  // already past the junction
  {
    sim::Observation obs = stage.observe();
    sim::VehicleState self = stage.self();
    Situation s = stage.perceive();
    Decision d = decide(PolicyKind::reactive, s, rb, obs, self, stage.plan);
    EXPECT_EQ(d.command.lateral, Lateral::turn_right);
  }
}

}  // namespace
}  // namespace roadrules::agents
