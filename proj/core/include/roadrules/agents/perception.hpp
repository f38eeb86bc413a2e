#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "roadrules/agents/plan.hpp"
#include "roadrules/engine.hpp"
#include "roadrules/sim/world.hpp"

namespace roadrules::agents {

struct PerceptionInput {
  const sim::Observation& obs;
  const sim::VehicleState& self;
  const Plan& plan;
};

/// Pure function from one step's percepts to at most one vocabulary atom.
using Extractor = std::function<std::optional<Atom>(const PerceptionInput&)>;

/// Translation table between simulator percepts and the corpus vocabulary.
/// Extractors are pure; absence of observation means absence of the atom
/// (closed world at the perception boundary).
struct PerceptionMap {
  std::vector<Extractor> belief_extractors;
  std::vector<Extractor> intention_extractors;
};

/// The stock translation used by the driving-test subjects.
const PerceptionMap& default_perception();

/// Builds the standard-context Situation the vehicle reports: beliefs from
/// the belief extractors, intentions from the goal-derived intention
/// extractors.
Situation perceive(const PerceptionMap& pm, const sim::Observation& obs,
                   const sim::VehicleState& self, const Plan& plan);

}  // namespace roadrules::agents
