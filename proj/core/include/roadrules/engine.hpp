#pragma once

#include <vector>

#include "roadrules/rules.hpp"

namespace roadrules {

/// True iff the rule's trigger beliefs and intentions are subsets of the
/// situation's and the contexts are equal. Pure and total.
bool is_applicable(const Situation& s, const Rule& r);

/// Every applicable rule, in ascending name order. Only the bucket for
/// context(s) is consulted; context equality is a conjunct of
/// applicability, so this is sound.
std::vector<const Rule*> applicable_rules(const Situation& s,
                                          const RuleBase& rb);

/// Union of the applicable rules' action pairs, deduplicated on exact
/// (label, action) equality and sorted must-first then by action name.
/// Deterministic: identical inputs yield identical lists.
std::vector<ActionPair> recommended(const Situation& s, const RuleBase& rb);

/// recommended() plus the diagnostic the harness attaches to evidence:
/// query atoms the corpus vocabulary does not know. Unknown atoms are not
/// an error; they simply never match a trigger.
struct Advice {
  std::vector<ActionPair> directives;
  std::vector<Atom> unknown_atoms;
};

Advice advise(const Situation& s, const RuleBase& rb);

/// The applicable rules whose action set contains `pair` — the provenance
/// the monitor records against a violation.
std::vector<const Rule*> rules_recommending(const Situation& s,
                                            const RuleBase& rb,
                                            const ActionPair& pair);

}  // namespace roadrules
