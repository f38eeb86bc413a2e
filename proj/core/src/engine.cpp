#include "roadrules/engine.hpp"

#include <algorithm>
#include <iterator>

namespace roadrules {

bool is_applicable(const Situation& s, const Rule& r) {
  if (r.context() != s.context()) return false;
  const auto& sb = s.beliefs();
  const auto& si = s.intentions();
  return std::includes(sb.begin(), sb.end(), r.beliefs().begin(),
                       r.beliefs().end()) &&
         std::includes(si.begin(), si.end(), r.intentions().begin(),
                       r.intentions().end());
}

std::vector<const Rule*> applicable_rules(const Situation& s,
                                          const RuleBase& rb) {
  std::vector<const Rule*> out;
  for (const Rule* rule : rb.rules_in_context(s.context())) {
    if (is_applicable(s, *rule)) out.push_back(rule);
  }
  return out;
}

std::vector<ActionPair> recommended(const Situation& s, const RuleBase& rb) {
  std::set<ActionPair> pairs;
  for (const Rule* rule : applicable_rules(s, rb)) {
    pairs.insert(rule->action_pairs().begin(), rule->action_pairs().end());
  }
  return {pairs.begin(), pairs.end()};
}

Advice advise(const Situation& s, const RuleBase& rb) {
  Advice advice;
  advice.directives = recommended(s, rb);
  const AtomSet& vocab = rb.vocabulary();
  std::set_difference(s.beliefs().begin(), s.beliefs().end(), vocab.begin(),
                      vocab.end(), std::back_inserter(advice.unknown_atoms));
  std::set_difference(s.intentions().begin(), s.intentions().end(),
                      vocab.begin(), vocab.end(),
                      std::back_inserter(advice.unknown_atoms));
  std::sort(advice.unknown_atoms.begin(), advice.unknown_atoms.end());
  advice.unknown_atoms.erase(
      std::unique(advice.unknown_atoms.begin(), advice.unknown_atoms.end()),
      advice.unknown_atoms.end());
  return advice;
}

std::vector<const Rule*> rules_recommending(const Situation& s,
                                            const RuleBase& rb,
                                            const ActionPair& pair) {
  std::vector<const Rule*> out;
  for (const Rule* rule : applicable_rules(s, rb)) {
    if (rule->action_pairs().count(pair) != 0) out.push_back(rule);
  }
  return out;
}

}  // namespace roadrules
