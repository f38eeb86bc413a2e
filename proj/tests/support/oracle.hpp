#pragma once

// Brute-force reference for applicability and recommendation, restated
// literally from the definitions: per-atom membership tests over a linear
// scan of every rule, then multiset union, dedup, sort. Shares nothing with
// the engine's context index or subset algorithm.

#include <algorithm>
#include <string>
#include <vector>

#include "roadrules/rules.hpp"

namespace roadrules::testing {

inline bool oracle_applicable(const Situation& s, const Rule& r) {
  for (const Atom& b : r.beliefs()) {
    if (s.beliefs().count(b) == 0) return false;
  }
  for (const Atom& i : r.intentions()) {
    if (s.intentions().count(i) == 0) return false;
  }
  return r.context() == s.context();
}

inline std::vector<const Rule*> oracle_applicable_rules(const Situation& s,
                                                        const RuleBase& rb) {
  std::vector<const Rule*> out;
  for (const Rule& r : rb.rules()) {
    if (oracle_applicable(s, r)) out.push_back(&r);
  }
  return out;
}

inline std::vector<ActionPair> oracle_recommended(const Situation& s,
                                                  const RuleBase& rb) {
  std::vector<ActionPair> pool;  // multiset union
  for (const Rule* r : oracle_applicable_rules(s, rb)) {
    for (const ActionPair& pair : r->action_pairs()) pool.push_back(pair);
  }
  auto before = [](const ActionPair& a, const ActionPair& b) {
    if (a.label != b.label) return a.label == Label::must;
    return a.action.name() < b.action.name();
  };
  std::sort(pool.begin(), pool.end(), before);
  auto same = [](const ActionPair& a, const ActionPair& b) {
    return a.label == b.label && a.action.name() == b.action.name();
  };
  pool.erase(std::unique(pool.begin(), pool.end(), same), pool.end());
  return pool;
}

}  // namespace roadrules::testing
