#pragma once

// Seeded random rule bases and situations for the oracle-equivalence and
// property tests.

#include <random>
#include <string>
#include <vector>

#include "roadrules/rules.hpp"

namespace roadrules::testing {

inline std::vector<Atom> small_vocabulary(int size) {
  std::vector<Atom> atoms;
  for (int i = 0; i < size; ++i) {
    atoms.emplace_back("a" + std::to_string(i));
  }
  return atoms;
}

inline AtomSet random_subset(std::mt19937& rng, const std::vector<Atom>& vocab,
                             int max_size) {
  std::uniform_int_distribution<int> size_dist(0, max_size);
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
  AtomSet out;
  int n = size_dist(rng);
  for (int i = 0; i < n; ++i) out.insert(vocab[pick(rng)]);
  return out;
}

inline ContextId random_context(std::mt19937& rng) {
  std::uniform_int_distribution<int> coin(0, 1);
  return ContextId(coin(rng) == 0 ? "standard" : "emergency");
}

inline Situation random_situation(std::mt19937& rng,
                                  const std::vector<Atom>& vocab) {
  return Situation(random_context(rng), random_subset(rng, vocab, 6),
                   random_subset(rng, vocab, 3));
}

inline RuleBase random_rulebase(std::mt19937& rng,
                                const std::vector<Atom>& vocab,
                                int max_rules) {
  std::uniform_int_distribution<int> rule_count(0, max_rules);
  std::uniform_int_distribution<int> pair_count(1, 3);
  std::uniform_int_distribution<int> label_coin(0, 1);
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);

  RuleBase::Builder builder;
  builder.declare_context(ContextId("standard"))
      .declare_context(ContextId("emergency"));
  int rules = rule_count(rng);
  for (int i = 0; i < rules; ++i) {
    std::set<ActionPair> pairs;
    int n = pair_count(rng);
    for (int j = 0; j < n; ++j) {
      pairs.insert(ActionPair{
          label_coin(rng) == 0 ? Label::must : Label::should,
          vocab[pick(rng)]});
    }
    builder.add_rule(Rule("r" + std::to_string(i),
                          Situation(random_context(rng),
                                    random_subset(rng, vocab, 4),
                                    random_subset(rng, vocab, 2)),
                          std::move(pairs)));
  }
  return std::move(builder).build();
}

}  // namespace roadrules::testing
