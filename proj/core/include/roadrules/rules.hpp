#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "roadrules/atoms.hpp"

namespace roadrules {

using AtomSet = std::set<Atom>;

/// What a vehicle reports when it asks for advice: its driving context plus
/// ground belief and intention atoms. Beliefs and intentions are true sets.
class Situation {
 public:
  Situation(ContextId context, AtomSet beliefs, AtomSet intentions)
      : context_(std::move(context)),
        beliefs_(std::move(beliefs)),
        intentions_(std::move(intentions)) {}

  const ContextId& context() const { return context_; }
  const AtomSet& beliefs() const { return beliefs_; }
  const AtomSet& intentions() const { return intentions_; }

  auto operator<=>(const Situation&) const = default;

 private:
  ContextId context_;
  AtomSet beliefs_;
  AtomSet intentions_;
};

/// One corpus rule: a named trigger situation plus at least one labelled
/// action. Accessors delegate to the trigger, mirroring the advice query
/// shape.
class Rule {
 public:
  /// Throws std::invalid_argument on an empty action set or a name that
  /// does not match the identifier grammar.
  Rule(std::string name, Situation trigger, std::set<ActionPair> action_pairs);

  const std::string& name() const { return name_; }
  const Situation& trigger() const { return trigger_; }
  const ContextId& context() const { return trigger_.context(); }
  const AtomSet& beliefs() const { return trigger_.beliefs(); }
  const AtomSet& intentions() const { return trigger_.intentions(); }
  const std::set<ActionPair>& action_pairs() const { return action_pairs_; }

  bool operator==(const Rule&) const = default;

 private:
  std::string name_;
  Situation trigger_;
  std::set<ActionPair> action_pairs_;
};

/// 1-based line range of a rule stanza in its source file.
struct LineSpan {
  int first = 0;
  int last = 0;

  bool operator==(const LineSpan&) const = default;
};

/// Provenance of a parsed rule base, kept for diagnostics. Not part of
/// rule-base equality.
struct RuleSource {
  std::string path;
  std::map<std::string, LineSpan> spans;
};

/// Immutable, context-indexed rule collection with the corpus vocabulary.
/// Safe for concurrent read-only queries once built; all mutation goes
/// through the Builder.
class RuleBase {
 public:
  class Builder;

  /// All rules in ascending name order.
  const std::vector<Rule>& rules() const { return rules_; }

  /// Null if no rule carries that name.
  const Rule* find(std::string_view name) const;

  /// Rules declaring `context`, in ascending name order. An unknown context
  /// yields an empty list.
  std::vector<const Rule*> rules_in_context(const ContextId& context) const;

  const std::set<ContextId>& contexts() const { return contexts_; }

  /// Every atom the corpus knows: trigger beliefs/intentions, action atoms,
  /// and explicitly declared vocabulary.
  const AtomSet& vocabulary() const { return vocabulary_; }

  /// Declared mutually-exclusive action families, each pair normalised
  /// first < second.
  const std::set<std::pair<Atom, Atom>>& exclusions() const {
    return exclusions_;
  }

  const RuleSource& source() const { return source_; }

  std::size_t size() const { return rules_.size(); }
  bool empty() const { return rules_.empty(); }

  /// Structural equality; source provenance is ignored so stanza order and
  /// file layout do not matter.
  bool operator==(const RuleBase& other) const;

 private:
  RuleBase() = default;

  std::vector<Rule> rules_;  // sorted by name
  std::map<std::string, std::size_t> by_name_;
  std::map<ContextId, std::vector<std::size_t>> by_context_;
  std::set<ContextId> contexts_;
  AtomSet vocabulary_;
  std::set<std::pair<Atom, Atom>> exclusions_;
  RuleSource source_;
};

class RuleBase::Builder {
 public:
  Builder& declare_context(ContextId context);
  Builder& declare_vocabulary(Atom atom);
  Builder& declare_exclusion(Atom a, Atom b);

  /// Throws std::invalid_argument on a duplicate rule name.
  Builder& add_rule(Rule rule);

  Builder& source(RuleSource source);

  bool has_rule(std::string_view name) const;

  /// Contexts used by rules are declared implicitly; the vocabulary is the
  /// union of declared atoms and every atom mentioned by a rule.
  RuleBase build() &&;

 private:
  std::vector<Rule> rules_;
  std::set<ContextId> contexts_;
  AtomSet vocabulary_;
  std::set<std::pair<Atom, Atom>> exclusions_;
  RuleSource source_;
};

}  // namespace roadrules
