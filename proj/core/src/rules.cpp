#include "roadrules/rules.hpp"

#include <algorithm>
#include <stdexcept>

namespace roadrules {

Rule::Rule(std::string name, Situation trigger,
           std::set<ActionPair> action_pairs)
    : name_(std::move(name)),
      trigger_(std::move(trigger)),
      action_pairs_(std::move(action_pairs)) {
  if (!Atom::valid_name(name_)) {
    throw std::invalid_argument("malformed rule name: '" + name_ + "'");
  }
  if (action_pairs_.empty()) {
    throw std::invalid_argument("rule '" + name_ + "' has no action pairs");
  }
}

const Rule* RuleBase::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  return it == by_name_.end() ? nullptr : &rules_[it->second];
}

std::vector<const Rule*> RuleBase::rules_in_context(
    const ContextId& context) const {
  std::vector<const Rule*> out;
  auto it = by_context_.find(context);
  if (it == by_context_.end()) return out;
  out.reserve(it->second.size());
  for (std::size_t index : it->second) out.push_back(&rules_[index]);
  return out;
}

bool RuleBase::operator==(const RuleBase& other) const {
  return rules_ == other.rules_ && contexts_ == other.contexts_ &&
         vocabulary_ == other.vocabulary_ && exclusions_ == other.exclusions_;
}

RuleBase::Builder& RuleBase::Builder::declare_context(ContextId context) {
  contexts_.insert(std::move(context));
  return *this;
}

RuleBase::Builder& RuleBase::Builder::declare_vocabulary(Atom atom) {
  vocabulary_.insert(std::move(atom));
  return *this;
}

RuleBase::Builder& RuleBase::Builder::declare_exclusion(Atom a, Atom b) {
  if (b < a) std::swap(a, b);
  exclusions_.emplace(std::move(a), std::move(b));
  return *this;
}

RuleBase::Builder& RuleBase::Builder::add_rule(Rule rule) {
  if (has_rule(rule.name())) {
    throw std::invalid_argument("duplicate rule name: '" + rule.name() + "'");
  }
  rules_.push_back(std::move(rule));
  return *this;
}

RuleBase::Builder& RuleBase::Builder::source(RuleSource source) {
  source_ = std::move(source);
  return *this;
}

bool RuleBase::Builder::has_rule(std::string_view name) const {
  return std::any_of(rules_.begin(), rules_.end(),
                     [&](const Rule& r) { return r.name() == name; });
}

RuleBase RuleBase::Builder::build() && {
  RuleBase rb;
  rb.rules_ = std::move(rules_);
  std::sort(rb.rules_.begin(), rb.rules_.end(),
            [](const Rule& a, const Rule& b) { return a.name() < b.name(); });

  rb.contexts_ = std::move(contexts_);
  rb.vocabulary_ = std::move(vocabulary_);
  rb.exclusions_ = std::move(exclusions_);
  rb.source_ = std::move(source_);

  for (std::size_t i = 0; i < rb.rules_.size(); ++i) {
    const Rule& rule = rb.rules_[i];
    rb.by_name_.emplace(rule.name(), i);
    rb.by_context_[rule.context()].push_back(i);
    rb.contexts_.insert(rule.context());
    rb.vocabulary_.insert(rule.beliefs().begin(), rule.beliefs().end());
    rb.vocabulary_.insert(rule.intentions().begin(), rule.intentions().end());
    for (const ActionPair& pair : rule.action_pairs()) {
      rb.vocabulary_.insert(pair.action);
    }
  }
  return rb;
}

}  // namespace roadrules
