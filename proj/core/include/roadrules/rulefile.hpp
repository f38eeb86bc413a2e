#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "roadrules/rules.hpp"

namespace roadrules {

/// Parse failure with the 1-based source line it was detected on.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& reason);

  int line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  int line_;
  std::string reason_;
};

/// Parses the line-oriented rule-file format:
///
///   contexts <id>...
///   vocab <atom>...
///   exclusive <atom> <atom>
///   rule <name> <context> | <beliefs CSV> | <intentions CSV>
///        | <label> <action>[, <label> <action>]...   (one line)
///
/// `#` starts a comment; blank lines are ignored. Stanza order does not
/// matter: any permutation of the same stanzas yields an equal RuleBase.
/// Throws ParseError for duplicate rule names, undeclared contexts,
/// malformed atoms, empty action lists, and unknown label keywords.
RuleBase parse_rulefile(std::string_view text,
                        std::string path = "<memory>");

/// Canonical text form: contexts, vocabulary, exclusions, then rules in
/// ascending name order with atoms sorted within every list. Round-trips:
/// parse(serialize(rb)) == rb, and serialize ∘ parse is a fixed point on
/// its own output.
std::string serialize_rulebase(const RuleBase& rb);

}  // namespace roadrules
