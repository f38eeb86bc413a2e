#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace roadrules {

/// Ground term of the shared road vocabulary: a bare identifier with no
/// variables and no internal structure. Grammar: [a-z][a-zA-Z0-9_]*.
class Atom {
 public:
  /// Throws std::invalid_argument if `name` does not match the atom grammar.
  explicit Atom(std::string name);

  static bool valid_name(std::string_view name);

  const std::string& name() const { return name_; }
  auto operator<=>(const Atom&) const = default;

 private:
  std::string name_;
};

/// Meta-level driving condition selecting which rule family applies
/// (baseline set: standard, emergency). Same grammar as Atom.
class ContextId {
 public:
  explicit ContextId(std::string name);

  const std::string& name() const { return name_; }
  auto operator<=>(const ContextId&) const = default;

 private:
  std::string name_;
};

/// Legal force of a recommended action: `must` has legal backing,
/// `should` is advice.
enum class Label { must, should };

std::string_view to_string(Label label);
std::optional<Label> parse_label(std::string_view text);

/// A recommended action tagged with its force. The defaulted ordering
/// (must before should, then action name) is the output order of
/// recommended() and is stable across platforms.
struct ActionPair {
  Label label;
  Atom action;

  auto operator<=>(const ActionPair&) const = default;
};

/// Renders "must-fog_lights_off" style text.
std::string to_string(const ActionPair& pair);

}  // namespace roadrules
