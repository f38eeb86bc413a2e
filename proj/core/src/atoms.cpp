#include "roadrules/atoms.hpp"

#include <stdexcept>

namespace roadrules {

namespace {

bool valid_identifier(std::string_view name) {
  if (name.empty()) return false;
  if (name.front() < 'a' || name.front() > 'z') return false;
  for (char c : name.substr(1)) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return true;
}

}  // namespace

Atom::Atom(std::string name) : name_(std::move(name)) {
  if (!valid_identifier(name_)) {
    throw std::invalid_argument("malformed atom: '" + name_ + "'");
  }
}

bool Atom::valid_name(std::string_view name) { return valid_identifier(name); }

ContextId::ContextId(std::string name) : name_(std::move(name)) {
  if (!valid_identifier(name_)) {
    throw std::invalid_argument("malformed context id: '" + name_ + "'");
  }
}

std::string_view to_string(Label label) {
  return label == Label::must ? "must" : "should";
}

std::optional<Label> parse_label(std::string_view text) {
  if (text == "must") return Label::must;
  if (text == "should") return Label::should;
  return std::nullopt;
}

std::string to_string(const ActionPair& pair) {
  std::string out(to_string(pair.label));
  out += '-';
  out += pair.action.name();
  return out;
}

}  // namespace roadrules
